/* C interface to the hbpow library.
 *
 * All functions return a status code (HBPOW_OK on success); results are
 * written through out-parameters. Objects are created behind opaque
 * handles and must be released with the matching destroy function. On
 * failure hbpow_last_error() returns a thread-local description of the
 * most recent error.
 *
 * Complex scalars are passed as (re, im) double pairs. The symmetric
 * matrix P is passed as the triple (kappa1, kappa3, kappa2), i.e. reading
 * (kappa1 kappa3; kappa3 kappa2) row-wise.
 */

#ifndef HBPOW_H
#define HBPOW_H

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes. Matches the exit codes of the command-line tool. */
enum {
  HBPOW_OK = 0,
  HBPOW_ERR_DOMAIN = 3,    /* precondition or parameter-class violation */
  HBPOW_ERR_TOLERANCE = 4, /* certified bound exceeds requested tolerance */
  HBPOW_ERR_NUMERIC = 5,   /* convergence failure or internal error */
};

typedef struct hbpow_params hbpow_params; /* parameter set (p, P, psi) */
typedef struct hbpow_pair hbpow_pair;     /* evaluator for (A, B) */

/* Evaluation backends for hbpow_pair_create. */
enum { HBPOW_BACKEND_SERIES = 0, HBPOW_BACKEND_CLOSED = 1 };

/* Endpoints for hbpow_integrable_at. */
enum { HBPOW_AT_ZERO = 0, HBPOW_AT_INFINITY = 1 };

/* Class tags reported by hbpow_params_classify. */
enum {
  HBPOW_CLASS_OK = 0,
  HBPOW_CLASS_NOT_PSD = 1,
  HBPOW_CLASS_KERNEL_E1 = 2,
  HBPOW_CLASS_KERNEL_PSIVEC = 3,
  HBPOW_CLASS_ZERO_PSI_SINGULAR = 4,
};

const char* hbpow_version(void);

/* Thread-local message for the most recent failure in this thread. */
const char* hbpow_last_error(void);

/* ------------------------------------------------------ parameter sets */

int hbpow_params_create(double p, double kappa1, double kappa3, double kappa2,
                        double psi, hbpow_params** out);
void hbpow_params_destroy(hbpow_params* params);

/* Fields in the order p, kappa1, kappa3, kappa2, psi. */
int hbpow_params_fields(const hbpow_params* params, double out[5]);

int hbpow_params_classify(const hbpow_params* params, int* tag);
int hbpow_params_sigma(const hbpow_params* params, double* sigma);

/* Hamiltonian H(a) written row-wise into out[4]. */
int hbpow_h_of(const hbpow_params* params, double a, double out[4]);

int hbpow_integrable_at(const hbpow_params* params, int endpoint,
                        int* integrable);

int hbpow_rescale_params(const hbpow_params* params, double c,
                         hbpow_params** out);
int hbpow_gamma_shift(const hbpow_params* params, double g,
                      hbpow_params** out);

int hbpow_approx_equiv(const hbpow_params* x, const hbpow_params* y,
                       int* equivalent);
int hbpow_simeq_equiv(const hbpow_params* x, const hbpow_params* y,
                      int* equivalent);
int hbpow_canonicalize_approx(const hbpow_params* params, hbpow_params** out);
int hbpow_canonicalize_simeq(const hbpow_params* params, hbpow_params** out);

/* --------------------------------------------------------- evaluators */

int hbpow_pair_create(const hbpow_params* params, int backend,
                      hbpow_pair** out);
void hbpow_pair_destroy(hbpow_pair* pair);

/* out_ab = {Re A, Im A, Re B, Im B}. */
int hbpow_pair_eval(const hbpow_pair* pair, double re_z, double im_z,
                    double out_ab[4]);

/* Reproducing kernel K(z, w); out = {Re K, Im K}. */
int hbpow_pair_kernel(const hbpow_pair* pair, double re_z, double im_z,
                      double re_w, double im_w, double out[2]);

/* Series-vs-closed-form residual at z. */
int hbpow_crosscheck(const hbpow_params* params, double re_z, double im_z,
                     double* residual);

/* ------------------------------------------------------------ measures */

/* out = {mu_plus, mu_minus, exponent}. */
int hbpow_measure_of(const hbpow_params* params, double out[3]);

int hbpow_params_of_measure(double mu_plus, double mu_minus, double exponent,
                            hbpow_params** out);

int hbpow_measure_equiv(const hbpow_params* x, const hbpow_params* y,
                        int* equivalent);

/* ------------------------------------------------- Weyl coefficients */

/* q_H of the half-line system on [1, oo); out_q = {Re q, Im q}. */
int hbpow_weyl(const hbpow_params* params, double re_z, double im_z,
               double t_max, double out_q[2], double* cauchy_estimate);

/* Weyl coefficient of the full model. */
int hbpow_q_ec(const hbpow_params* params, double re_z, double im_z,
               double t_max, double out_q[2]);

#ifdef __cplusplus
}
#endif

#endif /* HBPOW_H */
