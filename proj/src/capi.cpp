#include "hbpow.h"

#include <cmath>
#include <complex>
#include <string>
#include <utility>

#include "hbpow/measures.hpp"

namespace {

thread_local std::string g_last_error;

// Runs the body and folds the exception hierarchy onto the status codes.
template <class F>
int guarded(F&& body) {
  try {
    body();
    g_last_error.clear();
    return HBPOW_OK;
  } catch (const hbpow::DomainError& e) {
    g_last_error = e.what();
    return HBPOW_ERR_DOMAIN;
  } catch (const hbpow::ToleranceError& e) {
    g_last_error = e.what();
    return HBPOW_ERR_TOLERANCE;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return HBPOW_ERR_NUMERIC;
  }
}

int null_argument(const char* who) {
  g_last_error = std::string(who) + ": null argument";
  return HBPOW_ERR_DOMAIN;
}

}  // namespace

struct hbpow_params {
  hbpow::ParamPair value;
};

struct hbpow_pair {
  hbpow::EntirePair value;
};

extern "C" {

const char* hbpow_version(void) { return "0.1.0"; }

const char* hbpow_last_error(void) { return g_last_error.c_str(); }

int hbpow_params_create(double p, double kappa1, double kappa3, double kappa2,
                        double psi, hbpow_params** out) {
  if (!out) return null_argument("hbpow_params_create");
  return guarded([&] {
    *out = new hbpow_params{hbpow::ParamPair(p, kappa1, kappa2, kappa3, psi)};
  });
}

void hbpow_params_destroy(hbpow_params* params) { delete params; }

int hbpow_params_fields(const hbpow_params* params, double out[5]) {
  if (!params || !out) return null_argument("hbpow_params_fields");
  const hbpow::ParamPair& v = params->value;
  out[0] = v.p;
  out[1] = v.kappa1;
  out[2] = v.kappa3;
  out[3] = v.kappa2;
  out[4] = v.psi;
  return HBPOW_OK;
}

int hbpow_params_classify(const hbpow_params* params, int* tag) {
  if (!params || !tag) return null_argument("hbpow_params_classify");
  return guarded([&] {
    switch (hbpow::in_class_pp(params->value)) {
      case hbpow::ClassTag::InPP: *tag = HBPOW_CLASS_OK; break;
      case hbpow::ClassTag::NotPSD: *tag = HBPOW_CLASS_NOT_PSD; break;
      case hbpow::ClassTag::KernelContainsE1:
        *tag = HBPOW_CLASS_KERNEL_E1;
        break;
      case hbpow::ClassTag::KernelContainsPsiVec:
        *tag = HBPOW_CLASS_KERNEL_PSIVEC;
        break;
      case hbpow::ClassTag::ZeroPsiSingular:
        *tag = HBPOW_CLASS_ZERO_PSI_SINGULAR;
        break;
    }
  });
}

int hbpow_params_sigma(const hbpow_params* params, double* sigma) {
  if (!params || !sigma) return null_argument("hbpow_params_sigma");
  *sigma = params->value.sigma();
  return HBPOW_OK;
}

int hbpow_h_of(const hbpow_params* params, double a, double out[4]) {
  if (!params || !out) return null_argument("hbpow_h_of");
  return guarded([&] {
    const hbpow::Matrix2 h = hbpow::h_of(params->value, a);
    out[0] = h.m11;
    out[1] = h.m12;
    out[2] = h.m21;
    out[3] = h.m22;
  });
}

int hbpow_integrable_at(const hbpow_params* params, int endpoint,
                        int* integrable) {
  if (!params || !integrable) return null_argument("hbpow_integrable_at");
  return guarded([&] {
    if (endpoint != HBPOW_AT_ZERO && endpoint != HBPOW_AT_INFINITY) {
      throw hbpow::DomainError("hbpow_integrable_at: unknown endpoint");
    }
    const hbpow::Endpoint which = endpoint == HBPOW_AT_ZERO
                                      ? hbpow::Endpoint::Zero
                                      : hbpow::Endpoint::Infinity;
    *integrable = hbpow::integrable_at(params->value, which) ? 1 : 0;
  });
}

int hbpow_rescale_params(const hbpow_params* params, double c,
                         hbpow_params** out) {
  if (!params || !out) return null_argument("hbpow_rescale_params");
  return guarded([&] {
    *out = new hbpow_params{hbpow::rescale_params(params->value, c)};
  });
}

int hbpow_gamma_shift(const hbpow_params* params, double g,
                      hbpow_params** out) {
  if (!params || !out) return null_argument("hbpow_gamma_shift");
  return guarded(
      [&] { *out = new hbpow_params{hbpow::gamma_shift(params->value, g)}; });
}

int hbpow_approx_equiv(const hbpow_params* x, const hbpow_params* y,
                       int* equivalent) {
  if (!x || !y || !equivalent) return null_argument("hbpow_approx_equiv");
  return guarded(
      [&] { *equivalent = hbpow::approx_equiv(x->value, y->value) ? 1 : 0; });
}

int hbpow_simeq_equiv(const hbpow_params* x, const hbpow_params* y,
                      int* equivalent) {
  if (!x || !y || !equivalent) return null_argument("hbpow_simeq_equiv");
  return guarded(
      [&] { *equivalent = hbpow::simeq_equiv(x->value, y->value) ? 1 : 0; });
}

int hbpow_canonicalize_approx(const hbpow_params* params,
                              hbpow_params** out) {
  if (!params || !out) return null_argument("hbpow_canonicalize_approx");
  return guarded([&] {
    *out = new hbpow_params{hbpow::canonicalize_approx(params->value)};
  });
}

int hbpow_canonicalize_simeq(const hbpow_params* params, hbpow_params** out) {
  if (!params || !out) return null_argument("hbpow_canonicalize_simeq");
  return guarded([&] {
    *out = new hbpow_params{hbpow::canonicalize_simeq(params->value)};
  });
}

int hbpow_pair_create(const hbpow_params* params, int backend,
                      hbpow_pair** out) {
  if (!params || !out) return null_argument("hbpow_pair_create");
  return guarded([&] {
    if (backend != HBPOW_BACKEND_SERIES && backend != HBPOW_BACKEND_CLOSED) {
      throw hbpow::DomainError("hbpow_pair_create: unknown backend");
    }
    const hbpow::Backend which = backend == HBPOW_BACKEND_SERIES
                                     ? hbpow::Backend::Series
                                     : hbpow::Backend::Closed;
    *out = new hbpow_pair{hbpow::EntirePair(params->value, which)};
  });
}

void hbpow_pair_destroy(hbpow_pair* pair) { delete pair; }

int hbpow_pair_eval(const hbpow_pair* pair, double re_z, double im_z,
                    double out_ab[4]) {
  if (!pair || !out_ab) return null_argument("hbpow_pair_eval");
  return guarded([&] {
    const auto [a, b] = pair->value.values(hbpow::Complex(re_z, im_z));
    out_ab[0] = a.real();
    out_ab[1] = a.imag();
    out_ab[2] = b.real();
    out_ab[3] = b.imag();
  });
}

int hbpow_pair_kernel(const hbpow_pair* pair, double re_z, double im_z,
                      double re_w, double im_w, double out[2]) {
  if (!pair || !out) return null_argument("hbpow_pair_kernel");
  return guarded([&] {
    const hbpow::Complex k =
        hbpow::kernel(pair->value, hbpow::Complex(re_z, im_z),
                      hbpow::Complex(re_w, im_w));
    out[0] = k.real();
    out[1] = k.imag();
  });
}

int hbpow_crosscheck(const hbpow_params* params, double re_z, double im_z,
                     double* residual) {
  if (!params || !residual) return null_argument("hbpow_crosscheck");
  return guarded([&] {
    const hbpow::Complex z(re_z, im_z);
    const hbpow::EntirePair series(params->value, hbpow::Backend::Series);
    const hbpow::EntirePair closed(params->value, hbpow::Backend::Closed);
    const auto [as, bs] = series.values(z);
    const auto [ac, bc] = closed.values(z);
    const double scale = 1.0 + std::abs(ac) + std::abs(bc);
    *residual = std::max(std::abs(as - ac), std::abs(bs - bc)) / scale;
  });
}

int hbpow_measure_of(const hbpow_params* params, double out[3]) {
  if (!params || !out) return null_argument("hbpow_measure_of");
  return guarded([&] {
    const hbpow::PowerMeasure m = hbpow::measure_of(params->value);
    out[0] = m.mu_plus;
    out[1] = m.mu_minus;
    out[2] = m.exponent;
  });
}

int hbpow_params_of_measure(double mu_plus, double mu_minus, double exponent,
                            hbpow_params** out) {
  if (!out) return null_argument("hbpow_params_of_measure");
  return guarded([&] {
    const hbpow::PowerMeasure m(mu_plus, mu_minus, exponent);
    *out = new hbpow_params{hbpow::params_of_measure(m)};
  });
}

int hbpow_measure_equiv(const hbpow_params* x, const hbpow_params* y,
                        int* equivalent) {
  if (!x || !y || !equivalent) return null_argument("hbpow_measure_equiv");
  return guarded(
      [&] { *equivalent = hbpow::measure_equiv(x->value, y->value) ? 1 : 0; });
}

int hbpow_weyl(const hbpow_params* params, double re_z, double im_z,
               double t_max, double out_q[2], double* cauchy_estimate) {
  if (!params || !out_q || !cauchy_estimate) {
    return null_argument("hbpow_weyl");
  }
  return guarded([&] {
    const hbpow::WeylResult r = hbpow::weyl_coefficient(
        params->value, t_max, hbpow::Complex(re_z, im_z));
    out_q[0] = r.q.real();
    out_q[1] = r.q.imag();
    *cauchy_estimate = r.cauchy_estimate;
  });
}

int hbpow_q_ec(const hbpow_params* params, double re_z, double im_z,
               double t_max, double out_q[2]) {
  if (!params || !out_q) return null_argument("hbpow_q_ec");
  return guarded([&] {
    const hbpow::Complex q =
        hbpow::q_ec(params->value, hbpow::Complex(re_z, im_z), t_max);
    out_q[0] = q.real();
    out_q[1] = q.imag();
  });
}

}  // extern "C"
