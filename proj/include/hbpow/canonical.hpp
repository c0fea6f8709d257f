#pragma once

// The canonical system attached to H(a): transfer matrices by adaptive
// Runge-Kutta integration, the explicit solution family, the integral
// identity residual, and the Weyl coefficients.

#include <complex>
#include <vector>

#include "hbpow/hamiltonian.hpp"

namespace hbpow {

struct CMat2 {
  Complex m11, m12, m21, m22;

  static CMat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
  Complex det() const { return m11 * m22 - m12 * m21; }

  friend CMat2 operator*(const CMat2& x, const CMat2& y) {
    return {x.m11 * y.m11 + x.m12 * y.m21, x.m11 * y.m12 + x.m12 * y.m22,
            x.m21 * y.m11 + x.m22 * y.m21, x.m21 * y.m12 + x.m22 * y.m22};
  }
};

struct TransferResult {
  CMat2 w;
  int step_count;
  double est_error;  // accumulated local error estimate
};

// W(t0, t1, z): solution of d/ds W(s) J = z W(s) H(s), W(t0) = I, with
// J = (0 -1; 1 0). Integrated in u = ln s with embedded 5(4) step control;
// tol.rel_tol is split 10:1 between step acceptance and the reported
// est_error. Requires t0, t1 > 0.
TransferResult transfer_matrix(const ParamPair& params, double t0, double t1,
                               Complex z, const Tolerance& tol = {});

// The explicit solution row (A(a, z), B(a, z)) of the same system in the
// time variable a, normalized to (A, B) at a = 1:
//   A(a, z) = A(az) + psi (1 - a^{2p}) / (2p) B(az)   (p != 0),
//             A(az) - psi ln(a) B(az)                 (p = 0),
//   B(a, z) = a^{2p} B(az).
// Values come from the closed-form backend. Requires a > 0.
std::pair<Complex, Complex> solution_family(const ParamPair& params, double a,
                                            Complex z,
                                            const Tolerance& tol = {});

struct GridSpec {
  std::vector<double> points;  // optional interior seed points
  double quad_tol = 1e-10;
};

// Residual of the integral identity
//   (A(b,.), B(b,.)) J - (A(a,.), B(a,.)) J = z int_a^b (A(c,.), B(c,.)) H(c) dc,
// normalized by 1 + the largest entry magnitude. Requires 0 < a <= b.
double integral_residual(const ParamPair& params, double a, double b,
                         Complex z, const GridSpec& grid = {});

struct WeylResult {
  Complex q;
  // |q(t_max) - q(t_max / 2)|, a convergence indicator for the limit.
  double cauchy_estimate;
};

// Weyl coefficient of the half-line Hamiltonian restricted to [1, oo):
// q = lim_t W(1, t, z) star i, approximated at t = t_max (>= 2). Requires
// a parameter set in the admissible class and Im z != 0; values in the
// lower half-plane follow by symmetry q(conj z) = conj(q(z)).
WeylResult weyl_coefficient(const ParamPair& params, double t_max, Complex z,
                            const Tolerance& tol = {});

// Weyl coefficient of the full model: the Mobius transform
//   q_ec = (B q_H - A) / (A q_H + B)
// with A, B evaluated at z by the closed-form backend and q_H from
// weyl_coefficient.
Complex q_ec(const ParamPair& params, Complex z, double t_max,
             const Tolerance& tol = {});

}  // namespace hbpow
