#include "hbpow/closedform.hpp"

#include <cmath>

#include "hbpow/errors.hpp"

namespace hbpow {
namespace {

// The confluent series keeps full double accuracy through |z| ~ 40
// (compensated summation bounds the absolute error by about e^{|z|} * 1e-32),
// and by then the asymptotic expansion's smallest term is ~e^{-40}, so this
// module switches later than the library default of 30; both routes overlap
// at full precision around the handoff.
constexpr double kClosedCrossover = 40.0;

Complex kummer(Complex a, double b, Complex z, const Tolerance& tol) {
  return kummer_m_auto({a, b, z}, tol, kClosedCrossover);
}

// Hypergeometric branch, valid whenever kappa != 0. With w = -2 i kappa z:
//   A = e^{i kappa z} [ (M(alpha, 2p+1, w) + M(alpha+1, 2p+1, w)) / 2
//                       - (kappa3 / (2p+1)) z M(alpha+1, 2p+2, w) ],
//   B = e^{i kappa z} (kappa1 / (2p+1)) z M(alpha+1, 2p+2, w).
void eval_kummer_branch(const ClosedFormParams& cf, Complex z,
                        const Tolerance& tol, Complex& a_out, Complex& b_out) {
  const double b1 = 2.0 * cf.base.p + 1.0;
  const double b2 = b1 + 1.0;
  const Complex i(0.0, 1.0);
  const Complex w = -2.0 * i * cf.kappa * z;
  const Complex phase = std::exp(i * cf.kappa * z);
  const Complex m_lo = kummer(cf.alpha, b1, w, tol);
  const Complex m_hi = kummer(cf.alpha + 1.0, b1, w, tol);
  const Complex m_b = kummer(cf.alpha + 1.0, b2, w, tol);
  a_out = phase * (0.5 * (m_lo + m_hi) - (cf.base.kappa3 / b1) * z * m_b);
  b_out = phase * (cf.base.kappa1 / b1) * z * m_b;
}

// Degenerate branch (det P = 0). The confluent limit kappa -> 0 with
// alpha w -> -sigma z collapses the Kummer functions to 0F1:
//   A = 0F1(2p+1, -sigma z) - (kappa3 / (2p+1)) z 0F1(2p+2, -sigma z),
//   B = (kappa1 / (2p+1)) z 0F1(2p+2, -sigma z).
void eval_limit_branch(const ClosedFormParams& cf, Complex z,
                       const Tolerance& tol, Complex& a_out, Complex& b_out) {
  const double b1 = 2.0 * cf.base.p + 1.0;
  const double b2 = b1 + 1.0;
  const Complex x = -cf.sigma * z;
  const Complex f1 = hyp0f1(b1, x, tol);
  const Complex f2 = hyp0f1(b2, x, tol);
  a_out = f1 - (cf.base.kappa3 / b1) * z * f2;
  b_out = (cf.base.kappa1 / b1) * z * f2;
}

}  // namespace

ClosedFormParams ClosedFormParams::from(const ParamPair& params) {
  ClosedFormParams cf{params, params.sigma(), Complex(0.0), Complex(0.0),
                      false};
  const double det = params.det();
  const double norm = params.norm();
  cf.det_zero = std::abs(det) <= kDetZeroFactor * norm * norm;
  cf.kappa = det >= 0.0 ? Complex(std::sqrt(det), 0.0)
                        : Complex(0.0, std::sqrt(-det));
  if (det != 0.0) {
    cf.alpha = params.p + cf.sigma / (2.0 * Complex(0.0, 1.0) * cf.kappa);
  }
  return cf;
}

ClosedEval eval_closed(const ClosedFormParams& cf, Complex z,
                       const Tolerance& tol) {
  tol.validate();
  ClosedEval out{Complex(0.0), Complex(0.0), cf.det_zero, -1.0};
  if (cf.det_zero) {
    eval_limit_branch(cf, z, tol, out.a, out.b);
  } else {
    eval_kummer_branch(cf, z, tol, out.a, out.b);
  }

  // Near the branch boundary both representations are well conditioned, so
  // evaluate the one not selected and report how far they drift apart.
  const double norm = cf.base.norm();
  const double border =
      kBranchBorderFactor * kDetZeroFactor * norm * norm;
  const double adet = std::abs(cf.base.det());
  if (adet > 0.0 && adet <= border) {
    Complex other_a, other_b;
    if (cf.det_zero) {
      eval_kummer_branch(cf, z, tol, other_a, other_b);
    } else {
      eval_limit_branch(cf, z, tol, other_a, other_b);
    }
    const double scale = 1.0 + std::abs(out.a) + std::abs(out.b);
    out.branch_discrepancy =
        std::max(std::abs(out.a - other_a), std::abs(out.b - other_b)) / scale;
  }
  return out;
}

FgEval eval_fg_form(const ClosedFormParams& cf, Complex z,
                    const Tolerance& tol) {
  tol.validate();
  if (cf.det_zero) {
    throw DomainError(
        "eval_fg_form: representation requires det P != 0 (use eval_closed)");
  }
  const double scale = cf.base.norm() + 1.0;
  if (std::abs(cf.base.kappa3) > 1e-14 * scale) {
    throw DomainError(
        "eval_fg_form: representation requires kappa3 = 0 "
        "(canonicalize first)");
  }
  const double b1 = 2.0 * cf.base.p + 1.0;
  const Complex i(0.0, 1.0);
  const Complex w = -2.0 * i * cf.kappa * z;
  const Complex phase = std::exp(i * cf.kappa * z);
  FgEval out;
  out.f = phase * kummer(cf.alpha + 1.0, b1, w, tol);
  out.g = phase * kummer(cf.alpha, b1, w, tol);
  out.a = 0.5 * (out.f + out.g);
  out.b = i * cf.base.kappa1 / (2.0 * cf.kappa) * (out.f - out.g);
  return out;
}

double crosscheck(const ParamPair& params, Complex z, const Tolerance& tol) {
  tol.validate();
  const ClosedFormParams cf = ClosedFormParams::from(params);
  const ClosedEval closed = eval_closed(cf, z, tol);
  const int order = suggest_order(params, std::abs(z), tol);
  const CoeffSeq coeffs = solve_recurrence(params, order);
  const SeriesEval series = eval_series(coeffs, z, tol);
  const double scale = 1.0 + std::abs(closed.a) + std::abs(closed.b);
  return std::max(std::abs(closed.a - series.a),
                  std::abs(closed.b - series.b)) /
         scale;
}

}  // namespace hbpow
