#include "hbpow/recurrence.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "ddouble.hpp"

namespace hbpow {

namespace {

// Spectral norm of a general 2x2 matrix via the larger eigenvalue of M^T M.
double mat_norm(double m11, double m12, double m21, double m22) {
  double a = m11 * m11 + m21 * m21;
  double b = m11 * m12 + m21 * m22;
  double c = m12 * m12 + m22 * m22;
  double disc = std::sqrt(std::max(0.0, (a - c) * (a - c) + 4.0 * b * b));
  return std::sqrt(std::max(0.0, 0.5 * (a + c + disc)));
}

void require_admissible_order(double p) {
  double q = 2.0 * p + 1.0;
  double r = std::round(q);
  if (r <= 0.5 && std::abs(q - r) < 2.0 * kPoleRadius) {
    std::ostringstream os;
    os << "ParamPair: order p = " << p
       << " lies within " << kPoleRadius << " of the excluded set "
          "{-1/2, -1, -3/2, ...}";
    throw DomainError(os.str());
  }
}

}  // namespace

ParamPair::ParamPair(double p_, double kappa1_, double kappa2_, double kappa3_,
                     double psi_)
    : p(p_), kappa1(kappa1_), kappa2(kappa2_), kappa3(kappa3_), psi(psi_) {
  if (!std::isfinite(p) || !std::isfinite(kappa1) || !std::isfinite(kappa2) ||
      !std::isfinite(kappa3) || !std::isfinite(psi))
    throw DomainError("ParamPair: fields must be finite");
  require_admissible_order(p);
}

double ParamPair::norm() const {
  return mat_norm(kappa1, kappa3, kappa3, kappa2);
}

double CoeffSeq::alpha(int n) const {
  if (n < 0 || n > degree()) throw DomainError("CoeffSeq: index out of range");
  return alpha_[n].first + alpha_[n].second;
}

double CoeffSeq::beta(int n) const {
  if (n < 0 || n > degree()) throw DomainError("CoeffSeq: index out of range");
  return beta_[n].first + beta_[n].second;
}

// Norm of the n-th recurrence step divided by (n+1); the cumulative product
// of these factors bounds ||(alpha_n, beta_n)||. Sharper than the uniform
// constant because the transient peak of the step norm (large psi, small
// 2p+1) enters once instead of once per degree.
double CoeffSeq::step_factor(int n) const {
  double f = 2.0 * p_ + double(n) + 1.0;
  double c = mat_norm(1.0, 0.0, psi_ / f, double(n + 1) / f);
  return pnorm_ * c / double(n + 1);
}

CoeffSeq solve_recurrence(const ParamPair& params, int N) {
  if (N < 0 || N > kMaxSeriesOrder)
    throw DomainError("solve_recurrence: N outside [0, 4096]");

  CoeffSeq out;
  out.p_ = params.p;
  out.psi_ = params.psi;
  out.pnorm_ = params.norm();

  const double k1 = params.kappa1;
  const double k2 = params.kappa2;
  const double k3 = params.kappa3;
  const double psi = params.psi;

  out.alpha_.reserve(N + 1);
  out.beta_.reserve(N + 1);
  out.log_bound_.reserve(N + 1);

  detail::Dd alpha = detail::dd(1.0);
  detail::Dd beta = detail::dd(0.0);
  out.alpha_.push_back({alpha.hi, alpha.lo});
  out.beta_.push_back({beta.hi, beta.lo});
  out.log_bound_.push_back(0.0);

  double log_bound = 0.0;
  for (int n = 0; n < N; ++n) {
    detail::Dd f = detail::two_sum(2.0 * params.p, double(n + 1));  // 2p+n+1
    // alpha_{n+1} = -[alpha_n (k3 f - k1 psi) + beta_n (k2 f - k3 psi)]
    //              / ((n+1) f)
    detail::Dd c1 = detail::sub(detail::mul(f, k3), detail::two_prod(k1, psi));
    detail::Dd c2 = detail::sub(detail::mul(f, k2), detail::two_prod(k3, psi));
    detail::Dd num = detail::add(detail::mul(alpha, c1), detail::mul(beta, c2));
    detail::Dd alpha_next =
        detail::neg(detail::div(num, detail::mul(f, double(n + 1))));
    // beta_{n+1} = (k1 alpha_n + k3 beta_n) / f
    detail::Dd beta_next = detail::div(
        detail::add(detail::mul(alpha, k1), detail::mul(beta, k3)), f);

    alpha = alpha_next;
    beta = beta_next;
    out.alpha_.push_back({alpha.hi, alpha.lo});
    out.beta_.push_back({beta.hi, beta.lo});
    log_bound += std::log(out.step_factor(n));
    out.log_bound_.push_back(log_bound);
  }

  // Uniform growth constant C ||P||: the step norms decay to 1, so a
  // window past the transient captures the supremum.
  double c_sup = 1.0;
  for (int n = 0; n <= std::max(N, 256); ++n) {
    double f = 2.0 * params.p + double(n) + 1.0;
    c_sup = std::max(c_sup, mat_norm(1.0, 0.0, psi / f, double(n + 1) / f));
  }
  out.bound_constant_ = c_sup * params.norm();
  return out;
}

SeriesEval eval_series(const CoeffSeq& coeffs, Complex z,
                       const Tolerance& tol) {
  tol.validate();
  const int N = coeffs.degree();
  if (N < 0) throw DomainError("eval_series: empty coefficient sequence");

  detail::Cdd zz = detail::cdd(z);
  detail::Cdd acc_a{detail::Dd{coeffs.alpha_[N].first, coeffs.alpha_[N].second},
                    detail::Dd{}};
  detail::Cdd acc_b{detail::Dd{coeffs.beta_[N].first, coeffs.beta_[N].second},
                    detail::Dd{}};
  for (int n = N - 1; n >= 0; --n) {
    acc_a = detail::mul(acc_a, zz);
    acc_a.re = detail::add(acc_a.re,
                           detail::Dd{coeffs.alpha_[n].first, coeffs.alpha_[n].second});
    acc_b = detail::mul(acc_b, zz);
    acc_b.re = detail::add(acc_b.re,
                           detail::Dd{coeffs.beta_[n].first, coeffs.beta_[n].second});
  }

  SeriesEval result;
  result.a = detail::to_complex(acc_a);
  result.b = detail::to_complex(acc_b);

  // Certified tail: ||(alpha_m, beta_m)|| <= B_m with B_{m+1} = B_m g_m,
  // so the remainder is below B_{N+1} r^{N+1} / (1 - rho) once the factor
  // rho = r sup_{m>N} g_m drops under 1. The step factors decay like 1/m,
  // so a lookahead window bounds the supremum.
  const double r = std::abs(z);
  if (r == 0.0) {
    result.tail_bound = 0.0;
  } else {
    double g_sup = 0.0;
    bool decaying = true;
    double prev = std::numeric_limits<double>::infinity();
    for (int m = N + 1; m <= N + 32; ++m) {
      double g = coeffs.step_factor(m);
      g_sup = std::max(g_sup, g);
      decaying = (g <= prev * (1.0 + 1e-12));
      prev = g;
    }
    double rho = r * g_sup;
    if (!decaying || rho >= 1.0) {
      result.tail_bound = std::numeric_limits<double>::infinity();
    } else {
      double log_tail = coeffs.log_bound_[N] +
                        std::log(coeffs.step_factor(N)) +
                        double(N + 1) * std::log(r) - std::log1p(-rho);
      result.tail_bound = std::exp(log_tail);
    }
  }

  double scale = 1.0 + std::abs(result.a) + std::abs(result.b);
  if (!(result.tail_bound <= tol.rel_tol * scale)) {
    std::ostringstream os;
    os << "eval_series: certified tail " << result.tail_bound
       << " exceeds tolerance " << tol.rel_tol * scale
       << " at |z| = " << r << " with N = " << N << "; raise the order";
    throw ToleranceError(os.str());
  }
  return result;
}

int suggest_order(const ParamPair& params, double radius,
                  const Tolerance& tol) {
  tol.validate();
  if (!(radius >= 0.0) || !std::isfinite(radius))
    throw DomainError("suggest_order: radius must be finite and nonnegative");
  if (radius == 0.0) return 2;

  CoeffSeq probe;  // only the step factors are needed
  probe.p_ = params.p;
  probe.psi_ = params.psi;
  probe.pnorm_ = params.norm();

  const double log_r = std::log(radius);
  const double target = std::log(tol.rel_tol) - std::log(2.0);
  double log_bound = 0.0;
  for (int n = 0; n < kMaxSeriesOrder; ++n) {
    double g = probe.step_factor(n);
    log_bound += std::log(g);
    // log_bound is now ln B_{n+1}; accept N = n when the next factor is
    // already contracting and the leading tail term is small enough.
    if (radius * probe.step_factor(n + 1) <= 0.5 &&
        log_bound + double(n + 1) * log_r <= target)
      return std::max(n, 2);
  }
  return kMaxSeriesOrder;
}

ParamPair recover_params(const CoeffSeq& coeffs, double p) {
  if (coeffs.degree() < 2)
    throw DomainError("recover_params: need coefficients up to degree 2");
  const double a1 = coeffs.alpha(1);
  const double a2 = coeffs.alpha(2);
  const double b1 = coeffs.beta(1);
  const double b2 = coeffs.beta(2);
  if (std::abs(b1) < 1e-150)
    throw DomainError(
        "recover_params: beta_1 = 0 (B vanishes identically); parameters "
        "are not recoverable");

  const double k1 = b1 * (1.0 + 2.0 * p);
  const double k3 = (b2 * (2.0 + 2.0 * p) - a1 * k1) / b1;
  const double psi = (a1 + k3) / b1;
  const double k2 = (b2 * psi - 2.0 * a2 - a1 * k3) / b1;
  return ParamPair(p, k1, k2, k3, psi);
}

ParamPair gamma_shift(const ParamPair& params, double g) {
  if (!std::isfinite(g)) throw DomainError("gamma_shift: shift must be finite");
  return ParamPair(params.p, params.kappa1,
                   params.kappa2 + 2.0 * g * params.kappa3 + g * g * params.kappa1,
                   params.kappa3 + g * params.kappa1,
                   params.psi + 2.0 * params.p * g);
}

double symmetry_sigma(const ParamPair& params) {
  if (params.kappa1 == 0.0)
    throw DomainError("symmetry_sigma: kappa1 must be nonzero");
  return params.sigma();
}

bool b_vanishes(const ParamPair& params) { return params.kappa1 == 0.0; }

}  // namespace hbpow
