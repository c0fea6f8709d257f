#include "hbpow/measures.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hbpow/errors.hpp"
#include "hbpow/hamiltonian.hpp"
#include "hbpow/specfun.hpp"

namespace hbpow {
namespace {

constexpr double kPi = 3.14159265358979323846;

void require_admissible(const ParamPair& params, const char* who) {
  if (in_class_pp(params) != ClassTag::InPP) {
    throw DomainError(std::string(who) +
                      ": parameters must lie in the admissible class");
  }
}

// ln |Gamma(z)|^2 for complex z, overflow-free.
double log_abs_gamma_sq(Complex z) { return 2.0 * log_gamma(z).real(); }

}  // namespace

PowerMeasure::PowerMeasure(double mu_plus_, double mu_minus_,
                           double exponent_)
    : mu_plus(mu_plus_), mu_minus(mu_minus_), exponent(exponent_) {
  if (!(std::isfinite(mu_plus) && std::isfinite(mu_minus) &&
        mu_plus >= 0.0 && mu_minus >= 0.0)) {
    throw DomainError("PowerMeasure: weights must be finite and nonnegative");
  }
  if (mu_plus == 0.0 && mu_minus == 0.0) {
    throw DomainError("PowerMeasure: at least one weight must be positive");
  }
  if (!(std::isfinite(exponent) && exponent > -1.0)) {
    throw DomainError("PowerMeasure: exponent must exceed -1");
  }
}

PowerMeasure measure_of(const ParamPair& params) {
  require_admissible(params, "measure_of");
  const double p = params.p;
  const double two_p1 = 2.0 * p + 1.0;
  const double sigma = params.sigma();
  const double det = params.det();
  const double lg2p1 = std::lgamma(two_p1);
  if (det > 0.0) {
    const double kappa = std::sqrt(det);
    const double t = sigma / (2.0 * kappa);
    // Everything except e^{+- pi t} is common to both sides; assembled in
    // log space because the gamma modulus decays like e^{-pi |t|} and
    // would underflow long before the product does.
    const double base = 2.0 * p * std::log(2.0) +
                        two_p1 * std::log(kappa) +
                        log_abs_gamma_sq(Complex(p + 1.0, t)) -
                        std::log(params.kappa1) - 2.0 * lg2p1;
    return PowerMeasure(std::exp(base + kPi * t), std::exp(base - kPi * t),
                        2.0 * p);
  }
  // Rank-one P: the measure lives on the side sigma points to, and the
  // other side is exactly zero.
  const double mass = kPi * std::pow(std::abs(sigma), two_p1) /
                      (params.kappa1 * std::exp(2.0 * lg2p1));
  if (sigma > 0.0) return PowerMeasure(mass, 0.0, 2.0 * p);
  return PowerMeasure(0.0, mass, 2.0 * p);
}

ParamPair params_of_measure(const PowerMeasure& m) {
  const double p = 0.5 * m.exponent;
  const double two_p1 = m.exponent + 1.0;
  const double lg2p1 = std::lgamma(two_p1);
  if (m.one_sided()) {
    const double mass = std::max(m.mu_plus, m.mu_minus);
    // The mass pins pi |sigma|^{2p+1} / (kappa1 Gamma(2p+1)^2); the rest
    // of the representative is rescaling freedom. Normalize kappa1 = 1
    // when 2p + 1 is safely away from zero and kappa1 = |sigma| otherwise,
    // so the exponent divisor (2p + 1 respectively 2p) stays >= 1/2 and
    // the components of the result remain within a bounded range.
    const double log_core = std::log(mass) + 2.0 * lg2p1 - std::log(kPi);
    const double log_s =
        p >= -0.25 ? log_core / two_p1 : log_core / (2.0 * p);
    const double s = std::exp(log_s);
    const double kappa1 = p >= -0.25 ? 1.0 : s;
    const double sigma = m.mu_plus > 0.0 ? s : -s;
    return ParamPair(p, kappa1, 0.0, 0.0, -sigma / kappa1);
  }
  const double el = std::log(m.mu_minus / m.mu_plus);
  const double t = -el / (2.0 * kPi);
  const double core =
      0.5 * (std::log(m.mu_plus) + std::log(m.mu_minus)) + 2.0 * lg2p1 -
      2.0 * p * std::log(2.0) - log_abs_gamma_sq(Complex(p + 1.0, t));
  // Same balancing as above: kappa1 = 1 with kappa2 = exp(core / (p+1/2)),
  // or kappa1 = kappa2 = exp(core / 2p); the divisor in use stays >= 1/3.
  if (p > -1.0 / 6.0) {
    const double kappa2 = std::exp(core / (p + 0.5));
    return ParamPair(p, 1.0, kappa2, 0.0, std::sqrt(kappa2) * el / kPi);
  }
  const double k = std::exp(core / (2.0 * p));
  return ParamPair(p, k, k, 0.0, el / kPi);
}

EntirePair build_generator(const PowerMeasure& m) {
  const ParamPair base = params_of_measure(m);
  const double two_p1 = 2.0 * base.p + 1.0;
  // Rescaling leaves the measure invariant; the scale is chosen so that
  // kappa1 = 2p + 1, which makes K(0,0) = beta_1 = 1.
  const double c =
      std::exp((std::log(two_p1) - std::log(base.kappa1)) / two_p1);
  return EntirePair(rescale_params(base, c), Backend::Closed);
}

bool measure_equiv(const ParamPair& x, const ParamPair& y) {
  require_admissible(x, "measure_equiv");
  require_admissible(y, "measure_equiv");
  return simeq_equiv(x, y);
}

double asymptotic_ratio(double delta, double p, double y,
                        const Tolerance& tol) {
  tol.validate();
  if (!(std::isfinite(y) && std::abs(y) >= 1.0)) {
    throw DomainError("asymptotic_ratio: need |y| >= 1");
  }
  if (!(std::isfinite(delta) && std::isfinite(p) && 2.0 * p + 1.0 > 0.0)) {
    throw DomainError("asymptotic_ratio: need finite delta and 2p + 1 > 0");
  }
  const double b = 2.0 * p + 1.0;
  const Complex a(p, delta);
  const Complex w(0.0, -y);
  const Complex m1 = kummer_m_auto(KummerArgs(a, b, w), tol);
  const Complex m2 = kummer_m_auto(KummerArgs(a + 1.0, b, w), tol);
  const Complex m3 = kummer_m_auto(KummerArgs(a + 1.0, b + 1.0, w), tol);
  const Complex lhs =
      0.5 * (m1 + m2) - Complex(0.0, y) / (2.0 * b) * m3;
  const double sgn = y >= 0.0 ? 1.0 : -1.0;
  const double log_predicted = std::lgamma(b) -
                               log_gamma(Complex(p + 1.0, delta)).real() +
                               sgn * kPi * delta / 2.0 -
                               p * std::log(std::abs(y));
  return std::abs(lhs) * std::exp(-log_predicted);
}

namespace {

struct QuadBudget {
  long evals = 0;
  static constexpr long kMax = 3000000;
};

template <class F>
double simpson_rec(const F& g, double x0, double x2, double f0, double f1,
                   double f2, double whole, double tol, int depth,
                   QuadBudget& budget) {
  const double xm = 0.5 * (x0 + x2);
  const double xl = 0.5 * (x0 + xm), xr = 0.5 * (xm + x2);
  const double fl = g(xl), fr = g(xr);
  budget.evals += 2;
  if (budget.evals > QuadBudget::kMax) {
    throw ConvergenceError("density_check: quadrature budget exhausted");
  }
  const double left = (xm - x0) / 6.0 * (f0 + 4.0 * fl + f1);
  const double right = (x2 - xm) / 6.0 * (f1 + 4.0 * fr + f2);
  const double sum = left + right;
  if (depth >= 24 || std::abs(sum - whole) <= 15.0 * tol) {
    return sum + (sum - whole) / 15.0;
  }
  return simpson_rec(g, x0, xm, f0, fl, f1, left, 0.5 * tol, depth + 1,
                     budget) +
         simpson_rec(g, xm, x2, f1, fr, f2, right, 0.5 * tol, depth + 1,
                     budget);
}

}  // namespace

DensityCheck density_check(const ParamPair& params, double x, double y,
                           double t_max, const Tolerance& tol) {
  tol.validate();
  require_admissible(params, "density_check");
  if (!(std::isfinite(x) && x != 0.0)) {
    throw DomainError("density_check: x must be nonzero");
  }
  if (!(std::isfinite(y) && y > 0.0 && y <= std::abs(x) / 10.0)) {
    throw DomainError("density_check: need 0 < y <= |x| / 10");
  }

  const double observed = q_ec(params, Complex(x, y), t_max, tol).imag();

  const PowerMeasure m = measure_of(params);
  const EntirePair pair(params, Backend::Closed);
  // Poisson integral in the substitution t = x + y tan(theta), under which
  // the smoothing kernel times dt collapses to d(theta) and the integrand
  // becomes the plain density |E(t)|^2 mu(t); the asymptotic modulus law
  // keeps it bounded as theta approaches +-pi/2.
  const auto dens = [&](double theta) {
    const double t = x + y * std::tan(theta);
    const double side = t > 0.0 ? m.mu_plus : m.mu_minus;
    if (side == 0.0 || t == 0.0) return 0.0;
    const auto [av, bv] = pair.values(Complex(t, 0.0));
    const double e2 = std::norm(av - Complex(0.0, 1.0) * bv);
    return side * e2 * std::pow(std::abs(t), m.exponent);
  };

  const double eps = 1e-4;
  const double lo = -kPi / 2.0 + eps, hi = kPi / 2.0 - eps;
  const double flo = dens(lo), fmm = dens(0.5 * (lo + hi)), fhi = dens(hi);
  const double whole = (hi - lo) / 6.0 * (flo + 4.0 * fmm + fhi);
  QuadBudget budget;
  budget.evals = 3;
  double integral =
      simpson_rec(dens, lo, hi, flo, fmm, fhi, whole,
                  1e-5 * (1.0 + std::abs(whole)), 0, budget);
  // Rectangle patch for the clipped endpoint slivers.
  integral += eps * (flo + fhi);
  return {observed, integral / kPi};
}

}  // namespace hbpow
