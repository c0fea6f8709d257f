#include "hbpow/specfun.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "ddouble.hpp"

namespace hbpow {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr Complex kI{0.0, 1.0};

// Lanczos approximation, g = 607/128, 15 coefficients (Godfrey's fit).
// Relative accuracy is close to double rounding for Re z >= 0.5.
constexpr double kLanczosG = 4.7421875;
constexpr double kLanczosC[15] = {
    0.99999999999999709182,     57.156235665862923517,
    -59.597960355475491248,     14.136097974741747174,
    -0.49191381609762019978,    0.33994649984811888699e-4,
    0.46523628927048575665e-4,  -0.98374475304879564677e-4,
    0.15808870322491248884e-3,  -0.21026444172410488319e-3,
    0.21743961811521264320e-3,  -0.16431810653676389022e-3,
    0.84418223983852743293e-4,  -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
};

bool near_nonpositive_integer(Complex u) {
  if (std::abs(u.imag()) >= kPoleRadius) return false;
  double r = std::round(u.real());
  return r <= 0.5 && std::abs(u.real() - r) < kPoleRadius;
}

void require_valid_lower_parameter(double b, const char* who) {
  if (near_nonpositive_integer(Complex(b))) {
    std::ostringstream os;
    os << who << ": lower parameter b = " << b
       << " is within " << kPoleRadius << " of a nonpositive integer";
    throw DomainError(os.str());
  }
}

// log Gamma by Lanczos for Re z >= 0.5 (principal branch there).
Complex log_gamma_right(Complex z) {
  Complex zm1 = z - 1.0;
  Complex ser(kLanczosC[0], 0.0);
  for (int k = 1; k < 15; ++k) ser += kLanczosC[k] / (zm1 + Complex(k));
  Complex t = zm1 + (kLanczosG + 0.5);
  return 0.5 * std::log(2.0 * kPi) + (zm1 + 0.5) * std::log(t) - t +
         std::log(ser);
}

// log(sin(pi z)), stable for large |Im z|.
Complex log_sin_pi(Complex z) {
  if (z.imag() < 0.0) return std::conj(log_sin_pi(std::conj(z)));
  if (z.imag() <= 20.0) return std::log(std::sin(kPi * z));
  // sin(pi z) = e^{-i pi z} (e^{2 i pi z} - 1) / (2 i), and the exponential
  // inside the parenthesis is below e^{-40 pi}.
  Complex u = -std::exp(2.0 * kI * kPi * z);
  return -kI * kPi * z + (kI * kPi + u) - (std::log(2.0) + kI * kPi / 2.0);
}

}  // namespace

void Tolerance::validate() const {
  if (!(rel_tol > 0.0) || !std::isfinite(rel_tol))
    throw DomainError("Tolerance: rel_tol must be positive and finite");
  if (max_terms < 8)
    throw DomainError("Tolerance: max_terms must be at least 8");
}

KummerArgs::KummerArgs(Complex a_, double b_, Complex z_)
    : a(a_), b(b_), z(z_) {
  require_valid_lower_parameter(b, "KummerArgs");
}

Complex log_gamma(Complex z) {
  if (near_nonpositive_integer(z))
    throw DomainError("log_gamma: argument within pole radius of a pole");
  if (z.real() >= 0.5) return log_gamma_right(z);
  // Reflection: log Gamma(z) = log pi - log sin(pi z) - log Gamma(1 - z).
  return std::log(kPi) - log_sin_pi(z) - log_gamma_right(1.0 - z);
}

Complex pochhammer(Complex a, int n) {
  if (n < 0) throw DomainError("pochhammer: n must be nonnegative");
  Complex r = 1.0;
  for (int k = 0; k < n; ++k) r *= a + Complex(k);
  return r;
}

Complex kummer_m(const KummerArgs& args, const Tolerance& tol) {
  tol.validate();
  const double abs_a = std::abs(args.a);
  const double abs_z = std::abs(args.z);
  const double b = args.b;
  // The termwise ratio bound (|a|+m)|z| / ((b+m)(m+1)) is decreasing once m
  // clears this threshold, which makes the geometric tail bound below valid.
  const double mono = std::max({1.0, b - abs_a, -b}) + 1.0;

  detail::Cdd z2 = detail::cdd(args.z);
  detail::Cdd term = detail::cdd(Complex(1.0));
  detail::Cdd sum = term;
  for (int n = 0; n + 1 < tol.max_terms; ++n) {
    detail::Dd denom = detail::mul(detail::two_sum(b, double(n)), double(n + 1));
    // Form a+n with two_sum: rounding it in double perturbs every factor of
    // the product the same way, so the error accumulates instead of averaging
    // out and would cap the achievable accuracy near n*eps times the largest
    // term.
    detail::Cdd a_n{detail::two_sum(args.a.real(), double(n)),
                    detail::dd(args.a.imag())};
    term = detail::div(detail::mul(detail::mul(term, a_n), z2), denom);
    sum = detail::add(sum, term);
    int j = n + 1;  // index of the term just added
    if (j < mono || b + j <= 0.0) continue;
    double q = (abs_a + j) * abs_z / ((b + j) * (j + 1));
    if (q >= 0.5) continue;
    double tail = detail::abs_approx(term) * q / (1.0 - q);
    double scale = detail::abs_approx(sum) + 1e-300;
    if (tail <= tol.rel_tol * scale) return detail::to_complex(sum);
  }
  throw ConvergenceError("kummer_m: series did not converge within max_terms");
}

Complex hyp0f1(double b, Complex z, const Tolerance& tol) {
  tol.validate();
  require_valid_lower_parameter(b, "hyp0f1");
  const double abs_z = std::abs(z);
  const double mono = std::max(1.0, -b) + 1.0;

  detail::Cdd z2 = detail::cdd(z);
  detail::Cdd term = detail::cdd(Complex(1.0));
  detail::Cdd sum = term;
  for (int n = 0; n + 1 < tol.max_terms; ++n) {
    detail::Dd denom = detail::mul(detail::two_sum(b, double(n)), double(n + 1));
    term = detail::div(detail::mul(term, z2), denom);
    sum = detail::add(sum, term);
    int j = n + 1;
    if (j < mono || b + j <= 0.0) continue;
    double q = abs_z / ((b + j) * (j + 1));
    if (q >= 0.5) continue;
    double tail = detail::abs_approx(term) * q / (1.0 - q);
    double scale = detail::abs_approx(sum) + 1e-300;
    if (tail <= tol.rel_tol * scale) return detail::to_complex(sum);
  }
  throw ConvergenceError("hyp0f1: series did not converge within max_terms");
}

Complex bessel_j(double nu, Complex z, const Tolerance& tol) {
  if (!(nu > -1.0)) throw DomainError("bessel_j: order must satisfy nu > -1");
  if (z == Complex(0.0)) {
    if (nu == 0.0) return 1.0;
    if (nu > 0.0) return 0.0;
    throw DomainError("bessel_j: z = 0 is a pole for negative order");
  }
  Complex pref = std::exp(nu * std::log(z / 2.0) - std::lgamma(nu + 1.0));
  return pref * hyp0f1(nu + 1.0, -0.25 * z * z, tol);
}

Complex bessel_i(double nu, Complex z, const Tolerance& tol) {
  if (!(nu > -1.0)) throw DomainError("bessel_i: order must satisfy nu > -1");
  if (z == Complex(0.0)) {
    if (nu == 0.0) return 1.0;
    if (nu > 0.0) return 0.0;
    throw DomainError("bessel_i: z = 0 is a pole for negative order");
  }
  // I_nu(z) = (z/2)^nu / Gamma(nu+1) e^{-z} M(nu + 1/2, 2 nu + 1, 2z).
  // The lower parameter 2 nu + 1 vanishes at nu = -1/2; KummerArgs rejects it.
  KummerArgs m(Complex(nu + 0.5), 2.0 * nu + 1.0, 2.0 * z);
  Complex pref = std::exp(nu * std::log(z / 2.0) - std::lgamma(nu + 1.0) - z);
  return pref * kummer_m(m, tol);
}

namespace {

// Sum of the formal series sum_s (e0)_s (e1)_s / (s! u^{-s}) with u = invu,
// truncated at the smallest term (optimal truncation of an asymptotic
// series). Terms past the divergence onset are never added.
Complex asymptotic_tail_sum(Complex e0, Complex e1, Complex invu) {
  Complex term = 1.0;
  Complex sum = 1.0;
  double prev = 1.0;
  for (int s = 0; s < 256; ++s) {
    Complex next = term * (e0 + Complex(s)) * (e1 + Complex(s)) * invu /
                   Complex(s + 1);
    double mag = std::abs(next);
    if (mag >= prev) break;
    term = next;
    sum += term;
    prev = mag;
    if (mag <= 1e-16 * std::abs(sum)) break;
  }
  return sum;
}

}  // namespace

Complex kummer_m_asymptotic(Complex a, double b, Complex z, double crossover) {
  require_valid_lower_parameter(b, "kummer_m_asymptotic");
  const double az = std::abs(z);
  if (az < crossover)
    throw DomainError("kummer_m_asymptotic: |z| below the crossover radius");
  if (std::abs(z.real()) > std::abs(z.imag()))
    throw DomainError(
        "kummer_m_asymptotic: z outside the sector |Re z| <= |Im z|");

  const double sgn = (z.imag() >= 0.0) ? 1.0 : -1.0;
  const Complex lz = std::log(z);
  const Complex lgb = log_gamma(Complex(b));
  Complex result = 0.0;

  // Algebraic branch ~ Gamma(b)/Gamma(b-a) e^{+-i pi a} z^{-a}; dropped when
  // 1/Gamma(b-a) sits at a pole.
  if (!near_nonpositive_integer(Complex(b) - a)) {
    Complex w = lgb - log_gamma(Complex(b) - a) + sgn * kI * kPi * a - a * lz;
    if (w.real() > 700.0)
      throw ConvergenceError("kummer_m_asymptotic: overflow in branch weight");
    result += std::exp(w) * asymptotic_tail_sum(a, a - b + 1.0, -1.0 / z);
  }
  // Exponential branch ~ Gamma(b)/Gamma(a) e^{z} z^{a-b}; dropped when
  // 1/Gamma(a) sits at a pole.
  if (!near_nonpositive_integer(a)) {
    Complex w = lgb - log_gamma(a) + z + (a - b) * lz;
    if (w.real() > 700.0)
      throw ConvergenceError("kummer_m_asymptotic: overflow in branch weight");
    result += std::exp(w) * asymptotic_tail_sum(b - a, 1.0 - a, 1.0 / z);
  }
  return result;
}

Complex kummer_m_auto(const KummerArgs& args, const Tolerance& tol,
                      double crossover) {
  const double az = std::abs(args.z);
  if (az <= crossover) return kummer_m(args, tol);
  if (std::abs(args.z.real()) <= std::abs(args.z.imag()))
    return kummer_m_asymptotic(args.a, args.b, args.z, crossover);
  // Large argument off the imaginary-axis sector: the series still
  // converges, the dominant exponential makes it well conditioned there.
  return kummer_m(args, tol);
}

}  // namespace hbpow
