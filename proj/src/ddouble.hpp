#pragma once

// Double-double arithmetic used internally by the series evaluators.
//
// A value is stored as an unevaluated sum hi + lo with |lo| <= ulp(hi)/2,
// giving roughly 32 significant decimal digits. The power series handled
// here suffer catastrophic cancellation for oscillatory arguments (terms up
// to e^{|z|} cancel down to order-one sums), so plain doubles lose
// |z|/ln(10) digits; the extended accumulator keeps the absolute error of a
// sum with terms up to e^{40} below 1e-15.
//
// The error-free transforms are the classical ones: Knuth's two_sum and an
// FMA-based two_prod (Dekker splitting is unnecessary when fma is exact).

#include <cmath>
#include <complex>

namespace hbpow::detail {

struct Dd {
  double hi = 0.0;
  double lo = 0.0;
};

inline Dd two_sum(double a, double b) {
  double s = a + b;
  double bb = s - a;
  double err = (a - (s - bb)) + (b - bb);
  return {s, err};
}

// Requires |a| >= |b| (or a == 0).
inline Dd quick_two_sum(double a, double b) {
  double s = a + b;
  return {s, b - (s - a)};
}

inline Dd two_prod(double a, double b) {
  double p = a * b;
  return {p, std::fma(a, b, -p)};
}

inline Dd dd(double x) { return {x, 0.0}; }

inline Dd add(Dd a, Dd b) {
  Dd s = two_sum(a.hi, b.hi);
  return quick_two_sum(s.hi, s.lo + a.lo + b.lo);
}

inline Dd add(Dd a, double b) {
  Dd s = two_sum(a.hi, b);
  return quick_two_sum(s.hi, s.lo + a.lo);
}

inline Dd neg(Dd a) { return {-a.hi, -a.lo}; }

inline Dd sub(Dd a, Dd b) { return add(a, neg(b)); }

inline Dd mul(Dd a, Dd b) {
  Dd p = two_prod(a.hi, b.hi);
  return quick_two_sum(p.hi, p.lo + a.hi * b.lo + a.lo * b.hi);
}

inline Dd mul(Dd a, double b) {
  Dd p = two_prod(a.hi, b);
  return quick_two_sum(p.hi, p.lo + a.lo * b);
}

inline Dd div(Dd a, Dd b) {
  double q1 = a.hi / b.hi;
  Dd r = sub(a, mul(b, q1));
  double q2 = r.hi / b.hi;
  r = sub(r, mul(b, q2));
  double q3 = r.hi / b.hi;
  return add(quick_two_sum(q1, q2), q3);
}

inline double to_double(Dd a) { return a.hi + a.lo; }

// Complex value with double-double real and imaginary parts.
struct Cdd {
  Dd re, im;
};

inline Cdd cdd(std::complex<double> z) { return {dd(z.real()), dd(z.imag())}; }

inline Cdd add(Cdd a, Cdd b) { return {add(a.re, b.re), add(a.im, b.im)}; }

inline Cdd sub(Cdd a, Cdd b) { return {sub(a.re, b.re), sub(a.im, b.im)}; }

inline Cdd mul(Cdd a, Cdd b) {
  return {sub(mul(a.re, b.re), mul(a.im, b.im)),
          add(mul(a.re, b.im), mul(a.im, b.re))};
}

inline Cdd mul(Cdd a, Dd b) { return {mul(a.re, b), mul(a.im, b)}; }

inline Cdd mul(Cdd a, double b) { return {mul(a.re, b), mul(a.im, b)}; }

inline Cdd div(Cdd a, Dd b) { return {div(a.re, b), div(a.im, b)}; }

inline Cdd div(Cdd a, Cdd b) {
  Dd denom = add(mul(b.re, b.re), mul(b.im, b.im));
  Cdd num = mul(a, Cdd{b.re, neg(b.im)});
  return {div(num.re, denom), div(num.im, denom)};
}

inline std::complex<double> to_complex(Cdd a) {
  return {to_double(a.re), to_double(a.im)};
}

inline double abs_approx(Cdd a) { return std::hypot(a.re.hi, a.im.hi); }

}  // namespace hbpow::detail
