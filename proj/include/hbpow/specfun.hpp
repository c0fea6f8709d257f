#pragma once

// Confluent hypergeometric building blocks: log-gamma, Kummer's M, the
// limit function 0F1 and the Bessel functions expressed through it, plus a
// large-argument asymptotic evaluator for M. Everything downstream reduces
// to these.

#include <complex>

#include "hbpow/errors.hpp"

namespace hbpow {

using Complex = std::complex<double>;

// Series are considered poles when a lower parameter comes this close to a
// nonpositive integer.
inline constexpr double kPoleRadius = 1e-8;

// Default radius at which kummer_m_auto switches from the Taylor series to
// the asymptotic expansion.
inline constexpr double kDefaultCrossover = 30.0;

struct Tolerance {
  double rel_tol = 1e-12;
  int max_terms = 4096;

  void validate() const;
};

// Argument triple for Kummer's M(a, b, z). Construction validates that the
// real lower parameter b stays away from the poles 0, -1, -2, ...
struct KummerArgs {
  Complex a;
  double b;
  Complex z;

  KummerArgs(Complex a_, double b_, Complex z_);
};

// Principal-branch log Gamma. Throws DomainError within kPoleRadius of a
// pole. Lanczos approximation for Re z >= 0.5, reflection otherwise; after
// reflection the imaginary part is meaningful modulo 2*pi (exp of the
// result is always Gamma itself).
Complex log_gamma(Complex z);

// Rising factorial (a)_n = a (a+1) ... (a+n-1), n >= 0.
Complex pochhammer(Complex a, int n);

// Kummer's confluent hypergeometric function M(a, b, z) by Taylor series
// with compensated (double-double) accumulation. Stops once a certified
// geometric tail bound falls below tol.rel_tol relative to the sum.
Complex kummer_m(const KummerArgs& args, const Tolerance& tol = {});

// Confluent limit function 0F1(; b; z) = sum z^n / ((b)_n n!).
Complex hyp0f1(double b, Complex z, const Tolerance& tol = {});

// Bessel J_nu and modified Bessel I_nu for order nu > -1, through 0F1 and
// M respectively. bessel_i inherits the pole of M at 2 nu + 1 = 0, i.e.
// nu = -1/2 is rejected.
Complex bessel_j(double nu, Complex z, const Tolerance& tol = {});
Complex bessel_i(double nu, Complex z, const Tolerance& tol = {});

// Two-term large-|z| asymptotic form of M(a, b, z), valid on the sector
// around the imaginary axis (|Re z| <= |Im z|) and for |z| >= crossover.
// Reflection terms whose gamma weight 1/Gamma(.) sits at a nonpositive
// integer are dropped, which covers terminating cases exactly.
Complex kummer_m_asymptotic(Complex a, double b, Complex z,
                            double crossover = kDefaultCrossover);

// Series below the crossover radius, asymptotic expansion above it when z
// lies in the admissible sector, series otherwise.
Complex kummer_m_auto(const KummerArgs& args, const Tolerance& tol = {},
                      double crossover = kDefaultCrossover);

}  // namespace hbpow
