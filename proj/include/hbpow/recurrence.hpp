#pragma once

// Power-series construction of the structure functions A and B attached to
// a parameter set (p, P, psi). The coefficients satisfy a first-order
// two-term recurrence; everything here is about producing them with a
// certified truncation bound and reading the parameters back off.

#include <complex>
#include <vector>

#include "hbpow/errors.hpp"
#include "hbpow/specfun.hpp"

namespace hbpow {

// Parameter set: order p, symmetric matrix P = (kappa1 kappa3; kappa3
// kappa2) and shift psi. The construction degenerates when 2p + 1 is a
// nonpositive integer, so p in {-1/2, -1, -3/2, ...} is rejected (radius
// 1e-8).
struct ParamPair {
  double p;
  double kappa1;
  double kappa2;
  double kappa3;
  double psi;

  ParamPair(double p_, double kappa1_, double kappa2_, double kappa3_,
            double psi_);

  // sigma = 2 p kappa3 - psi kappa1.
  double sigma() const { return 2.0 * p * kappa3 - psi * kappa1; }
  double det() const { return kappa1 * kappa2 - kappa3 * kappa3; }
  double trace() const { return kappa1 + kappa2; }
  // Spectral norm of P.
  double norm() const;
};

struct SeriesEval {
  Complex a;
  Complex b;
  double tail_bound;  // certified bound on the truncation error
};

// Taylor coefficients alpha_n, beta_n of A and B up to and including
// degree N, stored in extended precision internally.
class CoeffSeq {
 public:
  int degree() const { return int(alpha_.size()) - 1; }
  double alpha(int n) const;
  double beta(int n) const;
  // The growth constant C ||P|| in the bound ||(alpha_n, beta_n)|| <=
  // (C ||P||)^n / n!.
  double bound_constant() const { return bound_constant_; }

 private:
  friend CoeffSeq solve_recurrence(const ParamPair&, int);
  friend SeriesEval eval_series(const CoeffSeq&, Complex, const Tolerance&);
  friend int suggest_order(const ParamPair&, double, const Tolerance&);

  double step_factor(int n) const;  // sharp per-degree growth factor

  std::vector<std::pair<double, double>> alpha_;  // double-double parts
  std::vector<std::pair<double, double>> beta_;
  std::vector<double> log_bound_;  // ln of the cumulative norm bound
  double bound_constant_ = 0.0;
  double p_ = 0.0;
  double psi_ = 0.0;
  double pnorm_ = 0.0;
};

inline constexpr int kMaxSeriesOrder = 4096;

// Runs the coefficient recurrence up to degree N (N <= kMaxSeriesOrder).
CoeffSeq solve_recurrence(const ParamPair& params, int N);

// Horner evaluation of both series with compensated accumulation. Throws
// ToleranceError when the certified tail exceeds
// tol.rel_tol * (1 + |A| + |B|); raise N in that case.
SeriesEval eval_series(const CoeffSeq& coeffs, Complex z,
                       const Tolerance& tol = {});

// Smallest truncation order whose certified tail at |z| = radius falls
// below tol.rel_tol, capped at kMaxSeriesOrder.
int suggest_order(const ParamPair& params, double radius,
                  const Tolerance& tol = {});

// Reads (kappa1, kappa2, kappa3, psi) back from the first coefficients.
// Needs degree >= 2 and beta_1 != 0.
ParamPair recover_params(const CoeffSeq& coeffs, double p);

// Congruence P -> (1 0; g 1) P (1 g; 0 1) together with psi -> psi + 2 p g.
// The induced A, B satisfy A = A' + g B', B = B'.
ParamPair gamma_shift(const ParamPair& params, double g);

// sigma = 2 p kappa3 - psi kappa1; with kappa1 != 0 it vanishes exactly
// when beta_2 does, i.e. when B is odd.
double symmetry_sigma(const ParamPair& params);

// True when B is identically zero, i.e. kappa1 = 0.
bool b_vanishes(const ParamPair& params);

}  // namespace hbpow
