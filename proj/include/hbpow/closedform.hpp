#pragma once

// Closed-form evaluation of the structure functions A and B through
// confluent hypergeometric functions, plus the cross-check against the
// power-series route.

#include <complex>

#include "hbpow/recurrence.hpp"
#include "hbpow/specfun.hpp"

namespace hbpow {

// Derived quantities for the hypergeometric representation:
//   kappa = sqrt(det P)        (nonnegative real root when det P >= 0,
//                               i sqrt(-det P) otherwise),
//   alpha = sigma / (2 i kappa) + p   (when kappa != 0).
struct ClosedFormParams {
  ParamPair base;
  double sigma;
  Complex kappa;
  Complex alpha;
  bool det_zero;  // |det P| <= kDetZeroFactor * ||P||^2 selects the 0F1 form

  static ClosedFormParams from(const ParamPair& params);
};

// Relative threshold deciding the det P = 0 branch.
inline constexpr double kDetZeroFactor = 1e-12;
// Within this factor of the threshold both branches are evaluated and the
// discrepancy is reported.
inline constexpr double kBranchBorderFactor = 1e3;

struct ClosedEval {
  Complex a;
  Complex b;
  bool used_det_zero;
  // Relative gap between the two branches when evaluated near the branch
  // boundary; negative when only one branch was evaluated.
  double branch_discrepancy;
};

ClosedEval eval_closed(const ClosedFormParams& cf, Complex z,
                       const Tolerance& tol = {});

// Alternative F/G representation, valid on the det P != 0 branch with
// kappa3 = 0:
//   F = e^{i kappa z} M(alpha + 1, 2p + 1, -2 i kappa z),
//   G = e^{i kappa z} M(alpha,     2p + 1, -2 i kappa z),
// with A = (F + G) / 2 and B = i kappa1 / (2 kappa) (F - G), the latter by
// the contiguous relation M(a+1,b,w) - M(a,b,w) = (w/b) M(a+1,b+1,w).
struct FgEval {
  Complex f;
  Complex g;
  Complex a;
  Complex b;
};

FgEval eval_fg_form(const ClosedFormParams& cf, Complex z,
                    const Tolerance& tol = {});

// Evaluates A, B both ways (series with certified tail, closed form) and
// returns max(|dA|, |dB|) / (1 + |A| + |B|).
double crosscheck(const ParamPair& params, Complex z,
                  const Tolerance& tol = {});

}  // namespace hbpow
