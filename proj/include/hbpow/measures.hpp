#pragma once

// The two-sided power measures mu(dt) = (mu+ 1_{t>0} + mu- 1_{t<0})
// |t|^{2p} dt associated with the parameter sets, in both directions, plus
// the asymptotic law behind the correspondence and a Poisson-kernel density
// check.

#include "hbpow/spaces.hpp"

namespace hbpow {

struct PowerMeasure {
  double mu_plus;
  double mu_minus;
  double exponent;  // = 2p, must be > -1

  PowerMeasure(double mu_plus_, double mu_minus_, double exponent_);

  bool one_sided() const { return mu_plus == 0.0 || mu_minus == 0.0; }
};

// The measure whose weighted space the parameter set generates. With
// kappa the nonnegative root (det P >= 0 for admissible parameters) and
// t = sigma / (2 kappa):
//   det P > 0:  mu+- = 2^{2p} kappa^{2p+1} |Gamma(p + 1 - i t)|^2
//               / (kappa1 Gamma(2p+1)^2) e^{+- pi t},
//   det P = 0:  the side selected by the sign of sigma carries
//               pi |sigma|^{2p+1} / (kappa1 Gamma(2p+1)^2), the other
//               side is zero.
// Requires an admissible parameter set.
PowerMeasure measure_of(const ParamPair& params);

// A parameter set generating the given measure, solved from the formulas
// above with kappa3 = 0. The remaining rescaling freedom picks kappa1 = 1
// away from exponent -1 and a balanced representative (kappa1 = kappa2,
// respectively kappa1 = |sigma| in the one-sided case) close to it, which
// keeps the returned components within a bounded range.
ParamPair params_of_measure(const PowerMeasure& m);

// The canonical entire pair for the measure, normalized so that E(0) = 1
// and K(0, 0) = 1 (closed-form backend).
EntirePair build_generator(const PowerMeasure& m);

// Whether two parameter sets generate the same measure (equality of the
// rescaling-invariant data; equivalent to simeq_equiv).
bool measure_equiv(const ParamPair& x, const ParamPair& y);

// The modulus ratio in the large-|y| law
//   |1/2 M(i d + p, 2p+1, -i y) + 1/2 M(i d + p + 1, 2p+1, -i y)
//       - i y / (2 (2p+1)) M(i d + p + 1, 2p+2, -i y)|
//   ~ Gamma(2p+1) / |Gamma(i d + p + 1)| e^{sign(y) pi d / 2} |y|^{-p},
// returned as measured / predicted. Requires |y| >= 1.
double asymptotic_ratio(double delta, double p, double y,
                        const Tolerance& tol = {});

struct DensityCheck {
  double observed;   // Im q_ec(x + i y)
  double predicted;  // Poisson integral of |E|^2 against the measure
};

// Compares Im q_ec at x + i y against
//   (1/pi) int y / ((t-x)^2 + y^2) |E(t)|^2 dmu(t).
// Requires an admissible parameter set, x != 0 and 0 < y <= |x| / 10.
DensityCheck density_check(const ParamPair& params, double x, double y,
                           double t_max, const Tolerance& tol = {});

}  // namespace hbpow
