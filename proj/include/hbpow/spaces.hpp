#pragma once

// The entire-function pair (A, B), its reproducing kernel, the rescaling
// action, and numerical positivity / norm checks for the associated space.

#include <complex>
#include <functional>
#include <vector>

#include "hbpow/canonical.hpp"
#include "hbpow/closedform.hpp"
#include "hbpow/recurrence.hpp"

namespace hbpow {

enum class Backend { Series, Closed };

// Evaluator for the pair (A, B) attached to a parameter set, with a choice
// of numerical route. E = A - i B. Immutable and freely shareable.
class EntirePair {
 public:
  EntirePair(const ParamPair& params, Backend backend,
             const Tolerance& tol = {});

  std::pair<Complex, Complex> values(Complex z) const;
  Complex a_value(Complex z) const { return values(z).first; }
  Complex b_value(Complex z) const { return values(z).second; }
  Complex e_value(Complex z) const;

  double order_p() const { return params_.p; }
  const ParamPair& params() const { return params_; }
  Backend backend() const { return backend_; }

 private:
  ParamPair params_;
  Backend backend_;
  ClosedFormParams cf_;
  CoeffSeq seq_;  // series backend only, solved for |z| <= kSeriesRadius
  Tolerance tol_;
};

// Radius the stored coefficient sequence of a series-backed pair covers;
// larger arguments trigger a one-off higher-order solve.
inline constexpr double kSeriesRadius = 24.0;

// The pair for a parameter set (closed-form backend by default).
EntirePair xi_hat(const ParamPair& params, Backend backend = Backend::Closed,
                  const Tolerance& tol = {});

// Rescaling action [a (.) F](z) = a^p F(a z) as a callable.
std::function<Complex(Complex)> rescale(std::function<Complex(Complex)> f,
                                        double a, double p);
std::function<Complex(Complex)> rescale(const EntirePair& pair, double a);

// Reproducing kernel
//   K(w, z)... evaluated as (B(z) A(conj w) - B(conj w) A(z)) / (z - conj w),
// switching to the confluent form B'(m) A(conj w) - A'(m) B(conj w) at the
// midpoint m = (z + conj w)/2 when |z - conj w| < 1e-6 (derivatives by
// fourth-order central differences).
Complex kernel(const EntirePair& pair, Complex z, Complex w);

// |K_{a(.)E}(z, w) - a^{2p+1} K_E(a z, a w)| for the rescaled pair.
double kernel_rescale_residual(const EntirePair& pair, double a, double p,
                               Complex z, Complex w);

// A set of pairwise distinct sample points (separation > 1e-12).
struct PointSet {
  std::vector<Complex> pts;

  explicit PointSet(std::vector<Complex> pts_);
};

// Checks |E(conj z)| < |E(z)| on a grid in the upper half-plane and
// |E(t)| > 0 on a real grid. Both grids must be nonempty; upper-half-plane
// points must satisfy Im z > 0.
bool hb_check(const EntirePair& pair, const PointSet& upper,
              const PointSet& real_grid);

// Smallest eigenvalue of the Gram matrix [K(z_i, z_j)] on at most 64
// points (cyclic Jacobi on the real symmetric embedding).
double gram_min_eig(const EntirePair& pair, const PointSet& points);

// Smallest eigenvalue of [K(z_i, z_j) - a^{2p+1} K(a z_i, a z_j)]; zero up
// to rounding exactly when the space is homogeneous of order p.
double homogeneity_defect(const EntirePair& pair, double p, double a,
                          const PointSet& points);

struct NormResult {
  double value;
  double tail_estimate;
};

// ||F||^2 = int |F(t) / E(t)|^2 dt over the real line, by adaptive Simpson
// quadrature on an octave-doubling window until the estimated tail falls
// below grid.quad_tol.
NormResult norm_via_weight(const std::function<Complex(double)>& f,
                           const EntirePair& pair, const GridSpec& grid = {});

}  // namespace hbpow
