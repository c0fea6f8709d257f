#include "hbpow/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "hbpow/errors.hpp"

namespace hbpow {
namespace {

// Below this distance from the diagonal z = conj(w) the kernel quotient is
// replaced by the confluent (derivative) form.
constexpr double kConfluentSwitch = 1e-6;
// Starting step of the fourth-order derivative stencil used by the
// confluent form; it is shrunk until two consecutive estimates agree.
constexpr double kDiffStep = 3e-3;
constexpr double kDistinctTol = 1e-12;
constexpr int kMaxGramPoints = 64;

// K(z, w) built from an arbitrary (A, B) evaluator. Near the diagonal the
// quotient degenerates to 0/0; there the difference quotient of
//   N(zeta) = B(zeta) A(conj w) - B(conj w) A(zeta)
// through conj(w) is replaced by N'(m) at the midpoint m = (z + conj w)/2,
// which keeps the relative error at the stencil level instead of losing
// the six digits the raw quotient would.
template <class Vals>
Complex kernel_impl(const Vals& vals, Complex z, Complex w) {
  const Complex wb = std::conj(w);
  const Complex d = z - wb;
  const auto [aw, bw] = vals(wb);
  if (std::abs(d) >= kConfluentSwitch) {
    const auto [az, bz] = vals(z);
    return (bz * aw - bw * az) / d;
  }
  const Complex m = 0.5 * (z + wb);
  const auto slope = [&](double h) {
    const auto [a1, b1] = vals(m + Complex(h));
    const auto [a2, b2] = vals(m - Complex(h));
    const auto [a3, b3] = vals(m + Complex(2.0 * h));
    const auto [a4, b4] = vals(m - Complex(2.0 * h));
    return std::pair{(8.0 * (a1 - a2) - (a3 - a4)) / (12.0 * h),
                     (8.0 * (b1 - b2) - (b3 - b4)) / (12.0 * h)};
  };
  // The right stencil scale depends on the pair's oscillation frequency,
  // which the evaluator does not expose; shrink the step until two
  // consecutive fourth-order estimates agree, then combine them.
  double h = kDiffStep;
  auto [da1, db1] = slope(h);
  for (int it = 0;; ++it) {
    const auto [da2, db2] = slope(0.25 * h);
    const double scale = std::abs(da2) + std::abs(db2) + 1e-30;
    const double gap = std::abs(da2 - da1) + std::abs(db2 - db1);
    if (gap <= 1e-10 * scale || it == 5) {
      const Complex da = (256.0 * da2 - da1) / 255.0;
      const Complex db = (256.0 * db2 - db1) / 255.0;
      return db * aw - da * bw;
    }
    h *= 0.25;
    da1 = da2;
    db1 = db2;
  }
}

// Smallest eigenvalue of a dense symmetric matrix by cyclic Jacobi sweeps.
// The matrices here are at most 128 x 128, so no pivot strategy is needed.
double jacobi_min_eig(std::vector<double> m, int n) {
  double frob = 0.0;
  for (double v : m) frob += v * v;
  const double off_limit = 1e-28 * (frob + 1e-300);
  for (int sweep = 0; sweep < 60; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) off += m[p * n + q] * m[p * n + q];
    }
    if (off <= off_limit) break;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = m[p * n + q];
        if (apq == 0.0) continue;
        const double theta = (m[q * n + q] - m[p * n + p]) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < n; ++k) {
          const double mp = m[p * n + k], mq = m[q * n + k];
          m[p * n + k] = c * mp - s * mq;
          m[q * n + k] = s * mp + c * mq;
        }
        for (int k = 0; k < n; ++k) {
          const double mp = m[k * n + p], mq = m[k * n + q];
          m[k * n + p] = c * mp - s * mq;
          m[k * n + q] = s * mp + c * mq;
        }
      }
    }
  }
  double lo = m[0];
  for (int i = 1; i < n; ++i) lo = std::min(lo, m[i * n + i]);
  return lo;
}

// Minimum eigenvalue of a Hermitian matrix via the real symmetric embedding
// [[X, -Y], [Y, X]] of G = X + iY, which duplicates the spectrum.
double hermitian_min_eig(const std::vector<Complex>& g, int n) {
  std::vector<double> m(std::size_t(2 * n) * std::size_t(2 * n), 0.0);
  const int nn = 2 * n;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      // Force exact Hermitian symmetry before embedding.
      const Complex v = 0.5 * (g[i * n + j] + std::conj(g[j * n + i]));
      m[i * nn + j] = v.real();
      m[(i + n) * nn + (j + n)] = v.real();
      m[i * nn + (j + n)] = -v.imag();
      m[(i + n) * nn + j] = v.imag();
    }
  }
  return jacobi_min_eig(std::move(m), nn);
}

void check_gram_size(const PointSet& points, const char* who) {
  if (points.pts.empty()) {
    throw DomainError(std::string(who) + ": point set must be nonempty");
  }
  if (int(points.pts.size()) > kMaxGramPoints) {
    throw DomainError(std::string(who) + ": at most 64 points supported");
  }
}

}  // namespace

EntirePair::EntirePair(const ParamPair& params, Backend backend,
                       const Tolerance& tol)
    : params_(params),
      backend_(backend),
      cf_(ClosedFormParams::from(params)),
      tol_(tol) {
  tol_.validate();
  if (backend_ == Backend::Series) {
    seq_ = solve_recurrence(params_,
                            suggest_order(params_, kSeriesRadius, tol_));
  }
}

std::pair<Complex, Complex> EntirePair::values(Complex z) const {
  if (backend_ == Backend::Closed) {
    const ClosedEval ev = eval_closed(cf_, z, tol_);
    return {ev.a, ev.b};
  }
  const double r = std::abs(z);
  if (r <= kSeriesRadius) {
    const SeriesEval ev = eval_series(seq_, z, tol_);
    return {ev.a, ev.b};
  }
  const CoeffSeq big =
      solve_recurrence(params_, suggest_order(params_, r, tol_));
  const SeriesEval ev = eval_series(big, z, tol_);
  return {ev.a, ev.b};
}

Complex EntirePair::e_value(Complex z) const {
  const auto [a, b] = values(z);
  return a - Complex(0.0, 1.0) * b;
}

EntirePair xi_hat(const ParamPair& params, Backend backend,
                  const Tolerance& tol) {
  return EntirePair(params, backend, tol);
}

std::function<Complex(Complex)> rescale(std::function<Complex(Complex)> f,
                                        double a, double p) {
  if (!(std::isfinite(a) && a > 0.0)) {
    throw DomainError("rescale: scale must be positive");
  }
  const double ap = std::pow(a, p);
  return [f = std::move(f), a, ap](Complex z) { return ap * f(a * z); };
}

std::function<Complex(Complex)> rescale(const EntirePair& pair, double a) {
  return rescale([pair](Complex z) { return pair.e_value(z); }, a,
                 pair.order_p());
}

Complex kernel(const EntirePair& pair, Complex z, Complex w) {
  return kernel_impl([&pair](Complex zz) { return pair.values(zz); }, z, w);
}

double kernel_rescale_residual(const EntirePair& pair, double a, double p,
                               Complex z, Complex w) {
  if (!(std::isfinite(a) && a > 0.0)) {
    throw DomainError("kernel_rescale_residual: scale must be positive");
  }
  const double ap = std::pow(a, p);
  const auto scaled = [&pair, a, ap](Complex zz) {
    const auto [av, bv] = pair.values(a * zz);
    return std::pair<Complex, Complex>(ap * av, ap * bv);
  };
  const Complex lhs = kernel_impl(scaled, z, w);
  const Complex rhs =
      std::pow(a, 2.0 * p + 1.0) * kernel(pair, a * z, a * w);
  return std::abs(lhs - rhs);
}

PointSet::PointSet(std::vector<Complex> pts_) : pts(std::move(pts_)) {
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (!(std::isfinite(pts[i].real()) && std::isfinite(pts[i].imag()))) {
      throw DomainError("PointSet: points must be finite");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (std::abs(pts[i] - pts[j]) <= kDistinctTol) {
        throw DomainError("PointSet: points must be pairwise distinct");
      }
    }
  }
}

bool hb_check(const EntirePair& pair, const PointSet& upper,
              const PointSet& real_grid) {
  if (upper.pts.empty() || real_grid.pts.empty()) {
    throw DomainError("hb_check: both grids must be nonempty");
  }
  for (Complex z : upper.pts) {
    if (!(z.imag() > 0.0)) {
      throw DomainError("hb_check: sample points must have Im z > 0");
    }
    if (!(std::abs(pair.e_value(std::conj(z))) <
          std::abs(pair.e_value(z)))) {
      return false;
    }
  }
  for (Complex t : real_grid.pts) {
    if (t.imag() != 0.0) {
      throw DomainError("hb_check: real grid points must have Im t = 0");
    }
    if (!(std::abs(pair.e_value(t)) > 0.0)) return false;
  }
  return true;
}

double gram_min_eig(const EntirePair& pair, const PointSet& points) {
  check_gram_size(points, "gram_min_eig");
  const int n = int(points.pts.size());
  std::vector<Complex> g(std::size_t(n) * std::size_t(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      g[i * n + j] = kernel(pair, points.pts[i], points.pts[j]);
    }
  }
  return hermitian_min_eig(g, n);
}

double homogeneity_defect(const EntirePair& pair, double p, double a,
                          const PointSet& points) {
  if (!(std::isfinite(a) && a > 0.0 && a <= 1.0)) {
    throw DomainError("homogeneity_defect: need a in (0, 1]");
  }
  check_gram_size(points, "homogeneity_defect");
  const int n = int(points.pts.size());
  const double s = std::pow(a, 2.0 * p + 1.0);
  std::vector<Complex> g(std::size_t(n) * std::size_t(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const Complex zi = points.pts[i], zj = points.pts[j];
      g[i * n + j] = kernel(pair, zi, zj) - s * kernel(pair, a * zi, a * zj);
    }
  }
  return hermitian_min_eig(g, n);
}

namespace {

struct QuadBudget {
  long evals = 0;
  static constexpr long kMax = 4000000;
};

double adaptive_simpson(const std::function<double(double)>& g, double x0,
                        double x2, double f0, double f1, double f2,
                        double whole, double tol, int depth,
                        QuadBudget& budget) {
  const double xm = 0.5 * (x0 + x2);
  const double xl = 0.5 * (x0 + xm), xr = 0.5 * (xm + x2);
  const double fl = g(xl), fr = g(xr);
  budget.evals += 2;
  if (budget.evals > QuadBudget::kMax) {
    throw ConvergenceError("norm_via_weight: evaluation budget exhausted");
  }
  const double left = (xm - x0) / 6.0 * (f0 + 4.0 * fl + f1);
  const double right = (x2 - xm) / 6.0 * (f1 + 4.0 * fr + f2);
  const double sum = left + right;
  if (depth >= 30 || std::abs(sum - whole) <= 15.0 * tol) {
    return sum + (sum - whole) / 15.0;
  }
  return adaptive_simpson(g, x0, xm, f0, fl, f1, left, 0.5 * tol, depth + 1,
                          budget) +
         adaptive_simpson(g, xm, x2, f1, fr, f2, right, 0.5 * tol, depth + 1,
                          budget);
}

double integrate(const std::function<double(double)>& g, double x0, double x2,
                 double tol, QuadBudget& budget) {
  const double f0 = g(x0), f1 = g(0.5 * (x0 + x2)), f2 = g(x2);
  budget.evals += 3;
  const double whole = (x2 - x0) / 6.0 * (f0 + 4.0 * f1 + f2);
  return adaptive_simpson(g, x0, x2, f0, f1, f2, whole, tol, 0, budget);
}

}  // namespace

NormResult norm_via_weight(const std::function<Complex(double)>& f,
                           const EntirePair& pair, const GridSpec& grid) {
  if (!(grid.quad_tol > 0.0)) {
    throw DomainError("norm_via_weight: quadrature tolerance must be positive");
  }
  const auto g = [&](double t) {
    const double w2 = std::norm(pair.e_value(Complex(t, 0.0)));
    if (!(w2 > 0.0)) {
      throw DomainError("norm_via_weight: weight vanished on the real axis");
    }
    return std::norm(f(t)) / w2;
  };

  QuadBudget budget;
  double total = integrate(g, -1.0, 1.0, grid.quad_tol / 4.0, budget);

  // Octave-doubling window: add shells [T, 2T] on both sides until the
  // geometric extrapolation of the shell sums certifies the tail.
  double T = 1.0;
  double prev_shell = -1.0;
  double tail = std::numeric_limits<double>::infinity();
  int zero_shells = 0;
  bool converged = false;
  const int kMaxOctaves = 48;
  for (int oct = 0; oct < kMaxOctaves; ++oct) {
    const double shell_tol = grid.quad_tol / (8.0 * double(oct + 1) * double(oct + 1));
    const double shell = integrate(g, T, 2.0 * T, shell_tol, budget) +
                         integrate(g, -2.0 * T, -T, shell_tol, budget);
    total += shell;
    if (shell <= 1e-300) {
      if (++zero_shells >= 2) {
        tail = 0.0;
        converged = true;
        break;
      }
    } else {
      zero_shells = 0;
      if (prev_shell > 0.0 && shell < prev_shell) {
        const double r = shell / prev_shell;
        tail = shell * r / (1.0 - r);
        if (tail <= 0.5 * grid.quad_tol) {
          converged = true;
          break;
        }
      }
      prev_shell = shell;
    }
    T *= 2.0;
  }
  if (!converged) {
    throw ConvergenceError(
        "norm_via_weight: tail estimate did not reach the tolerance; the "
        "integrand decays too slowly for the window");
  }
  return {total, tail};
}

}  // namespace hbpow
