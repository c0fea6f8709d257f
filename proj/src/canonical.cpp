#include "hbpow/canonical.hpp"

#include <algorithm>
#include <cmath>

#include "hbpow/closedform.hpp"
#include "hbpow/errors.hpp"

namespace hbpow {
namespace {

CMat2 cm_add(const CMat2& x, const CMat2& y) {
  return {x.m11 + y.m11, x.m12 + y.m12, x.m21 + y.m21, x.m22 + y.m22};
}

CMat2 cm_scale(Complex c, const CMat2& x) {
  return {c * x.m11, c * x.m12, c * x.m21, c * x.m22};
}

double cm_maxabs(const CMat2& x) {
  return std::max({std::abs(x.m11), std::abs(x.m12), std::abs(x.m21),
                   std::abs(x.m22)});
}

// Right-hand side of the system in the stretched variable u = ln s:
//   dW/du = z W H(e^u) e^u J^{-1},  (M J^{-1}) = (-m12, m11; -m22, m21).
CMat2 transfer_rhs(const ParamPair& params, Complex z, double u,
                   const CMat2& w) {
  const double s = std::exp(u);
  const Matrix2 h = h_of(params, s);
  const CMat2 m = {w.m11 * h.m11 + w.m12 * h.m21,
                   w.m11 * h.m12 + w.m12 * h.m22,
                   w.m21 * h.m11 + w.m22 * h.m21,
                   w.m21 * h.m12 + w.m22 * h.m22};
  const Complex f = z * s;
  return {-f * m.m12, f * m.m11, -f * m.m22, f * m.m21};
}

// Dormand-Prince 5(4) tableau.
constexpr double kA21 = 1.0 / 5.0;
constexpr double kA31 = 3.0 / 40.0, kA32 = 9.0 / 40.0;
constexpr double kA41 = 44.0 / 45.0, kA42 = -56.0 / 15.0, kA43 = 32.0 / 9.0;
constexpr double kA51 = 19372.0 / 6561.0, kA52 = -25360.0 / 2187.0,
                 kA53 = 64448.0 / 6561.0, kA54 = -212.0 / 729.0;
constexpr double kA61 = 9017.0 / 3168.0, kA62 = -355.0 / 33.0,
                 kA63 = 46732.0 / 5247.0, kA64 = 49.0 / 176.0,
                 kA65 = -5103.0 / 18656.0;
constexpr double kB1 = 35.0 / 384.0, kB3 = 500.0 / 1113.0,
                 kB4 = 125.0 / 192.0, kB5 = -2187.0 / 6784.0,
                 kB6 = 11.0 / 84.0;
constexpr double kE1 = 5179.0 / 57600.0, kE3 = 7571.0 / 16695.0,
                 kE4 = 393.0 / 640.0, kE5 = -92097.0 / 339200.0,
                 kE6 = 187.0 / 2100.0, kE7 = 1.0 / 40.0;
constexpr double kC2 = 1.0 / 5.0, kC3 = 3.0 / 10.0, kC4 = 4.0 / 5.0,
                 kC5 = 8.0 / 9.0;

Complex mobius(const CMat2& w, Complex tau) {
  return (w.m11 * tau + w.m12) / (w.m21 * tau + w.m22);
}

}  // namespace

TransferResult transfer_matrix(const ParamPair& params, double t0, double t1,
                               Complex z, const Tolerance& tol) {
  tol.validate();
  if (!(std::isfinite(t0) && std::isfinite(t1) && t0 > 0.0 && t1 > 0.0)) {
    throw DomainError("transfer_matrix: endpoints must be positive");
  }
  TransferResult out{CMat2::identity(), 0, 0.0};
  if (t0 == t1 || z == Complex(0.0)) return out;

  const double u0 = std::log(t0), u1 = std::log(t1);
  const double span = std::abs(u1 - u0);
  const double dir = u1 > u0 ? 1.0 : -1.0;
  const double step_tol = tol.rel_tol / 10.0;

  double u = u0;
  double h = dir * std::min(span, 0.1);
  CMat2 w = CMat2::identity();
  CMat2 k1 = transfer_rhs(params, z, u, w);
  const int max_steps = 200000;

  while ((u1 - u) * dir > 0.0) {
    if ((u + h - u1) * dir > 0.0) h = u1 - u;

    auto stage = [&](double c, const CMat2& acc) {
      return transfer_rhs(params, z, u + c * h, cm_add(w, cm_scale(h, acc)));
    };
    CMat2 k2 = stage(kC2, cm_scale(kA21, k1));
    CMat2 k3 = stage(kC3, cm_add(cm_scale(kA31, k1), cm_scale(kA32, k2)));
    CMat2 k4 = stage(kC4, cm_add(cm_add(cm_scale(kA41, k1), cm_scale(kA42, k2)),
                                 cm_scale(kA43, k3)));
    CMat2 k5 = stage(
        kC5, cm_add(cm_add(cm_scale(kA51, k1), cm_scale(kA52, k2)),
                    cm_add(cm_scale(kA53, k3), cm_scale(kA54, k4))));
    CMat2 k6 = stage(
        1.0, cm_add(cm_add(cm_scale(kA61, k1), cm_scale(kA62, k2)),
                    cm_add(cm_add(cm_scale(kA63, k3), cm_scale(kA64, k4)),
                           cm_scale(kA65, k5))));
    CMat2 inc5 = cm_add(cm_add(cm_scale(kB1, k1), cm_scale(kB3, k3)),
                        cm_add(cm_add(cm_scale(kB4, k4), cm_scale(kB5, k5)),
                               cm_scale(kB6, k6)));
    CMat2 y5 = cm_add(w, cm_scale(h, inc5));
    CMat2 k7 = transfer_rhs(params, z, u + h, y5);
    CMat2 inc4 = cm_add(cm_add(cm_scale(kE1, k1), cm_scale(kE3, k3)),
                        cm_add(cm_add(cm_scale(kE4, k4), cm_scale(kE5, k5)),
                               cm_add(cm_scale(kE6, k6), cm_scale(kE7, k7))));
    CMat2 y4 = cm_add(w, cm_scale(h, inc4));

    const double err = cm_maxabs(cm_add(y5, cm_scale(-1.0, y4)));
    const double scale = step_tol * (1.0 + cm_maxabs(y5));
    const bool accepted = err <= scale;
    if (accepted) {
      u += h;
      w = y5;
      k1 = k7;  // first-same-as-last
      out.est_error += err;
      ++out.step_count;
      if (cm_maxabs(w) > 1e280) {
        throw ConvergenceError(
            "transfer_matrix: solution overflow; reduce |Im z| or the span");
      }
      if (out.step_count > max_steps) {
        throw ConvergenceError("transfer_matrix: step budget exhausted");
      }
    }
    const double grow =
        err > 0.0 ? 0.9 * std::pow(scale / err, 0.2) : 5.0;
    h *= std::clamp(grow, 0.2, 5.0);
    if (!accepted && std::abs(h) < 1e-14 * span) {
      throw ConvergenceError("transfer_matrix: step size underflow");
    }
  }
  out.w = w;
  return out;
}

std::pair<Complex, Complex> solution_family(const ParamPair& params, double a,
                                            Complex z, const Tolerance& tol) {
  tol.validate();
  if (!(std::isfinite(a) && a > 0.0)) {
    throw DomainError("solution_family: scale must be positive");
  }
  const ClosedFormParams cf = ClosedFormParams::from(params);
  const ClosedEval ev = eval_closed(cf, a * z, tol);
  const double p = params.p;
  const double a2p = std::pow(a, 2.0 * p);
  const double blend = p != 0.0 ? params.psi * (1.0 - a2p) / (2.0 * p)
                                : -params.psi * std::log(a);
  return {ev.a + blend * ev.b, a2p * ev.b};
}

namespace {

struct RowVec {
  Complex a, b;
};

// Integrand of the identity in u = ln c: (A(c,.), B(c,.)) H(c) c.
RowVec residual_integrand(const ParamPair& params, Complex z, double u,
                          const Tolerance& tol) {
  const double c = std::exp(u);
  auto [va, vb] = solution_family(params, c, z, tol);
  const Matrix2 h = h_of(params, c);
  return {(va * h.m11 + vb * h.m21) * c, (va * h.m12 + vb * h.m22) * c};
}

double row_gap(const RowVec& x, const RowVec& y) {
  return std::max(std::abs(x.a - y.a), std::abs(x.b - y.b));
}

RowVec simpson(const RowVec& f0, const RowVec& f1, const RowVec& f2,
               double width) {
  const Complex wa = width / 6.0;
  return {wa * (f0.a + 4.0 * f1.a + f2.a), wa * (f0.b + 4.0 * f1.b + f2.b)};
}

void adaptive_panel(const ParamPair& params, Complex z, const Tolerance& tol,
                    double u0, const RowVec& f0, double u2, const RowVec& f2,
                    const RowVec& f1, const RowVec& whole, double quad_tol,
                    int depth, RowVec& acc) {
  const double um = 0.5 * (u0 + u2);
  const double ul = 0.5 * (u0 + um), ur = 0.5 * (um + u2);
  const RowVec fl = residual_integrand(params, z, ul, tol);
  const RowVec fr = residual_integrand(params, z, ur, tol);
  const RowVec left = simpson(f0, fl, f1, um - u0);
  const RowVec right = simpson(f1, fr, f2, u2 - um);
  const RowVec sum{left.a + right.a, left.b + right.b};
  if (depth >= 28 || row_gap(sum, whole) <= 15.0 * quad_tol) {
    // Richardson correction of the composite rule.
    acc.a += sum.a + (sum.a - whole.a) / 15.0;
    acc.b += sum.b + (sum.b - whole.b) / 15.0;
    return;
  }
  adaptive_panel(params, z, tol, u0, f0, um, f1, fl, left, 0.5 * quad_tol,
                 depth + 1, acc);
  adaptive_panel(params, z, tol, um, f1, u2, f2, fr, right, 0.5 * quad_tol,
                 depth + 1, acc);
}

}  // namespace

double integral_residual(const ParamPair& params, double a, double b,
                         Complex z, const GridSpec& grid) {
  if (!(std::isfinite(a) && std::isfinite(b) && 0.0 < a && a <= b)) {
    throw DomainError("integral_residual: need 0 < a <= b");
  }
  if (!(grid.quad_tol > 0.0)) {
    throw DomainError("integral_residual: quadrature tolerance must be positive");
  }
  const Tolerance tol{};

  // Panel boundaries in u = ln c: endpoints plus any seed points inside.
  std::vector<double> knots{std::log(a), std::log(b)};
  for (double s : grid.points) {
    if (s > a && s < b) knots.push_back(std::log(s));
  }
  std::sort(knots.begin(), knots.end());

  RowVec integral{0.0, 0.0};
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    const double u0 = knots[i], u2 = knots[i + 1];
    if (u2 <= u0) continue;
    const RowVec f0 = residual_integrand(params, z, u0, tol);
    const RowVec f2 = residual_integrand(params, z, u2, tol);
    const RowVec f1 =
        residual_integrand(params, z, 0.5 * (u0 + u2), tol);
    const RowVec whole = simpson(f0, f1, f2, u2 - u0);
    adaptive_panel(params, z, tol, u0, f0, u2, f2, f1, whole,
                   grid.quad_tol / double(knots.size()), 0, integral);
  }

  auto [aa, ab] = solution_family(params, a, z, tol);
  auto [ba, bb] = solution_family(params, b, z, tol);
  // Row times J = (0 -1; 1 0): (x, y) J = (y, -x).
  const Complex lhs1 = bb - ab, lhs2 = -(ba - aa);
  const Complex rhs1 = z * integral.a, rhs2 = z * integral.b;
  const double scale = 1.0 + std::max({std::abs(lhs1), std::abs(lhs2),
                                       std::abs(rhs1), std::abs(rhs2)});
  return std::max(std::abs(lhs1 - rhs1), std::abs(lhs2 - rhs2)) / scale;
}

WeylResult weyl_coefficient(const ParamPair& params, double t_max, Complex z,
                            const Tolerance& tol) {
  tol.validate();
  if (!(std::isfinite(t_max) && t_max >= 2.0)) {
    throw DomainError("weyl_coefficient: need t_max >= 2");
  }
  if (z.imag() == 0.0) {
    throw DomainError("weyl_coefficient: z must be off the real axis");
  }
  if (in_class_pp(params) != ClassTag::InPP) {
    throw DomainError(
        "weyl_coefficient: parameters must lie in the admissible class");
  }
  if (z.imag() < 0.0) {
    WeylResult r = weyl_coefficient(params, t_max, std::conj(z), tol);
    return {std::conj(r.q), r.cauchy_estimate};
  }

  const Complex tau(0.0, 1.0);
  const TransferResult half =
      transfer_matrix(params, 1.0, 0.5 * t_max, z, tol);
  const TransferResult rest =
      transfer_matrix(params, 0.5 * t_max, t_max, z, tol);
  const Complex q_half = mobius(half.w, tau);
  const Complex q_full = mobius(half.w * rest.w, tau);

  // A Weyl coefficient maps the upper half-plane into itself; a clearly
  // negative imaginary part signals that the truncation is meaningless.
  if (q_full.imag() < -1e3 * tol.rel_tol * (1.0 + std::abs(q_full))) {
    throw ConvergenceError(
        "weyl_coefficient: truncated value left the upper half-plane");
  }
  return {q_full, std::abs(q_full - q_half)};
}

Complex q_ec(const ParamPair& params, Complex z, double t_max,
             const Tolerance& tol) {
  const WeylResult w = weyl_coefficient(params, t_max, z, tol);
  const ClosedFormParams cf = ClosedFormParams::from(params);
  const ClosedEval ev = eval_closed(cf, z, tol);
  return (ev.b * w.q - ev.a) / (ev.a * w.q + ev.b);
}

}  // namespace hbpow
