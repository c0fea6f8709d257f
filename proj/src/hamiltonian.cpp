#include "hbpow/hamiltonian.hpp"

#include <algorithm>
#include <cmath>

#include "hbpow/errors.hpp"

namespace hbpow {
namespace {

// Comparison scale shared by the structural predicates below.
double param_scale(const ParamPair& params) {
  return params.norm() + std::abs(params.psi) + 1.0;
}

bool near_zero(double x, double scale) {
  return std::abs(x) <= kParamTol * scale;
}

void require_positive_scale(double a, const char* what) {
  if (!(std::isfinite(a) && a > 0.0)) {
    throw DomainError(std::string(what) + ": scale must be positive");
  }
}

// sinh(p ln a) / p, continuous through p = 0 where it degenerates to ln a.
double sinhc_log(double p, double a) {
  const double l = std::log(a);
  if (p == 0.0) return l;
  return std::sinh(p * l) / p;
}

// P (-psi, 2p)^T, the direction whose annihilation makes the kernel of H
// independent of the scale parameter.
Vec2 p_times_psi_vec(const ParamPair& params) {
  return {-params.psi * params.kappa1 + 2.0 * params.p * params.kappa3,
          -params.psi * params.kappa3 + 2.0 * params.p * params.kappa2};
}

double min_eigenvalue(const ParamPair& params) {
  const double t = params.kappa1 + params.kappa2;
  const double gap = std::hypot(params.kappa1 - params.kappa2,
                                2.0 * params.kappa3);
  return 0.5 * (t - gap);
}

bool e1_in_kernel(const ParamPair& params, double scale) {
  return near_zero(params.kappa1, scale) && near_zero(params.kappa3, scale);
}

bool psi_vec_in_kernel(const ParamPair& params, double scale) {
  const Vec2 v = p_times_psi_vec(params);
  const double vscale =
      scale * (std::abs(params.psi) + 2.0 * std::abs(params.p) + 1.0);
  return near_zero(v.x, vscale) && near_zero(v.y, vscale);
}

void require_same_class(const ParamPair& x, const ParamPair& y,
                        const char* what) {
  if (x.p != y.p) {
    throw DomainError(std::string(what) +
                      ": parameter sets have different orders p");
  }
  if (in_class_pp(x) != ClassTag::InPP || in_class_pp(y) != ClassTag::InPP) {
    throw DomainError(std::string(what) +
                      ": arguments must lie in the admissible class");
  }
}

}  // namespace

double Matrix2::norm() const {
  const double s = m11 * m11 + m12 * m12 + m21 * m21 + m22 * m22;
  const double d = det();
  const double h = std::sqrt(std::max(s * s - 4.0 * d * d, 0.0));
  return std::sqrt(0.5 * (s + h));
}

Matrix2 d_psi(double p, double psi, double a) {
  require_positive_scale(a, "d_psi");
  const double l = std::log(a);
  return {std::exp(p * l), 0.0, psi * sinhc_log(p, a), std::exp(-p * l)};
}

Matrix2 h_of(const ParamPair& params, double a) {
  require_positive_scale(a, "h_of");
  const double ap = std::pow(a, params.p);
  const double am = std::pow(a, -params.p);
  const double s = sinhc_log(params.p, a) * params.psi;
  const double k1 = params.kappa1, k2 = params.kappa2, k3 = params.kappa3;
  // Entries of D P D^T written out so the result is symmetric exactly; the
  // diagonal product a^p a^{-p} in the off-diagonal entry is 1 analytically
  // and is not formed.
  const double h11 = ap * ap * k1;
  const double h12 = ap * (s * k1) + k3;
  const double h22 = s * s * k1 + 2.0 * am * s * k3 + am * am * k2;
  return {h11, h12, h12, h22};
}

std::optional<Vec2> kernel_direction(const ParamPair& params, double a) {
  require_positive_scale(a, "kernel_direction");
  const double norm = params.norm();
  if (norm == 0.0) {
    throw DomainError("kernel_direction: P = 0 annihilates everything");
  }
  if (std::abs(params.det()) > kParamTol * norm * norm) return std::nullopt;

  // Kernel of the rank-one P, taken from the larger row for stability.
  const double k1 = params.kappa1, k2 = params.kappa2, k3 = params.kappa3;
  Vec2 xi = std::max(std::abs(k1), std::abs(k3)) >=
                    std::max(std::abs(k2), std::abs(k3))
                ? Vec2{-k3, k1}
                : Vec2{k2, -k3};

  // ker H(a) = D^{-T} ker P for H = D P D^T with invertible D.
  const Matrix2 d = d_psi(params.p, params.psi, a);
  Vec2 v{xi.x / d.m11 - xi.y * d.m21 / (d.m11 * d.m22), xi.y / d.m22};
  const double len = std::hypot(v.x, v.y);
  const double sign = (v.x != 0.0 ? v.x : v.y) > 0.0 ? 1.0 : -1.0;
  return Vec2{sign * v.x / len, sign * v.y / len};
}

bool integrable_at(const ParamPair& params, Endpoint which) {
  const double p = params.p;
  const double scale = param_scale(params);
  if (which == Endpoint::Zero) {
    if (p <= -0.5) return near_zero(params.kappa1, scale);
    if (p < 0.5) return true;
    // Quadratic form (-psi, 2p) P (-psi, 2p)^T must vanish.
    const Vec2 v = p_times_psi_vec(params);
    const double q = -params.psi * v.x + 2.0 * p * v.y;
    const double w2 = params.psi * params.psi + 4.0 * p * p;
    return std::abs(q) <= kParamTol * scale * (w2 + 1.0);
  }
  if (p == 0.0) {
    return near_zero(params.kappa1, scale) &&
           near_zero(params.kappa2, scale) && near_zero(params.kappa3, scale);
  }
  bool ok = true;
  if (p >= -0.5) ok = ok && e1_in_kernel(params, scale);
  if (p <= 0.5) ok = ok && psi_vec_in_kernel(params, scale);
  return ok;
}

ClassTag in_class_pp(const ParamPair& params) {
  const double scale = param_scale(params);
  if (min_eigenvalue(params) < -1e-12 * std::abs(params.trace())) {
    return ClassTag::NotPSD;
  }
  if (params.p == 0.0) {
    if (near_zero(params.psi, scale)) {
      const bool definite =
          params.det() > kParamTol * scale * scale &&
          min_eigenvalue(params) > 0.0;
      return definite ? ClassTag::InPP : ClassTag::ZeroPsiSingular;
    }
    return e1_in_kernel(params, scale) ? ClassTag::KernelContainsE1
                                       : ClassTag::InPP;
  }
  if (e1_in_kernel(params, scale)) return ClassTag::KernelContainsE1;
  if (psi_vec_in_kernel(params, scale)) return ClassTag::KernelContainsPsiVec;
  return ClassTag::InPP;
}

bool approx_equiv(const ParamPair& x, const ParamPair& y) {
  require_same_class(x, y, "approx_equiv");
  const double scale = std::max(param_scale(x), param_scale(y));
  if (!near_zero(x.kappa1 - y.kappa1, scale)) return false;
  if (std::abs(x.det() - y.det()) > kParamTol * scale * scale) return false;
  const double shift = (2.0 * x.p / x.kappa1) * (x.kappa3 - y.kappa3);
  const double pscale = scale * (1.0 + 2.0 * std::abs(x.p) / x.kappa1);
  return std::abs((x.psi - y.psi) - shift) <= kParamTol * pscale;
}

ParamPair canonicalize_approx(const ParamPair& params) {
  if (in_class_pp(params) != ClassTag::InPP) {
    throw DomainError(
        "canonicalize_approx: argument must lie in the admissible class");
  }
  const double k1 = params.kappa1, k3 = params.kappa3;
  return ParamPair(params.p, k1, params.kappa2 - k3 * k3 / k1, 0.0,
                   params.psi - (2.0 * params.p / k1) * k3);
}

ParamPair rescale_params(const ParamPair& params, double c) {
  require_positive_scale(c, "rescale_params");
  const double tp = 2.0 * params.p;
  return ParamPair(params.p, std::pow(c, 1.0 + tp) * params.kappa1,
                   std::pow(c, 1.0 - tp) * params.kappa2, c * params.kappa3,
                   std::pow(c, -tp) * params.psi);
}

namespace {

// The two rescaling invariants of an admissible parameter set.
void simeq_invariants(const ParamPair& x, double& det_inv, double& psi_inv) {
  const double e = 1.0 / (1.0 + 2.0 * x.p);
  det_inv = std::pow(x.kappa1, -2.0 * e) * x.det();
  psi_inv = std::pow(x.kappa1, 2.0 * x.p * e) * x.psi -
            2.0 * x.p * std::pow(x.kappa1, -e) * x.kappa3;
}

}  // namespace

bool simeq_equiv(const ParamPair& x, const ParamPair& y) {
  require_same_class(x, y, "simeq_equiv");
  double dx, px, dy, py;
  simeq_invariants(x, dx, px);
  simeq_invariants(y, dy, py);
  const double dscale = std::max({std::abs(dx), std::abs(dy), 1.0});
  const double pscale = std::max({std::abs(px), std::abs(py), 1.0});
  return std::abs(dx - dy) <= kParamTol * dscale &&
         std::abs(px - py) <= kParamTol * pscale;
}

ParamPair canonicalize_simeq(const ParamPair& params) {
  if (in_class_pp(params) != ClassTag::InPP) {
    throw DomainError(
        "canonicalize_simeq: argument must lie in the admissible class");
  }
  const double c = std::pow(params.kappa1, -1.0 / (1.0 + 2.0 * params.p));
  return canonicalize_approx(rescale_params(params, c));
}

}  // namespace hbpow
