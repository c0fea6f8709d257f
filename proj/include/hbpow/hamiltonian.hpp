#pragma once

// The diagonal-free Hamiltonian family H(a) = D_psi(a) P D_psi(a)^T on
// (0, infinity), its parameter class, and the two equivalence relations on
// parameter sets together with their canonical representatives.

#include <optional>

#include "hbpow/recurrence.hpp"

namespace hbpow {

struct Matrix2 {
  double m11, m12, m21, m22;

  static Matrix2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
  // Symplectic rotation J = (0 -1; 1 0).
  static Matrix2 j() { return {0.0, -1.0, 1.0, 0.0}; }

  Matrix2 transpose() const { return {m11, m21, m12, m22}; }
  double det() const { return m11 * m22 - m12 * m21; }
  double norm() const;  // spectral norm

  friend Matrix2 operator*(const Matrix2& x, const Matrix2& y) {
    return {x.m11 * y.m11 + x.m12 * y.m21, x.m11 * y.m12 + x.m12 * y.m22,
            x.m21 * y.m11 + x.m22 * y.m21, x.m21 * y.m12 + x.m22 * y.m22};
  }
};

struct Vec2 {
  double x, y;
};

// Relative tolerance for parameter comparisons, scaled by ||P|| + |psi| + 1.
inline constexpr double kParamTol = 1e-10;

// The scaling family D_psi(a), lower triangular with diag(a^p, a^{-p}):
//   lower-left entry psi sinh(p ln a) / p   (p != 0),
//                    psi ln a               (p = 0).
Matrix2 d_psi(double p, double psi, double a);

// H(a) = D_psi(a) P D_psi(a)^T, symmetric by construction. Requires a > 0.
Matrix2 h_of(const ParamPair& params, double a);

// For rank-one P: the direction spanning ker H(a), normalized with its
// first nonzero component positive. Returns nullopt when P is invertible;
// throws DomainError when P = 0. The direction is independent of a exactly
// when ker P is spanned by (1, 0) or by (-psi, 2p) (p != 0), respectively
// by (1, 0) alone when p = 0, psi != 0.
std::optional<Vec2> kernel_direction(const ParamPair& params, double a);

enum class Endpoint { Zero, Infinity };

// Whether trace H is integrable at the named endpoint:
//   at 0:   p <= -1/2 needs kappa1 = 0; -1/2 < p < 1/2 always; p >= 1/2
//           needs (-psi, 2p) P (-psi, 2p)^T = 0.
//   at oo:  p = 0 needs P = 0; p != 0 needs P e1 = 0 whenever p >= -1/2
//           and P (-psi, 2p)^T = 0 whenever p <= 1/2.
bool integrable_at(const ParamPair& params, Endpoint which);

enum class ClassTag {
  InPP,                  // member of the admissible class
  NotPSD,                // P has a negative eigenvalue
  KernelContainsE1,      // (1,0)^T lies in ker P
  KernelContainsPsiVec,  // (-psi, 2p)^T lies in ker P (p != 0 only)
  ZeroPsiSingular,       // p = 0, psi = 0 and P singular
};

// Class membership test: P must be positive semidefinite with neither
// (1,0)^T nor, for p != 0, (-psi, 2p)^T in its kernel; for p = 0 and
// psi = 0 the matrix must be definite, for p = 0 and psi != 0 only
// (1,0)^T is constrained. Precedence on failure: NotPSD first, then the
// kernel conditions in the order above.
ClassTag in_class_pp(const ParamPair& params);

// Equivalence "same space, same norm": equal kappa1, equal det P, and
// psi - psi~ = (2p / kappa1)(kappa3 - kappa3~). Both arguments must be in
// the admissible class with matching p.
bool approx_equiv(const ParamPair& x, const ParamPair& y);

// Representative with kappa3 = 0:
//   (kappa1, kappa2 - kappa3^2 / kappa1, 0, psi - (2p / kappa1) kappa3).
ParamPair canonicalize_approx(const ParamPair& params);

// Action of the rescaling c > 0:
//   kappa1 -> c^{1+2p} kappa1, kappa2 -> c^{1-2p} kappa2,
//   kappa3 -> c kappa3,        psi    -> c^{-2p} psi.
ParamPair rescale_params(const ParamPair& params, double c);

// Equivalence "same space up to rescaling": the rescaling-invariant pair
//   kappa1^{-2/(1+2p)} det P   and
//   kappa1^{2p/(1+2p)} psi - 2p kappa1^{-1/(1+2p)} kappa3
// must agree.
bool simeq_equiv(const ParamPair& x, const ParamPair& y);

// Representative with kappa1 = 1 and kappa3 = 0 (rescale by
// c = kappa1^{-1/(1+2p)}, then reduce as in canonicalize_approx).
ParamPair canonicalize_simeq(const ParamPair& params);

}  // namespace hbpow
