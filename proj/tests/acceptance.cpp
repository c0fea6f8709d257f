// Acceptance gate: nine end-to-end checks covering backend agreement, the
// Paley-Wiener anchor, the canonical system, kernel positivity, the
// recovery and measure roundtrips, the large-argument law, the corrected
// family, and the special-function identities. Each check prints a single
// PASS/FAIL line with its measured extremal value; the process exit status
// is the number of failed checks.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdarg>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "hbpow/canonical.hpp"
#include "hbpow/hamiltonian.hpp"
#include "hbpow/measures.hpp"
#include "hbpow/recurrence.hpp"
#include "hbpow/spaces.hpp"
#include "hbpow/specfun.hpp"
#include "testutil.hpp"

namespace {

using hbpow::Backend;
using hbpow::Complex;
using hbpow::EntirePair;
using hbpow::ParamPair;
using hbpow::PointSet;
using hbpow::PowerMeasure;
using hbpow::Tolerance;

constexpr double kPi = 3.14159265358979323846;

std::string format(const char* fmt, ...) {
  char buf[512];
  va_list args;
  va_start(args, fmt);
  std::vsnprintf(buf, sizeof buf, fmt, args);
  va_end(args);
  return buf;
}

double rel_err(Complex got, Complex want) {
  return std::abs(got - want) / (1.0 + std::abs(want));
}

// PSD matrix R(theta) diag(l1, l2) R(theta)^T with eigenvalues in (0, 2],
// so the spectral norm stays <= 2 and sqrt(det P) |z| stays <= 20 on the
// sampled disk; the series order then remains well inside its budget.
ParamPair random_bounded_params(std::mt19937_64& rng, bool rank_one) {
  const double p = testutil::uniform(rng, -0.49, 3.0);
  const double theta = testutil::uniform(rng, 0.0, kPi);
  const double l1 = testutil::uniform(rng, 0.01, 2.0);
  const double l2 = rank_one ? 0.0 : testutil::uniform(rng, 0.01, l1);
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const double k1 = c * c * l1 + s * s * l2;
  const double k2 = s * s * l1 + c * c * l2;
  const double k3 = c * s * (l1 - l2);
  const double psi = testutil::uniform(rng, -3.0, 3.0);
  return ParamPair(p, k1, k2, k3, psi);
}

// n pairwise separated points in the disk of the given radius.
std::vector<Complex> distinct_points(std::mt19937_64& rng, int n,
                                     double radius) {
  std::vector<Complex> pts;
  while (int(pts.size()) < n) {
    const Complex z = testutil::random_disk(rng, radius);
    bool fresh = true;
    for (const Complex& w : pts) fresh = fresh && std::abs(z - w) > 1e-3;
    if (fresh) pts.push_back(z);
  }
  return pts;
}

bool fields_close(const ParamPair& x, const ParamPair& y, double tol) {
  const auto close = [tol](double a, double b) {
    return std::abs(a - b) <= tol * (1.0 + std::abs(b));
  };
  return close(x.p, y.p) && close(x.kappa1, y.kappa1) &&
         close(x.kappa2, y.kappa2) && close(x.kappa3, y.kappa3) &&
         close(x.psi, y.psi);
}

bool measures_componentwise_equal(const PowerMeasure& a,
                                  const PowerMeasure& b) {
  const auto close = [](double x, double y) {
    return std::abs(x - y) <= 1e-8 * (std::abs(x) + std::abs(y) + 1e-300);
  };
  return a.exponent == b.exponent && close(a.mu_plus, b.mu_plus) &&
         close(a.mu_minus, b.mu_minus);
}

// 1. Series and closed-form evaluation agree on random parameter sets.
bool check_backend_agreement(std::string& detail) {
  std::mt19937_64 rng(9001);
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const ParamPair params = random_bounded_params(rng, trial % 10 == 9);
    const EntirePair series(params, Backend::Series);
    const EntirePair closed(params, Backend::Closed);
    for (int j = 0; j < 20; ++j) {
      const Complex z = testutil::random_disk(rng, 10.0);
      const auto [as, bs] = series.values(z);
      const auto [ac, bc] = closed.values(z);
      const double res = std::max(std::abs(as - ac), std::abs(bs - bc)) /
                         (1.0 + std::abs(ac) + std::abs(bc));
      worst = std::max(worst, res);
    }
  }
  detail = format("max residual %.3g over 200 draws x 20 points", worst);
  return worst <= 1e-8;
}

// 2. The flat parameter set gives cosine and sine, the flat measure, and a
// Weyl coefficient with constant imaginary part 1.
bool check_paley_wiener(std::string& detail) {
  const ParamPair flat(0.0, 1.0, 1.0, 0.0, 0.0);
  // The 1e-12 target is absolute while |cos z| grows like e^{|Im z|}, so
  // sample a moderate disk and evaluate with a tightened series tail.
  const EntirePair pair(flat, Backend::Series, Tolerance{1e-15, 4096});
  std::mt19937_64 rng(9002);
  double worst_pair = 0.0;
  for (int i = 0; i < 50; ++i) {
    const Complex z = testutil::random_disk(rng, 5.0);
    const auto [a, b] = pair.values(z);
    worst_pair = std::max(worst_pair, std::abs(a - std::cos(z)));
    worst_pair = std::max(worst_pair, std::abs(b - std::sin(z)));
  }
  const PowerMeasure m = hbpow::measure_of(flat);
  const double worst_mu = std::max(std::abs(m.mu_plus - 1.0),
                                   std::abs(m.mu_minus - 1.0));
  double worst_q = 0.0;
  for (int i = 0; i < 10; ++i) {
    const Complex z(testutil::uniform(rng, -3.0, 3.0),
                    testutil::uniform(rng, 0.1, 2.0));
    const Complex q = hbpow::q_ec(flat, z, 8.0);
    worst_q = std::max(worst_q, std::abs(q.imag() - 1.0));
  }
  detail = format("pair %.3g, weights %.3g, Im q %.3g", worst_pair, worst_mu,
                  worst_q);
  return worst_pair <= 1e-12 && worst_mu <= 1e-12 && worst_q <= 1e-8;
}

// 3. The solution family solves the canonical system: integral identity,
// unimodular multiplicative transfer matrices, and family = (A, B) W.
bool check_canonical_consistency(std::string& detail) {
  std::mt19937_64 rng(9003);
  double worst_int = 0.0;
  for (int i = 0; i < 50; ++i) {
    const ParamPair params = testutil::random_pp(rng);
    const double a = testutil::uniform(rng, 0.3, 1.5);
    const double b = a + testutil::uniform(rng, 0.2, 1.8);
    const Complex z = testutil::random_disk(rng, 3.0);
    worst_int = std::max(worst_int,
                         hbpow::integral_residual(params, a, b, z));
  }

  double worst_det = 0.0;
  double worst_mult = 0.0;
  for (int i = 0; i < 30; ++i) {
    const ParamPair params = testutil::random_pp(rng);
    const double a = testutil::uniform(rng, 0.2, 1.0);
    const double b = a + testutil::uniform(rng, 0.2, 1.5);
    const double c = b + testutil::uniform(rng, 0.2, 2.0);
    const Complex z = testutil::random_disk(rng, 2.5);
    const hbpow::CMat2 wab = hbpow::transfer_matrix(params, a, b, z).w;
    const hbpow::CMat2 wbc = hbpow::transfer_matrix(params, b, c, z).w;
    const hbpow::CMat2 wac = hbpow::transfer_matrix(params, a, c, z).w;
    worst_det = std::max(worst_det, std::abs(wab.det() - 1.0));
    worst_det = std::max(worst_det, std::abs(wac.det() - 1.0));
    const hbpow::CMat2 prod = wab * wbc;
    const double scale = 1.0 + std::abs(wac.m11) + std::abs(wac.m12) +
                         std::abs(wac.m21) + std::abs(wac.m22);
    const double gap = std::max(
        std::max(std::abs(prod.m11 - wac.m11), std::abs(prod.m12 - wac.m12)),
        std::max(std::abs(prod.m21 - wac.m21), std::abs(prod.m22 - wac.m22)));
    worst_mult = std::max(worst_mult, gap / scale);
  }

  double worst_fam = 0.0;
  for (int i = 0; i < 30; ++i) {
    const ParamPair params = testutil::random_pp(rng);
    const double a = testutil::uniform(rng, 0.1, 5.0);
    const Complex z = testutil::random_disk(rng, 2.5);
    const auto [va, vb] = hbpow::solution_family(params, 1.0, z);
    const auto [wa, wb] = hbpow::solution_family(params, a, z);
    const double lo = std::min(1.0, a);
    const double hi = std::max(1.0, a);
    hbpow::CMat2 w = hbpow::transfer_matrix(params, lo, hi, z).w;
    if (a < 1.0) {
      // W(1, a) is the inverse of W(a, 1); the determinant is one.
      w = hbpow::CMat2{w.m22, -w.m12, -w.m21, w.m11};
    }
    const Complex ra = va * w.m11 + vb * w.m21;
    const Complex rb = va * w.m12 + vb * w.m22;
    const double scale = 1.0 + std::abs(wa) + std::abs(wb);
    worst_fam = std::max(worst_fam, std::abs(ra - wa) / scale);
    worst_fam = std::max(worst_fam, std::abs(rb - wb) / scale);
  }

  detail = format("integral %.3g, det %.3g, chain %.3g, family %.3g",
                  worst_int, worst_det, worst_mult, worst_fam);
  return worst_int <= 1e-8 && worst_det <= 1e-8 && worst_mult <= 1e-8 &&
         worst_fam <= 1e-6;
}

// 4. Gram matrices of the kernel are positive semidefinite and the
// homogeneity defect vanishes, both up to -1e-10 times the Gram trace.
bool check_kernel_positivity(std::string& detail) {
  std::mt19937_64 rng(9004);
  double worst_gram = 0.0;    // most negative min-eig / trace ratio
  double worst_defect = 0.0;  // same for the homogeneity defect
  for (int i = 0; i < 100; ++i) {
    const ParamPair params = testutil::random_pp(rng);
    const int n = 3 + int(testutil::uniform(rng, 0.0, 5.999));
    const std::vector<Complex> pts = distinct_points(rng, n, 4.0);
    const EntirePair pair(params, Backend::Closed);
    double trace = 0.0;
    for (const Complex& z : pts) trace += hbpow::kernel(pair, z, z).real();
    const PointSet set(pts);
    const double gram = hbpow::gram_min_eig(pair, set);
    worst_gram = std::max(worst_gram, -gram / trace);
    const double a = testutil::uniform(rng, 1e-3, 1.0);
    const double defect =
        hbpow::homogeneity_defect(pair, params.p, a, set);
    worst_defect = std::max(worst_defect, -defect / trace);
  }
  detail = format("gram -min/trace %.3g, defect -min/trace %.3g", worst_gram,
                  worst_defect);
  return worst_gram <= 1e-10 && worst_defect <= 1e-10;
}

// 5. Parameter recovery inverts the recurrence, the canonical forms are
// idempotent representatives, and equivalent parameters share one kernel.
bool check_recovery_canonicalization(std::string& detail) {
  std::mt19937_64 rng(9005);
  double worst_rec = 0.0;
  bool roundtrip_ok = true;
  for (int i = 0; i < 100; ++i) {
    const ParamPair params = testutil::random_pp(rng);
    const hbpow::CoeffSeq coeffs = hbpow::solve_recurrence(params, 8);
    const ParamPair back = hbpow::recover_params(coeffs, params.p);
    const auto gap = [](double a, double b) {
      return std::abs(a - b) / (1.0 + std::abs(b));
    };
    const double g = std::max(
        std::max(gap(back.kappa1, params.kappa1),
                 gap(back.kappa2, params.kappa2)),
        std::max(gap(back.kappa3, params.kappa3), gap(back.psi, params.psi)));
    worst_rec = std::max(worst_rec, g);
    roundtrip_ok = roundtrip_ok && g <= 1e-10;
  }

  bool canon_ok = true;
  for (int i = 0; i < 40; ++i) {
    const ParamPair x = testutil::random_pp(rng);
    const ParamPair ca = hbpow::canonicalize_approx(x);
    const ParamPair cs = hbpow::canonicalize_simeq(x);
    canon_ok = canon_ok && hbpow::approx_equiv(x, ca);
    canon_ok = canon_ok && hbpow::simeq_equiv(x, cs);
    canon_ok =
        canon_ok && fields_close(hbpow::canonicalize_approx(ca), ca, 1e-12);
    canon_ok =
        canon_ok && fields_close(hbpow::canonicalize_simeq(cs), cs, 1e-12);
  }

  // Within one order and kappa1 != 0 the norm-preserving classes are the
  // shear orbits psi -> psi + 2 p g, kappa3 -> kappa3 + g kappa1, so the
  // shear generates every equivalent pair.
  double worst_kernel = 0.0;
  for (int i = 0; i < 20; ++i) {
    const ParamPair x = testutil::random_pp(rng);
    const ParamPair y = hbpow::gamma_shift(x, testutil::uniform(rng, -2.0, 2.0));
    canon_ok = canon_ok && hbpow::approx_equiv(x, y);
    const EntirePair px(x, Backend::Closed);
    const EntirePair py(y, Backend::Closed);
    for (int j = 0; j < 5; ++j) {
      const Complex z = testutil::random_disk(rng, 3.0);
      const Complex w = testutil::random_disk(rng, 3.0);
      const Complex kx = hbpow::kernel(px, z, w);
      const Complex ky = hbpow::kernel(py, z, w);
      worst_kernel = std::max(worst_kernel,
                              std::abs(kx - ky) / (1.0 + std::abs(kx)));
    }
  }

  detail = format("recover %.3g, canonical forms %s, kernel gap %.3g",
                  worst_rec, canon_ok ? "ok" : "broken", worst_kernel);
  return roundtrip_ok && canon_ok && worst_kernel <= 1e-9;
}

// 6. measure_of inverts params_of_measure, rescaling preserves the
// measure, and the equivalence verdict matches componentwise weights.
bool check_measure_roundtrip(std::string& detail) {
  std::mt19937_64 rng(9006);
  double worst_rt = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double expo = testutil::uniform(rng, -0.9, 5.0);
    double mp = std::pow(10.0, testutil::uniform(rng, -3.0, 3.0));
    double mm = std::pow(10.0, testutil::uniform(rng, -3.0, 3.0));
    if (i % 10 == 3) mp = 0.0;
    if (i % 10 == 7) mm = 0.0;
    const PowerMeasure target(mp, mm, expo);
    const PowerMeasure got =
        hbpow::measure_of(hbpow::params_of_measure(target));
    const auto gap = [](double a, double b) {
      return std::abs(a - b) / (1.0 + std::abs(b));
    };
    worst_rt = std::max(worst_rt, gap(got.mu_plus, target.mu_plus));
    worst_rt = std::max(worst_rt, gap(got.mu_minus, target.mu_minus));
    worst_rt = std::max(worst_rt, gap(got.exponent, target.exponent));
  }

  bool rescale_ok = true;
  for (int i = 0; i < 50; ++i) {
    const ParamPair x = testutil::random_pp(rng);
    const double c = std::exp(testutil::uniform(rng, -1.5, 1.5));
    rescale_ok = rescale_ok &&
                 hbpow::measure_equiv(x, hbpow::rescale_params(x, c));
  }

  int agree = 0;
  for (int i = 0; i < 100; ++i) {
    const ParamPair x = testutil::random_pp(rng);
    ParamPair y = x;
    if (i % 2 == 0) {
      // Constructed equivalent partner: rescale or shear.
      y = i % 4 == 0
              ? hbpow::rescale_params(x, std::exp(testutil::uniform(rng, -1.0, 1.0)))
              : hbpow::gamma_shift(x, testutil::uniform(rng, -1.5, 1.5));
    } else {
      // Independent draw with the same order.
      const ParamPair fresh = testutil::random_pp(rng);
      y = ParamPair(x.p, fresh.kappa1, fresh.kappa2, fresh.kappa3, fresh.psi);
    }
    const bool verdict = hbpow::measure_equiv(x, y);
    const bool weights = measures_componentwise_equal(hbpow::measure_of(x),
                                                      hbpow::measure_of(y));
    if (verdict == weights) ++agree;
  }

  detail = format("roundtrip %.3g, rescale %s, verdict agreement %d/100",
                  worst_rt, rescale_ok ? "ok" : "broken", agree);
  return worst_rt <= 1e-10 && rescale_ok && agree == 100;
}

// 7. Large-argument law: |ratio - 1| <= C / |y| with one constant per
// (delta, p) case across y in {20, 50, 100, 200}, both signs. The fitted
// constant must stay order one; the wrong exp(+-pi delta / 2) branch
// would inflate it past e^pi * 20.
bool check_asymptotic_law(std::string& detail) {
  double worst_c = 0.0;
  double worst_far = 0.0;
  for (const double delta : {0.0, 1.0, -1.0}) {
    for (const double p : {0.0, 0.5, 1.0}) {
      double fit = 0.0;
      for (const double mag : {20.0, 50.0, 100.0, 200.0}) {
        for (const double sign : {1.0, -1.0}) {
          const double r = hbpow::asymptotic_ratio(delta, p, sign * mag);
          fit = std::max(fit, std::abs(r - 1.0) * mag);
          if (mag == 200.0) worst_far = std::max(worst_far, std::abs(r - 1.0));
        }
      }
      worst_c = std::max(worst_c, fit);
    }
  }
  detail = format("fitted C %.3g, residual at |y|=200 %.3g", worst_c,
                  worst_far);
  return worst_c <= 10.0 && worst_far <= 0.05;
}

// 8. The corrected family at p = 0: Hermite-Biehler, homogeneous, with
// genuinely different half-line weights, and a Weyl coefficient whose
// boundary density matches the Poisson integral of the measure.
bool check_corrected_family(std::string& detail) {
  const ParamPair fam(0.0, 1.0, 1.0, 0.0, 1.0);
  const EntirePair pair(fam, Backend::Closed);
  std::mt19937_64 rng(9008);

  std::vector<Complex> upper;
  while (int(upper.size()) < 25) {
    const Complex z(testutil::uniform(rng, -4.0, 4.0),
                    testutil::uniform(rng, 0.05, 3.0));
    bool fresh = true;
    for (const Complex& w : upper) fresh = fresh && std::abs(z - w) > 1e-3;
    if (fresh) upper.push_back(z);
  }
  std::vector<Complex> real_grid;
  for (int i = 0; i < 25; ++i) real_grid.push_back(Complex(-4.0 + i / 3.0));
  const bool hb = hbpow::hb_check(pair, PointSet(upper), PointSet(real_grid));

  const std::vector<Complex> pts = distinct_points(rng, 6, 2.0);
  double worst_defect = 0.0;
  for (const double a : {0.25, 0.6, 0.9}) {
    const double d = hbpow::homogeneity_defect(pair, 0.0, a, PointSet(pts));
    worst_defect = std::max(worst_defect, -d);
  }

  const PowerMeasure m = hbpow::measure_of(fam);
  const double kappa = std::sqrt(fam.det());
  const double want_ratio = std::exp(kPi * fam.sigma() / kappa);
  const double ratio_gap =
      std::abs(m.mu_plus / m.mu_minus - want_ratio) / want_ratio;
  const bool split = m.mu_plus != m.mu_minus;

  double worst_dens = 0.0;
  for (const double x : {2.0, -2.0}) {
    const hbpow::DensityCheck dc = hbpow::density_check(fam, x, 1e-2, 1000.0);
    worst_dens = std::max(worst_dens,
                          std::abs(dc.observed / dc.predicted - 1.0));
  }

  detail = format("hb %s, defect %.3g, weight ratio gap %.3g, density %.3g",
                  hb ? "ok" : "broken", worst_defect, ratio_gap, worst_dens);
  return hb && worst_defect <= 1e-10 && split && ratio_gap <= 1e-8 &&
         worst_dens <= 0.02;
}

// 9. Special-function layer: contiguous relations, the Kummer
// transformation, the derivative relation, the Bessel correspondences,
// and the monotone confluent limit.
bool check_specfun_identities(std::string& detail) {
  std::mt19937_64 rng(9009);
  const Tolerance tight{1e-15, 4096};
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const Complex a(testutil::uniform(rng, -3.0, 3.0),
                    testutil::uniform(rng, -3.0, 3.0));
    const double b = testutil::uniform(rng, 0.3, 6.0);
    const Complex w(testutil::uniform(rng, -3.0, 3.0),
                    testutil::uniform(rng, -3.0, 3.0));

    const Complex m_ab = hbpow::kummer_m({a, b, w}, tight);
    const Complex m_a1b1 = hbpow::kummer_m({a + 1.0, b + 1.0, w}, tight);
    const Complex m_ab1 = hbpow::kummer_m({a, b + 1.0, w}, tight);
    const Complex m_a1b2 = hbpow::kummer_m({a + 1.0, b + 2.0, w}, tight);
    const Complex lhs1 = b * m_ab - a * m_a1b1 + (a - Complex(b)) * m_ab1;
    const Complex lhs2 = m_ab1 - m_a1b1 + (w / (b + 1.0)) * m_a1b2;
    worst = std::max(worst, std::abs(lhs1) / (1.0 + std::abs(m_ab)));
    worst = std::max(worst, std::abs(lhs2) / (1.0 + std::abs(m_ab1)));

    const Complex refl = std::exp(w) * hbpow::kummer_m({Complex(b) - a, b, -w}, tight);
    worst = std::max(worst, rel_err(m_ab, refl));

    // d/dx M(a, b, x) = (a / b) M(a+1, b+1, x), fourth-order stencil.
    const double x = testutil::uniform(rng, -2.0, 2.0);
    const double h = 1e-5;
    const Complex num =
        (8.0 * (hbpow::kummer_m({a, b, Complex(x + h)}, tight) -
                hbpow::kummer_m({a, b, Complex(x - h)}, tight)) -
         (hbpow::kummer_m({a, b, Complex(x + 2 * h)}, tight) -
          hbpow::kummer_m({a, b, Complex(x - 2 * h)}, tight))) /
        (12.0 * h);
    const Complex want = (a / b) * hbpow::kummer_m({a + 1.0, b + 1.0, Complex(x)}, tight);
    worst = std::max(worst, rel_err(num, want));

    // Bessel correspondences through 0F1; keep Re z > 0 so the principal
    // powers on both sides agree.
    const double nu = testutil::uniform(rng, -0.4, 3.0);
    const Complex z(testutil::uniform(rng, 0.2, 3.0),
                    testutil::uniform(rng, -1.5, 1.5));
    const Complex half = 0.5 * z;
    const Complex front = std::pow(half, nu) / std::exp(hbpow::log_gamma(Complex(nu + 1.0)));
    const Complex j_want = front * hbpow::hyp0f1(nu + 1.0, -0.25 * z * z, tight);
    const Complex i_want = front * hbpow::hyp0f1(nu + 1.0, 0.25 * z * z, tight);
    worst = std::max(worst, rel_err(hbpow::bessel_j(nu, z, tight), j_want));
    worst = std::max(worst, rel_err(hbpow::bessel_i(nu, z, tight), i_want));
  }

  bool limit_ok = true;
  double limit_final = 0.0;
  // The leading deviation of M(alpha, b, z/alpha) from the limit is
  // |z|^2 / (2 alpha b (b+1)) times an e^{|z|} factor, so the 2e-3 cap at
  // alpha = 1000 needs |z| and 1/b of order one.
  for (int i = 0; i < 5; ++i) {
    const double b = testutil::uniform(rng, 1.0, 4.0);
    const Complex z = testutil::random_disk(rng, 1.0);
    const Complex limit = hbpow::hyp0f1(b, z, tight);
    double prev = 1e300;
    for (const double alpha : {10.0, 100.0, 1000.0}) {
      const Complex approx =
          hbpow::kummer_m({Complex(alpha), b, z / alpha}, tight);
      const double err = std::abs(approx - limit);
      limit_ok = limit_ok && err < prev;
      prev = err;
    }
    limit_ok = limit_ok && prev < 2e-3;
    limit_final = std::max(limit_final, prev);
  }

  detail = format("identities %.3g, confluent limit %s (final %.3g)", worst,
                  limit_ok ? "monotone" : "broken", limit_final);
  return worst <= 1e-9 && limit_ok;
}

struct Check {
  const char* name;
  bool (*run)(std::string&);
};

}  // namespace

int main() {
  const Check checks[] = {
      {"backend agreement", check_backend_agreement},
      {"Paley-Wiener anchor", check_paley_wiener},
      {"canonical system consistency", check_canonical_consistency},
      {"kernel positivity and homogeneity", check_kernel_positivity},
      {"recovery and canonicalization", check_recovery_canonicalization},
      {"measure roundtrip and equivalence", check_measure_roundtrip},
      {"large-argument modulus law", check_asymptotic_law},
      {"corrected family", check_corrected_family},
      {"special-function identities", check_specfun_identities},
  };
  int failures = 0;
  for (const Check& check : checks) {
    std::string det;
    bool ok = false;
    try {
      ok = check.run(det);
    } catch (const std::exception& e) {
      det = format("exception: %s", e.what());
    }
    if (!ok) ++failures;
    std::printf("%s  %-34s %s\n", ok ? "PASS" : "FAIL", check.name,
                det.c_str());
  }
  return failures;
}
