#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <complex>
#include <random>

#include "doctest.h"
#include "hbpow/canonical.hpp"
#include "hbpow/errors.hpp"
#include "testutil.hpp"

using hbpow::CMat2;
using hbpow::Complex;
using hbpow::ParamPair;

namespace {

const ParamPair kFlat(0.0, 1.0, 1.0, 0.0, 0.0);

double cm_gap(const CMat2& x, const CMat2& y) {
  return std::max({std::abs(x.m11 - y.m11), std::abs(x.m12 - y.m12),
                   std::abs(x.m21 - y.m21), std::abs(x.m22 - y.m22)});
}

double cm_maxabs_proxy(const CMat2& x) {
  return std::max({std::abs(x.m11), std::abs(x.m12), std::abs(x.m21),
                   std::abs(x.m22)});
}

// Parameter sets kept mild enough that |Im z| int ||H|| stays far away from
// overflow over the spans used below.
ParamPair mild_params(std::mt19937_64& rng) {
  return testutil::random_pp(rng, -0.4, 1.2, 1.0);
}

}  // namespace

TEST_CASE("flat hamiltonian generates a rotation") {
  for (double t : {2.0, 5.0}) {
    for (Complex z : {Complex(0.7), Complex(0.4, 0.3), Complex(-1.1, 0.2)}) {
      hbpow::TransferResult res = hbpow::transfer_matrix(kFlat, 1.0, t, z);
      const Complex th = z * (t - 1.0);
      CMat2 want{std::cos(th), std::sin(th), -std::sin(th), std::cos(th)};
      CHECK(cm_gap(res.w, want) < 1e-9 * (1.0 + std::abs(std::cos(th))));
      CHECK(std::abs(res.w.det() - Complex(1.0)) < 1e-10);
      CHECK(res.step_count > 0);
      CHECK(res.est_error < 1e-9);
    }
  }
}

TEST_CASE("transfer fast paths and validation") {
  hbpow::TransferResult same = hbpow::transfer_matrix(kFlat, 2.0, 2.0,
                                                      Complex(1.0, 1.0));
  CHECK(cm_gap(same.w, CMat2::identity()) == 0.0);
  CHECK(same.step_count == 0);

  hbpow::TransferResult zero = hbpow::transfer_matrix(kFlat, 1.0, 7.0,
                                                      Complex(0.0));
  CHECK(cm_gap(zero.w, CMat2::identity()) == 0.0);
  CHECK(zero.step_count == 0);

  CHECK_THROWS_AS(hbpow::transfer_matrix(kFlat, 0.0, 2.0, Complex(1.0)),
                  hbpow::DomainError);
  CHECK_THROWS_AS(hbpow::transfer_matrix(kFlat, 1.0, -2.0, Complex(1.0)),
                  hbpow::DomainError);
}

TEST_CASE("transfer matrices are unimodular and compose") {
  std::mt19937_64 rng(52001);
  for (int k = 0; k < 8; ++k) {
    ParamPair params = mild_params(rng);
    Complex z = testutil::random_disk(rng, 1.5);
    hbpow::TransferResult full =
        hbpow::transfer_matrix(params, 0.7, 3.1, z);
    CHECK(std::abs(full.w.det() - Complex(1.0)) <
          1e-9 * (1.0 + cm_maxabs_proxy(full.w)));

    hbpow::TransferResult first =
        hbpow::transfer_matrix(params, 0.7, 1.6, z);
    hbpow::TransferResult second =
        hbpow::transfer_matrix(params, 1.6, 3.1, z);
    CMat2 composed = first.w * second.w;
    CHECK(cm_gap(full.w, composed) < 1e-8 * (1.0 + cm_maxabs_proxy(full.w)));

    hbpow::TransferResult back = hbpow::transfer_matrix(params, 3.1, 0.7, z);
    CMat2 round = full.w * back.w;
    CHECK(cm_gap(round, CMat2::identity()) <
          1e-8 * (1.0 + cm_maxabs_proxy(full.w)));
  }
}

TEST_CASE("solution family rides the transfer matrix") {
  std::mt19937_64 rng(52002);
  for (int k = 0; k < 8; ++k) {
    ParamPair params = mild_params(rng);
    Complex z = testutil::random_disk(rng, 1.5);
    const double a = 0.8, b = 2.4;
    auto [va, vb] = hbpow::solution_family(params, a, z);
    auto [wa, wb] = hbpow::solution_family(params, b, z);
    hbpow::TransferResult res = hbpow::transfer_matrix(params, a, b, z);
    Complex ra = va * res.w.m11 + vb * res.w.m21;
    Complex rb = va * res.w.m12 + vb * res.w.m22;
    const double scale = 1.0 + std::abs(wa) + std::abs(wb);
    CAPTURE(params.p);
    CHECK(std::abs(ra - wa) < 1e-8 * scale);
    CHECK(std::abs(rb - wb) < 1e-8 * scale);
  }
}

TEST_CASE("solution family normalization and validation") {
  // At a = 1 the family reduces to the base pair (cos, sin here).
  auto [a1, b1] = hbpow::solution_family(kFlat, 1.0, Complex(0.9, 0.2));
  CHECK(std::abs(a1 - std::cos(Complex(0.9, 0.2))) < 1e-12);
  CHECK(std::abs(b1 - std::sin(Complex(0.9, 0.2))) < 1e-12);

  // Flat case at any a: the family is (cos(az), sin(az)).
  auto [a2, b2] = hbpow::solution_family(kFlat, 2.7, Complex(0.9, 0.2));
  CHECK(std::abs(a2 - std::cos(2.7 * Complex(0.9, 0.2))) < 1e-11);
  CHECK(std::abs(b2 - std::sin(2.7 * Complex(0.9, 0.2))) < 1e-11);

  CHECK_THROWS_AS(hbpow::solution_family(kFlat, 0.0, Complex(1.0)),
                  hbpow::DomainError);
  CHECK_THROWS_AS(hbpow::solution_family(kFlat, -1.0, Complex(1.0)),
                  hbpow::DomainError);
}

TEST_CASE("integral identity holds along the family") {
  std::mt19937_64 rng(52003);
  for (int k = 0; k < 6; ++k) {
    ParamPair params = mild_params(rng);
    Complex z = testutil::random_disk(rng, 1.5);
    CAPTURE(params.p);
    CHECK(hbpow::integral_residual(params, 0.6, 2.0, z) < 1e-7);
  }

  // Seed points only refine the partition; the residual stays small.
  hbpow::GridSpec grid;
  grid.points = {1.0, 1.5};
  ParamPair params(0.35, 1.1, 0.8, 0.2, 0.4);
  CHECK(hbpow::integral_residual(params, 0.6, 2.0, Complex(0.8, 0.4), grid) <
        1e-7);

  CHECK_THROWS_AS(hbpow::integral_residual(params, 0.0, 2.0, Complex(1.0)),
                  hbpow::DomainError);
  CHECK_THROWS_AS(hbpow::integral_residual(params, 2.0, 1.0, Complex(1.0)),
                  hbpow::DomainError);
  hbpow::GridSpec bad;
  bad.quad_tol = 0.0;
  CHECK_THROWS_AS(
      hbpow::integral_residual(params, 1.0, 2.0, Complex(1.0), bad),
      hbpow::DomainError);
}

TEST_CASE("weyl coefficient of the flat tail is the constant i") {
  for (Complex z : {Complex(0.3, 0.5), Complex(-1.2, 0.4)}) {
    hbpow::WeylResult res = hbpow::weyl_coefficient(kFlat, 20.0, z);
    CHECK(std::abs(res.q - Complex(0.0, 1.0)) < 1e-9);
    CHECK(res.cauchy_estimate < 1e-9);
  }
  // Lower half-plane values come from the reflection.
  hbpow::WeylResult low =
      hbpow::weyl_coefficient(kFlat, 20.0, Complex(2.0, -0.8));
  CHECK(std::abs(low.q - Complex(0.0, -1.0)) < 1e-9);
}

TEST_CASE("weyl coefficients are herglotz and settle down") {
  const ParamPair cases[] = {
      ParamPair(0.3, 1.2, 0.8, 0.2, 0.5),
      ParamPair(-0.35, 0.7, 1.1, -0.3, -0.8),
      ParamPair(0.0, 1.3, 0.9, 0.3, 0.6),
  };
  const Complex z(0.5, 0.35);
  for (const ParamPair& params : cases) {
    hbpow::WeylResult res = hbpow::weyl_coefficient(params, 14.0, z);
    CAPTURE(params.p);
    CHECK(res.q.imag() > 0.0);
    CHECK(res.cauchy_estimate < 0.05);

    // Reflection symmetry is exact by construction.
    hbpow::WeylResult refl =
        hbpow::weyl_coefficient(params, 14.0, std::conj(z));
    CHECK(refl.q == std::conj(res.q));
  }
}

TEST_CASE("weyl validation") {
  CHECK_THROWS_AS(hbpow::weyl_coefficient(kFlat, 1.5, Complex(0.0, 1.0)),
                  hbpow::DomainError);
  CHECK_THROWS_AS(hbpow::weyl_coefficient(kFlat, 20.0, Complex(1.0, 0.0)),
                  hbpow::DomainError);
  CHECK_THROWS_AS(hbpow::weyl_coefficient(ParamPair(0.5, 1.0, 1.0, 2.0, 0.0),
                                          20.0, Complex(0.0, 1.0)),
                  hbpow::DomainError);
}

TEST_CASE("full model coefficient") {
  // Flat case: the Mobius combination collapses to i as well.
  for (Complex z : {Complex(0.4, 0.6), Complex(-0.9, 0.3)}) {
    Complex q = hbpow::q_ec(kFlat, z, 20.0);
    CHECK(std::abs(q - Complex(0.0, 1.0)) < 1e-8);
  }
  Complex low = hbpow::q_ec(kFlat, Complex(0.4, -0.6), 20.0);
  CHECK(std::abs(low - Complex(0.0, -1.0)) < 1e-8);

  // General members stay in the upper half-plane.
  const ParamPair cases[] = {
      ParamPair(0.3, 1.2, 0.8, 0.2, 0.5),
      ParamPair(-0.35, 0.7, 1.1, -0.3, -0.8),
  };
  for (const ParamPair& params : cases) {
    Complex q = hbpow::q_ec(params, Complex(0.5, 0.35), 14.0);
    CAPTURE(params.p);
    CHECK(q.imag() > -1e-6);
  }
}

TEST_CASE("step control responds to the tolerance") {
  hbpow::Tolerance loose{1e-6, 4096};
  hbpow::Tolerance tight{1e-12, 4096};
  int n_loose =
      hbpow::transfer_matrix(kFlat, 1.0, 6.0, Complex(1.0, 0.5), loose)
          .step_count;
  int n_tight =
      hbpow::transfer_matrix(kFlat, 1.0, 6.0, Complex(1.0, 0.5), tight)
          .step_count;
  CHECK(n_loose < n_tight);
}
