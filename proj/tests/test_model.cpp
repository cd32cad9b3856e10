#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "dlmvdr/errors.hpp"
#include "dlmvdr/linalg.hpp"
#include "dlmvdr/model.hpp"
#include "test_util.hpp"

using namespace dlmvdr;
using linalg::cdouble;
using linalg::ComplexMatrix;

TEST_CASE("ula_steering: zero phase and single element") {
  const auto v = model::ula_steering(0.0, 4);
  for (const auto& z : v) CHECK(std::abs(z - cdouble(0.5)) < 1e-15);
  const auto one = model::ula_steering(33.0, 1);
  CHECK(std::abs(one[0] - cdouble(1.0)) < 1e-15);
  CHECK_THROWS_AS(model::ula_steering(0.0, 0), ConfigError);
}

TEST_CASE("ula_steering: 30 degrees gives a quarter-turn per element") {
  const auto v = model::ula_steering(30.0, 8);
  CHECK(std::sqrt(linalg::norm2(v)) == doctest::Approx(1.0).epsilon(1e-14));
  const cdouble ratio = v[1] / v[0];
  const cdouble expected = std::polar(1.0, std::numbers::pi * 0.5);  // sin 30 deg = 1/2
  CHECK(std::abs(ratio - expected) < 1e-12);
}

TEST_CASE("build_spatial: noise only gives the identity") {
  const auto [r0, s] = model::build_spatial(model::UlaSpatial{0.0, {}, 0.0, 1.0}, 5);
  CHECK((r0 - ComplexMatrix::identity(5)).frobenius_norm() < 1e-15);
  CHECK(std::sqrt(linalg::norm2(s)) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("build_spatial: one interferer is a rank-one bump") {
  const double p = 3.5;
  const auto [r0, s] = model::build_spatial(model::UlaSpatial{0.0, {17.0}, p, 1.0}, 6);
  const auto dec = linalg::hermitian_eigen(r0);
  for (std::size_t i = 0; i + 1 < 6; ++i)
    CHECK(dec.eigenvalues[i] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(dec.eigenvalues[5] == doctest::Approx(1.0 + p).epsilon(1e-12));
}

TEST_CASE("build_spatial: three-interferer array scenario") {
  const auto spec = model::UlaSpatial{0.0, {-20.0, 50.0, 55.0}, 10.0, 1.0};
  const auto [r0, s] = model::build_spatial(spec, 20);
  CHECK(r0.is_hermitian());
  CHECK(std::sqrt(linalg::norm2(s)) == doctest::Approx(1.0).epsilon(1e-14));
  // positive definite with noise floor 1: all eigenvalues >= 1
  const auto dec = linalg::hermitian_eigen(r0);
  CHECK(dec.eigenvalues.front() >= 1.0 - 1e-10);
  CHECK(dec.eigenvalues.back() <= 1.0 + 3 * 10.0 + 1e-10);
}

TEST_CASE("build_temporal: identity, exp-Toeplitz, AR(1)") {
  const auto id = model::build_temporal(model::IdentityTemporal{}, 3);
  CHECK((id - ComplexMatrix::identity(3)).frobenius_norm() < 1e-15);

  const auto toe = model::build_temporal(model::ExpToeplitzTemporal{}, 2);
  CHECK(toe(0, 0).real() == doctest::Approx(1.0));
  CHECK(toe(0, 1).real() == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
  CHECK(toe(1, 0).real() == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));

  const auto ar = model::build_temporal(model::Ar1Temporal{0.5}, 2);
  CHECK(ar(0, 0).real() == doctest::Approx(4.0 / 3.0).epsilon(1e-14));
  CHECK(ar(0, 1).real() == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  CHECK(ar(1, 1).real() == doctest::Approx(4.0 / 3.0).epsilon(1e-14));

  CHECK_THROWS_AS(model::build_temporal(model::Ar1Temporal{1.0}, 2), ConfigError);
  CHECK_THROWS_AS(model::build_temporal(model::Ar1Temporal{-1.2}, 2), ConfigError);
}

TEST_CASE("canonicalize: white scenario") {
  model::Scenario sc;
  sc.m = 6;
  sc.n = 8;
  sc.alpha = 1.0;
  sc.mode = model::TrainingMode::supervised;
  sc.spatial = model::UlaSpatial{0.0, {}, 0.0, 1.0};
  sc.temporal = model::IdentityTemporal{};
  const auto cm = model::canonicalize(sc);
  for (double l : cm.lambda) CHECK(l == doctest::Approx(1.0).epsilon(1e-12));
  for (double t : cm.t) CHECK(t == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(cm.u_norm2() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(cm.snr_opt == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(cm.c == doctest::Approx(6.0 / 8.0));
}

TEST_CASE("canonicalize: scaled identity halves the optimal SNR") {
  model::Scenario sc;
  sc.m = 4;
  sc.n = 4;
  sc.alpha = 0.5;
  sc.mode = model::TrainingMode::supervised;
  model::ExplicitSpatial ex;
  ex.r0 = ComplexMatrix(4, 4);
  for (std::size_t i = 0; i < 4; ++i) ex.r0(i, i) = 2.0;
  ex.s.assign(4, cdouble(0.0));
  ex.s[0] = 1.0;
  sc.spatial = ex;
  sc.temporal = model::IdentityTemporal{};
  const auto cm = model::canonicalize(sc);
  CHECK(cm.u_norm2() == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(cm.snr_opt == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("canonicalize: unsupervised rank-one update") {
  model::Scenario sc;
  sc.m = 5;
  sc.n = 10;
  sc.alpha = 1.0;
  sc.mode = model::TrainingMode::unsupervised;
  sc.spatial = model::UlaSpatial{10.0, {}, 0.0, 1.0};
  sc.temporal = model::IdentityTemporal{};
  const auto cm = model::canonicalize(sc);
  // R1 = ss* + I has eigenvalues {1 x (M-1), 2}
  for (std::size_t i = 0; i + 1 < 5; ++i)
    CHECK(cm.lambda[i] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(cm.lambda[4] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(cm.u_norm2() == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(cm.snr_opt == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("canonicalize: snr_opt is unitarily invariant") {
  auto rng = testutil::make_rng(303);
  const auto base_spec = model::UlaSpatial{0.0, {-20.0, 50.0}, 10.0, 1.0};
  const std::size_t m = 8;
  const auto [r0, s] = model::build_spatial(base_spec, m);

  model::Scenario plain;
  plain.m = m;
  plain.n = 16;
  plain.alpha = 0.1;
  plain.spatial = model::ExplicitSpatial{r0, s};
  plain.temporal = model::IdentityTemporal{};
  const double reference = model::canonicalize(plain).snr_opt;

  for (int rep = 0; rep < 5; ++rep) {
    const auto v = testutil::random_unitary(m, rng);
    model::ExplicitSpatial rotated;
    rotated.r0 = v * r0 * v.adjoint();
    // round the rotated matrix back to exactly Hermitian storage
    for (std::size_t i = 0; i < m; ++i) {
      rotated.r0(i, i) = rotated.r0(i, i).real();
      for (std::size_t j = i + 1; j < m; ++j) {
        const cdouble avg = 0.5 * (rotated.r0(i, j) + std::conj(rotated.r0(j, i)));
        rotated.r0(i, j) = avg;
        rotated.r0(j, i) = std::conj(avg);
      }
    }
    rotated.s = v * std::span<const cdouble>(s);
    const double nrm = std::sqrt(linalg::norm2(rotated.s));
    for (auto& z : rotated.s) z /= nrm;

    model::Scenario sc = plain;
    sc.spatial = rotated;
    const auto cm = model::canonicalize(sc);
    CHECK(cm.snr_opt == doctest::Approx(reference).epsilon(1e-10));
    CHECK(cm.u_norm2() == doctest::Approx(reference).epsilon(1e-10));
  }
}

TEST_CASE("canonicalize: supervised and unsupervised norms are linked") {
  auto rng = testutil::make_rng(404);
  for (int rep = 0; rep < 5; ++rep) {
    model::Scenario sc = testutil::array_scenario(10, 20, model::TrainingMode::supervised);
    std::uniform_real_distribution<double> angle(-60.0, 60.0);
    sc.spatial = model::UlaSpatial{angle(rng), {angle(rng), angle(rng)}, 5.0, 1.0};
    const auto sup = model::canonicalize(sc);
    sc.mode = model::TrainingMode::unsupervised;
    const auto uns = model::canonicalize(sc);
    CHECK(sup.u_norm2() == doctest::Approx(sup.snr_opt).epsilon(1e-10));
    CHECK(uns.u_norm2() ==
          doctest::Approx(sup.snr_opt / (1.0 + sup.snr_opt)).epsilon(1e-10));
    for (double l : sup.lambda) CHECK(l > 0.0);
    for (double l : uns.lambda) CHECK(l > 0.0);
  }
}

TEST_CASE("scenario validation rejects bad input") {
  model::Scenario sc = testutil::array_scenario(4, 8, model::TrainingMode::supervised);
  sc.alpha = 0.0;
  CHECK_THROWS_AS(sc.validate(), ConfigError);
  sc.alpha = 0.1;
  sc.spatial = model::UlaSpatial{0.0, {}, 0.0, 0.0};  // zero noise power
  CHECK_THROWS_AS(sc.validate(), ConfigError);

  model::ExplicitSpatial ex;
  ex.r0 = ComplexMatrix::identity(4);
  ex.s = {cdouble(2.0), 0.0, 0.0, 0.0};  // not unit norm
  sc.spatial = ex;
  CHECK_THROWS_AS(sc.validate(), ConfigError);

  ex.s = {cdouble(1.0), 0.0, 0.0, 0.0};
  ex.r0(2, 2) = -1.0;  // Hermitian but not positive definite
  sc.spatial = ex;
  CHECK_THROWS_AS(model::build_spatial(sc.spatial, 4), ConfigError);
}
