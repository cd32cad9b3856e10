#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "dlmvdr/asymptotics.hpp"
#include "dlmvdr/deteq.hpp"
#include "dlmvdr/errors.hpp"
#include "test_util.hpp"

using namespace dlmvdr;
using asymptotics::QuadPowers;

namespace {

constexpr double kX = 0.61803398874989484820;  // root of x^2 + x - 1

struct Solved {
  testutil::DiagonalModel md;
  deteq::DetEq deq;
  asymptotics::FirstOrder first;
};

Solved symmetric_model() {
  Solved s;
  s.md.m = s.md.n = 16;
  s.md.alpha = 1.0;
  s.md.lambda.assign(16, 1.0);
  s.md.t.assign(16, 1.0);
  auto rng = testutil::make_rng(99);
  s.md.u = testutil::random_unit_vector(16, rng);
  s.deq = testutil::solve_model(s.md);
  s.first = asymptotics::abar_bbar(s.md.u, s.deq);
  return s;
}

deteq::DetEq fake_deq(double one_minus_gg) {
  deteq::DetEq d;
  d.one_minus_gg = one_minus_gg;
  d.gamma = 0.5;
  d.gamma_tilde = (1.0 - one_minus_gg) / d.gamma;
  d.eta = {1.0, 0.5, 0.5, 0.5, 0.5};
  d.eta_tilde = {1.0, 0.5, 0.5, 0.5, 0.5};
  d.e = {0.5};
  d.e_tilde = {0.5};
  return d;
}

}  // namespace

TEST_CASE("abar_bbar: symmetric closed forms") {
  const auto s = symmetric_model();
  CHECK(s.first.abar == doctest::Approx(kX).epsilon(1e-10));
  CHECK(s.first.bbar == doctest::Approx(1.0 / std::sqrt(5.0)).epsilon(1e-10));
  CHECK(s.first.u_ek[1] == doctest::Approx(s.first.abar).epsilon(1e-14));
  CHECK(s.first.u_ek[0] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("abar_bbar: coordinate signature extracts one equivalent eigenvalue") {
  testutil::DiagonalModel md;
  md.m = 4;
  md.n = 8;
  md.alpha = 0.7;
  md.lambda = {0.5, 1.0, 1.5, 2.0};
  md.t.assign(8, 1.3);
  md.u.assign(4, 0.0);
  md.u[0] = 1.0;
  const auto deq = testutil::solve_model(md);
  const auto first = asymptotics::abar_bbar(md.u, deq);
  CHECK(first.abar == doctest::Approx(deq.e[0]).epsilon(1e-14));
}

TEST_CASE("first_order_snr: arithmetic and symmetric values") {
  const auto [s1, u1] = asymptotics::first_order_snr(1.0, 2.0);
  CHECK(s1 == doctest::Approx(0.5));
  CHECK(u1 == doctest::Approx(1.0));

  const auto sym = symmetric_model();
  const auto [ss, uu] = asymptotics::first_order_snr(sym.first.abar, sym.first.bbar);
  CHECK(ss == doctest::Approx((3.0 * std::sqrt(5.0) - 5.0) / 2.0).epsilon(1e-10));
  CHECK(uu == doctest::Approx(ss / (1.0 - ss)).epsilon(1e-12));

  CHECK_THROWS_AS(asymptotics::first_order_snr(1.0, 1.0), NumericalError);
  CHECK_THROWS_AS(asymptotics::first_order_snr(-1.0, 2.0), std::invalid_argument);
}

TEST_CASE("variance_components: symmetric closed forms") {
  const auto sym = symmetric_model();
  const auto vc = asymptotics::variance_components(sym.first.u_ek, sym.deq);
  CHECK(std::abs(vc.s) < 1e-10);
  CHECK(std::abs(vc.t) < 1e-10);
  const double x2 = kX * kX;
  const double expected_v =
      2.0 * std::pow(kX, 8.0) - 4.0 * std::pow(kX, 10.0) / (1.0 + x2);
  CHECK(vc.v == doctest::Approx(expected_v).epsilon(1e-10));

  const double lower = asymptotics::v_lower_bound(sym.deq, sym.md.t, sym.md.n);
  CHECK(vc.v >= lower);
  CHECK(lower > 0.0);
}

TEST_CASE("snr_variances: symmetric closed forms") {
  const auto sym = symmetric_model();
  const auto vc = asymptotics::variance_components(sym.first.u_ek, sym.deq);
  const auto [s2, u2] = asymptotics::snr_variances(sym.first.u_ek, sym.deq, vc.v);
  CHECK(s2 == doctest::Approx(vc.v).epsilon(1e-10));
  const double base = 2.0 - 3.0 * kX;  // 1 - (3x - 1)
  CHECK(u2 == doctest::Approx(vc.v / std::pow(base, 4.0)).epsilon(1e-10));
  CHECK(u2 >= s2);
}

TEST_CASE("sigma_matrix: symmetric closed forms") {
  const auto sym = symmetric_model();
  const auto sig = asymptotics::sigma_matrix(sym.first.u_ek, sym.deq);
  const double x4 = std::pow(kX, 4.0);
  CHECK(sig.saa == doctest::Approx(std::pow(kX, 6.0) / (1.0 - x4)).epsilon(1e-10));
  const double expected_sab = 2.0 * std::pow(kX, 7.0) / std::pow(1.0 - x4, 2.0) -
                              std::pow(kX, 10.0) / std::pow(1.0 - x4, 3.0);
  CHECK(sig.sab == doctest::Approx(expected_sab).epsilon(1e-10));
  CHECK(sig.saa > 0.0);
  CHECK(sig.saa * sig.sbb - sig.sab * sig.sab > 0.0);
}

TEST_CASE("clt_coefficients: arithmetic, symmetric and the ratio identity") {
  const auto c = asymptotics::clt_coefficients(1.0, 2.0);
  CHECK(c.a_s == doctest::Approx(1.0));
  CHECK(c.b_s == doctest::Approx(-0.25));
  CHECK(c.a_u == doctest::Approx(4.0));
  CHECK(c.b_u == doctest::Approx(-1.0));

  const auto sym = symmetric_model();
  const auto cs = asymptotics::clt_coefficients(sym.first.abar, sym.first.bbar);
  CHECK(cs.a_s == doctest::Approx(2.0 * kX * std::sqrt(5.0)).epsilon(1e-10));
  CHECK(cs.b_s == doctest::Approx(-5.0 * kX * kX).epsilon(1e-10));
  const double ratio = -2.0 * sym.first.bbar / sym.first.abar;
  CHECK(cs.a_s / cs.b_s == doctest::Approx(ratio).epsilon(1e-12));
  CHECK(cs.a_u / cs.b_u == doctest::Approx(ratio).epsilon(1e-12));
}

TEST_CASE("quadratic_form_variance: basis vectors and MSE expansion") {
  const asymptotics::SigmaMatrix sig{2.0, 0.5, 3.0};
  CHECK(asymptotics::quadratic_form_variance(1.0, 0.0, sig) == doctest::Approx(2.0));
  CHECK(asymptotics::quadratic_form_variance(0.0, 1.0, sig) == doctest::Approx(3.0));
  const auto [mse_bar, mse_var] = asymptotics::mse_prediction(1.0, 2.0, sig);
  CHECK(mse_bar == doctest::Approx(1.0));
  CHECK(mse_var == doctest::Approx(4.0 * sig.saa - 4.0 * sig.sab + sig.sbb));
}

TEST_CASE("mse_prediction: symmetric closed form") {
  const auto sym = symmetric_model();
  const auto sig = asymptotics::sigma_matrix(sym.first.u_ek, sym.deq);
  const auto [mse_bar, mse_var] = asymptotics::mse_prediction(sym.first.abar, sym.first.bbar, sig);
  CHECK(mse_bar == doctest::Approx(1.0 - 2.0 * kX + 1.0 / std::sqrt(5.0)).epsilon(1e-10));
  CHECK(mse_var > 0.0);
}

TEST_CASE("dual-route variance identity on 200 random models") {
  auto rng = testutil::make_rng(314159);
  for (int rep = 0; rep < 200; ++rep) {
    const auto md = testutil::random_diagonal_model(rng);
    const auto deq = testutil::solve_model(md);
    const auto first = asymptotics::abar_bbar(md.u, deq);
    const auto vc = asymptotics::variance_components(first.u_ek, deq);
    const auto [s2, u2] = asymptotics::snr_variances(first.u_ek, deq, vc.v);
    const auto sig = asymptotics::sigma_matrix(first.u_ek, deq);
    const auto c = asymptotics::clt_coefficients(first.abar, first.bbar);

    const double s2_route = asymptotics::quadratic_form_variance(c.a_s, c.b_s, sig);
    const double u2_route = asymptotics::quadratic_form_variance(c.a_u, c.b_u, sig);
    CHECK(std::abs(s2 - s2_route) <= 1e-9 * s2);
    CHECK(std::abs(u2 - u2_route) <= 1e-9 * u2);

    // structural invariants on every model
    CHECK(vc.v > 0.0);
    CHECK(vc.v >= asymptotics::v_lower_bound(deq, md.t, md.n) * (1.0 - 1e-12));
    CHECK(sig.saa > 0.0);
    CHECK(sig.saa * sig.sbb - sig.sab * sig.sab > 0.0);
    CHECK(u2 >= s2);

    const auto [snr_s, snr_u] = asymptotics::first_order_snr(first.abar, first.bbar);
    CHECK(snr_s > 0.0);
    CHECK(snr_u == doctest::Approx(snr_s / (1.0 - snr_s)).epsilon(1e-12));

    // Cauchy-Schwarz chain on the quadratic-form powers
    CHECK(first.u_ek[2] * first.u_ek[4] >= first.u_ek[3] * first.u_ek[3] * (1.0 - 1e-12));
    CHECK(first.u_ek[1] * first.u_ek[3] >= first.u_ek[2] * first.u_ek[2] * (1.0 - 1e-12));
  }
}

TEST_CASE("corrupt inputs are refused") {
  // quartic base <= 0 means bbar <= abar^2 upstream
  QuadPowers bad{1.0, 10.0, 1.0, 1.0, 1.0};
  CHECK_THROWS_AS(asymptotics::snr_variances(bad, fake_deq(0.5), 1.0), NumericalError);
  CHECK_THROWS_AS(asymptotics::clt_coefficients(2.0, 4.0), std::invalid_argument);
  CHECK_THROWS_AS(asymptotics::snr_variances(bad, fake_deq(0.5), -1.0),
                  std::invalid_argument);
}
