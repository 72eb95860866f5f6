#include <doctest.h>

#include <cmath>
#include <numbers>

#include "mbw/families.hpp"
#include "mbw/suite.hpp"
#include "mbw/susy_engine.hpp"

using namespace mbw;
using namespace mbw::susy;
using std::numbers::pi;

namespace {

const WellConfig kCfg;

TransformationFunction phi_seed(int m) {
  return {[m](double x, double t) { return phi_n(m, x, t, kCfg); }, kCfg, "phi_" + std::to_string(m)};
}

WaveFunction phi(int n) {
  return [n](double x, double t) { return phi_n(n, x, t, kCfg); };
}

PotentialFunction v0() {
  return [](double x, double t) { return potential_V0(x, t, kCfg); };
}

double rel(Complex a, Complex b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_SUITE("susy_engine") {

TEST_CASE("A1 from the reality condition") {
  CHECK(a1_magnitude(phi_seed(1), 1.0, 0.0) == doctest::Approx(5.0).epsilon(1e-10));
  CHECK(a1_magnitude(phi_seed(1), 0.7, 0.7) == 1.0);
  CHECK(a1_magnitude(phi_seed(2), 0.75, 0.25) == doctest::Approx(2.0).epsilon(1e-10));
  const TransformationFunction mixed{[](double x, double t) { return phi_n(1, x, t, kCfg) + 0.5 * phi_n(2, x, t, kCfg); },
                                     kCfg, "mixed"};
  CHECK_THROWS_AS(a1_magnitude(mixed, 0.5, 0.0), Error);
}

TEST_CASE("first intertwiner") {
  const auto l1 = make_l1(phi_seed(1), 0.0);
  CHECK(rel(apply_L1(l1, phi(2), 2.5, 1.0), chi_n(2, 2.5, 1.0, kCfg)) <= 1e-8);
  CHECK(rel(apply_L1(l1, phi(3), 0.75, 0.5), chi_n(3, 0.75, 0.5, kCfg)) <= 1e-8);
  CHECK(std::abs(apply_L1(l1, phi(1), 1.1, 0.5)) <= 1e-8);
  CHECK(suite::chi_oracle_error(3, 0.5, kCfg) <= 1e-8);

  const auto l1_2 = make_l1(phi_seed(2), 0.0);
  try {
    apply_L1(l1_2, phi(1), 1.5, 0.5);
    FAIL("expected NearNode");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NearNode);
  }
  CHECK_THROWS_AS(apply_L1(l1, phi(2), 1e-6, 0.5), Error);
}

TEST_CASE("partner potential") {
  CHECK(partner_potential(v0(), phi_seed(1), 2.5, 1.0) == doctest::Approx(2 * std::pow(pi / 5, 2)).epsilon(1e-6));
  CHECK(partner_potential(v0(), phi_seed(1), 0.5, 0.25) == doctest::Approx(pi * pi).epsilon(1e-6));
  const TransformationFunction plane{[](double x, double t) { return std::polar(1.0, 2 * x - 4 * t); }, kCfg, "plane"};
  CHECK(std::abs(partner_potential(v0(), plane, 0.5, 0.25)) <= 1e-8);
  CHECK(suite::v1_oracle_error(0.5, kCfg) <= 1e-6);
}

TEST_CASE("1-SUSY missing state") {
  const auto u = phi_seed(1);
  const auto l1 = make_l1(u, 0.0);
  CHECK(std::abs(missing_state_1susy(u, l1.a1, 1e-6, 0.5)) > 1e4);
  const TransformationFunction unit{[](double x, double) { return std::polar(1.0, x); }, kCfg, "unit"};
  CHECK(std::abs(missing_state_1susy(unit, [](double) { return 1.0; }, 0.3, 0.5)) == doctest::Approx(1.0));

  const WaveFunction eps = [&](double x, double t) { return missing_state_1susy(u, l1.a1, x, t); };
  const PotentialFunction v1 = [](double x, double t) { return potential_V1(x, t, kCfg); };
  const double probe[] = {1.0 / 3};
  const auto study = suite::residual_study(eps, v1, 0.5, kCfg, suite::kResidualSteps, probe);
  CHECK(study.finest_relative <= 1e-6);
}

TEST_CASE("confluent weight and v") {
  const auto u = phi_seed(2);
  for (double omega : {0.4, -1.0, 0.0, 3.0}) {
    CHECK(confluent_weight(u, omega, 3.0, 0.5) == doctest::Approx(omega + 1.0).epsilon(1e-12));
  }
  const auto l1 = make_l1(u, 0.0);
  const ConfluentConfig zero(2, 0.0);
  // w ~ x^3 and u ~ x near the fixed wall, so v -> 0.
  CHECK(std::abs(confluent_v(u, zero, l1.a1, 1e-3, 0.5)) < 1e-5);
  CHECK_THROWS_AS(confluent_v(u, zero, l1.a1, 1.5, 0.5), Error);

  // v solves the first partner equation (node of phi_2 at l/2 avoided).
  const ConfluentConfig cc(2, 0.4);
  const WaveFunction v = [&](double x, double t) { return confluent_v(u, cc, l1.a1, x, t); };
  const PotentialFunction v1 = [&](double x, double t) { return ExtendedReal::finite(partner_potential(v0(), u, x, t)); };
  const double probe[] = {1.0 / 3};
  const auto study = suite::residual_study(v, v1, 0.5, kCfg, suite::kResidualSteps, probe);
  CHECK(study.finest_relative <= 1e-6);
}

TEST_CASE("confluent potential") {
  CHECK(suite::v2_oracle_error(ConfluentConfig(2, 0.4), 0.25, kCfg) <= 1e-6);
  const auto u2 = phi_seed(2);
  double worst = 0.0;
  for (int i = 1; i < 50; ++i) {
    worst = std::max(worst, std::abs(confluent_potential(v0(), u2, ConfluentConfig(2, 1e6), i * 2.0 / 50, 0.25)));
  }
  CHECK(worst <= 1e-4);
  const auto u1 = phi_seed(1);
  const ConfluentConfig zero(1, 0.0);
  for (double f : {0.05, 0.3, 0.5, 0.8, 0.95}) {
    const double numeric = confluent_potential(v0(), u1, zero, f * 3.0, 0.5);
    CHECK(std::isfinite(numeric));
    CHECK(numeric == doctest::Approx(potential_V2(f * 3.0, 0.5, kCfg, zero).value()).epsilon(1e-6));
  }
  CHECK_THROWS_AS(confluent_potential(v0(), u1, ConfluentConfig(1, -0.5), 1.5, 0.5), Error);
}

TEST_CASE("second intertwiner") {
  const auto u = phi_seed(2);
  const ConfluentConfig cc(2, 0.4);
  const double t = 0.5;
  const double a1 = a1_magnitude(u, t, 0.0);
  const IntertwinerL1 l1{[a1](double) { return a1; }, u};
  const auto l2 = make_l2(l1, cc);
  const WaveFunction v = [&](double x, double tt) { return l2.v(x, tt); };
  CHECK(std::abs(apply_L2(l2, v, 0.9, t)) <= 1e-8 * std::abs(l2.v(0.9, t)));
  CHECK(suite::xi_oracle_error(3, cc, t, kCfg) <= 1e-8);
  CHECK(suite::xi_oracle_error(1, ConfluentConfig(2, -1.0), 1.0, kCfg) <= 1e-8);
  CHECK(suite::xi_oracle_error(3, cc, t, kCfg, XiCoefficient::AsPrinted) > 1e-3);

  const WaveFunction eps = [&](double x, double tt) { return missing_state_confluent(u, cc, x, tt); };
  CHECK(std::abs(eps(0.9, 0.25) - xi_missing(0.9, 0.25, kCfg, cc)) <= 1e-12);
  const PotentialFunction v2 = [&](double x, double tt) { return potential_V2(x, tt, kCfg, cc); };
  CHECK(suite::residual_study(eps, v2, t, kCfg).finest_relative <= 1e-6);
}

TEST_CASE("reality condition") {
  for (int n = 1; n <= 4; ++n) {
    for (double t : {0.0, 0.5, 1.0}) CHECK(reality_check(phi_seed(n), t) <= 1e-6);
  }
  const TransformationFunction mixed{[](double x, double t) { return phi_n(1, x, t, kCfg) + 0.5 * phi_n(2, x, t, kCfg); },
                                     kCfg, "mixed"};
  CHECK(reality_check(mixed, 0.5) > 1e-3);
  const TransformationFunction real{[](double x, double) { return Complex{std::cosh(x), 0.0}; }, kCfg, "real"};
  CHECK(reality_check(real, 0.5) == 0.0);
}

TEST_CASE("numeric regularity scan") {
  CHECK_NOTHROW(check_confluent_regularity_numeric(phi_seed(2), 0.4, 0.5));
  CHECK_NOTHROW(check_confluent_regularity_numeric(phi_seed(2), 10.0, 0.5));
  CHECK_NOTHROW(check_confluent_regularity_numeric(phi_seed(2), -2.0, 0.5));
  CHECK_THROWS_AS(check_confluent_regularity_numeric(phi_seed(1), -0.5, 0.5), Error);
  CHECK_THROWS_AS(check_confluent_regularity_numeric(phi_seed(2), -0.01, 0.5), Error);
}

}
