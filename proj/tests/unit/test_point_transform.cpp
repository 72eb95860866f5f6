#include <doctest.h>

#include <cmath>
#include <random>

#include "mbw/point_transform.hpp"
#include "mbw/static_box.hpp"

using namespace mbw;

TEST_SUITE("point_transform") {

TEST_CASE("gauge pair values") {
  CHECK(gauge_A(0.0, 1.0) == -1.0);
  CHECK(gauge_A(0.25, 1.0) == -0.5);
  CHECK_THROWS_AS(gauge_A(-0.25, 1.0), Error);
  CHECK(gauge_B(0.0, 1.0, 0.0) == 0.0);
  CHECK(gauge_B(0.0, 1.0, 2.0) == 2.0);
  CHECK(gauge_B(0.25, 2.0, 3.0) == 1.0);
}

TEST_CASE("gauge ODEs and antiderivatives") {
  const GaugePair g(WellConfig(1.3, 2.0, 0.7));
  const double h = 1e-5;
  for (double t : {0.1, 0.5, 2.0}) {
    const double dA = (g.A(t + h) - g.A(t - h)) / (2 * h);
    const double dB = (g.B(t + h) - g.B(t - h)) / (2 * h);
    CHECK(std::abs(dA - 4 * g.A(t) * g.A(t)) < 1e-8);
    CHECK(std::abs(dB - 4 * g.A(t) * g.B(t)) < 1e-8);
    CHECK((g.integral_A(t + h) - g.integral_A(t - h)) / (2 * h) == doctest::Approx(g.A(t)).epsilon(1e-8));
    CHECK((g.integral_exp8A(t + h) - g.integral_exp8A(t - h)) / (2 * h) ==
          doctest::Approx(std::exp(8 * g.integral_A(t))).epsilon(1e-8));
    CHECK((g.integral_B2(t + h) - g.integral_B2(t - h)) / (2 * h) ==
          doctest::Approx(g.B(t) * g.B(t)).epsilon(1e-8));
  }
}

TEST_CASE("map to static coordinate") {
  const WellConfig cfg;
  for (double t : {0.0, 0.3, 1.0, 5.0}) CHECK(map_to_static(wall_position(t, cfg), t, cfg) == doctest::Approx(1.0));
  CHECK(map_to_static(0.0, 5.0, cfg) == 0.0);
  CHECK(map_to_static(1.0, 0.25, cfg) == 0.5);
}

TEST_CASE("lifted wavefunction") {
  const WellConfig cfg;
  CHECK(std::abs(lift_wavefunction(1, 0.0, 1.0, cfg)) == 0.0);
  CHECK(std::abs(lift_wavefunction(1, 2.5, 1.0, cfg)) == doctest::Approx(std::sqrt(2.0 / 5.0)).epsilon(1e-14));
  CHECK(std::abs(lift_wavefunction(2, 1.5, 0.5, cfg)) < 1e-15);
  CHECK(lift_wavefunction(1, 6.0, 1.0, cfg) == Complex{});
}

TEST_CASE("moving-frame potential vanishes") {
  const WellConfig cfg;
  CHECK(transformed_potential_residual(0.3, 0.5, cfg) <= 1e-8);
  CHECK(transformed_potential_residual(0.0, 1.0, cfg) <= 1e-12);
  CHECK(transformed_potential_residual(1.7, 0.75, WellConfig(1.0, 2.0, 1.0)) <= 1e-8);
  std::mt19937 rng(20261019);
  std::uniform_real_distribution<double> ut(0.0, 3.0), ux(0.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    const double t = ut(rng);
    CHECK(transformed_potential_residual(ux(rng) * wall_position(t, cfg), t, cfg) <= 1e-6);
  }
}

}
