#include <doctest.h>

#include <cmath>
#include <numbers>

#include "mbw/core_types.hpp"
#include "mbw/static_box.hpp"

using namespace mbw;
using std::numbers::pi;

TEST_SUITE("static_box") {

TEST_CASE("eigenfunctions") {
  CHECK(psi_static(1, 0.5, 1.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(std::abs(psi_static(2, 0.5, 1.0)) < 1e-15);
  CHECK(psi_static(3, 0.0, 1.0) == 0.0);
  CHECK(psi_static(1, -0.1, 1.0) == 0.0);
  CHECK(psi_static(1, 1.1, 1.0) == 0.0);
  CHECK_THROWS_AS(psi_static(0, 0.5, 1.0), Error);
}

TEST_CASE("energies") {
  CHECK(energy_static(1, 1.0) == doctest::Approx(pi * pi).epsilon(1e-15));
  CHECK(energy_static(2, 1.0) == doctest::Approx(4 * pi * pi).epsilon(1e-15));
  CHECK(energy_static(1, 2.0) == doctest::Approx(pi * pi / 4).epsilon(1e-15));
}

}
