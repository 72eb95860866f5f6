#include <doctest.h>

#include "mbw/core_types.hpp"

using namespace mbw;

TEST_SUITE("core_types") {

TEST_CASE("wall positions") {
  const WellConfig cfg;
  CHECK(wall_position(0.0, cfg) == 1.0);
  CHECK(wall_position(0.25, cfg) == 2.0);
  CHECK(wall_position(1.0, cfg) == 5.0);
  CHECK(fixed_wall_position(cfg) == 0.0);
  CHECK(fixed_wall_position(WellConfig(1.0, 1.0, 2.0)) == 1.0);
  CHECK(fixed_wall_position(WellConfig(1.0, 1.0, -4.0)) == -2.0);
}

TEST_CASE("singular and inadmissible times") {
  const WellConfig cfg;
  try {
    wall_position(-0.25, cfg);
    FAIL("expected SingularTime");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SingularTime);
  }
  try {
    cfg.check_time(-0.3);
    FAIL("expected InadmissibleTime");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InadmissibleTime);
  }
  const WellConfig contracting(1.0, 1.0, 0.0, Branch::Contracting);
  CHECK_NOTHROW(contracting.check_time(-0.5));
  CHECK_THROWS_AS(contracting.check_time(0.0), Error);
  CHECK(wall_position(-0.5, contracting) < 0.0);
}

TEST_CASE("invalid configuration") {
  CHECK_THROWS_AS(WellConfig(0.0, 1.0, 0.0), Error);
  CHECK_THROWS_AS(WellConfig(-1.0, 1.0, 0.0), Error);
  CHECK(WellConfig().is_default_gauge());
  CHECK_FALSE(WellConfig(1.0, 2.0, 0.0).is_default_gauge());
}

TEST_CASE("confluent configuration flags") {
  CHECK(ConfluentConfig(2, 0.4).admissible());
  CHECK(ConfluentConfig(2, -1.0).admissible());
  CHECK(ConfluentConfig(2, 0.0).admissible());
  CHECK(ConfluentConfig(2, 10.0).admissible());
  CHECK_FALSE(ConfluentConfig(2, -0.5).admissible());
  CHECK(ConfluentConfig(2, 0.4).missing_state_normalizable());
  CHECK_FALSE(ConfluentConfig(2, 0.0).missing_state_normalizable());
  CHECK_FALSE(ConfluentConfig(2, -1.0).missing_state_normalizable());
  CHECK(ConfluentConfig(2, 0.4).x0() == 0.0);
  CHECK_THROWS_AS(ConfluentConfig(0, 0.4), Error);
}

TEST_CASE("extended reals") {
  CHECK(ExtendedReal::finite(2.0).value() == 2.0);
  CHECK_FALSE(ExtendedReal::infinite().is_finite());
  CHECK_THROWS_AS(ExtendedReal::infinite().value(), Error);
  CHECK(ExtendedReal::infinite() == ExtendedReal::infinite());
  CHECK_FALSE(ExtendedReal::finite(1.0) == ExtendedReal::infinite());
}

TEST_CASE("sampled field grid") {
  SampledField f(0.5, 0.0, 3.0, std::vector<Complex>(4));
  CHECK(f.n_points() == 4);
  CHECK(f.spacing() == doctest::Approx(1.0));
  CHECK(f.x_at(2) == doctest::Approx(2.0));
  CHECK_THROWS_AS(SampledField(0.5, 1.0, 1.0, std::vector<Complex>(4)), Error);
  CHECK_THROWS_AS(SampledField(0.5, 0.0, 1.0, std::vector<Complex>(1)), Error);
}

}
