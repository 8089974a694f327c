#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "selda/params.hpp"

using namespace selda;

TEST_CASE("config A defaults") {
  const RobotParams p = default_params(LegConfig::A);
  CHECK(p.num_segments() == 3);
  CHECK(p.segment_lengths[0] == doctest::Approx(0.150));
  CHECK(p.segment_lengths[1] == doctest::Approx(0.150));
  CHECK(p.segment_lengths[2] == doctest::Approx(0.150));
  CHECK(p.total_mass == doctest::Approx(1.05));
  CHECK(p.resting_joint_angles.size() == 2);
  CHECK(p.resting_joint_angles[0] == doctest::Approx(130.0 * M_PI / 180.0));
  CHECK(p.resting_joint_angles[1] == doctest::Approx(160.0 * M_PI / 180.0));
  CHECK_FALSE(p.has_foot_joint());
  p.validate();
}

TEST_CASE("config B defaults") {
  const RobotParams p = default_params(LegConfig::B);
  CHECK(p.num_segments() == 4);
  CHECK(p.segment_lengths[3] == doctest::Approx(0.070));
  CHECK(p.total_mass == doctest::Approx(1.20));
  CHECK(p.has_foot_joint());
  CHECK(p.foot_rest_angle() == doctest::Approx(M_PI));
  p.validate();
}

TEST_CASE("mass distribution: trunk share plus length-proportional segments") {
  const RobotParams a = default_params(LegConfig::A);
  CHECK(a.trunk_mass() == doctest::Approx(0.8 * 1.05));
  const auto ma = a.segment_masses();
  REQUIRE(ma.size() == 3);
  // Equal lengths share the remaining 20% equally.
  for (double m : ma) CHECK(m == doctest::Approx(0.2 * 1.05 / 3.0));

  const RobotParams b = default_params(LegConfig::B);
  const auto mb = b.segment_masses();
  REQUIRE(mb.size() == 4);
  const double leg_mass = 0.2 * 1.20;
  const double total_len = 0.15 * 3 + 0.07;
  CHECK(mb[0] == doctest::Approx(leg_mass * 0.15 / total_len));
  CHECK(mb[3] == doctest::Approx(leg_mass * 0.07 / total_len));
  double sum = b.trunk_mass();
  for (double m : mb) sum += m;
  CHECK(sum == doctest::Approx(b.total_mass));
}

TEST_CASE("hip torque limit is gear ratio times rated motor torque") {
  const RobotParams p = default_params(LegConfig::B);
  CHECK(p.hip_torque_limit() == doctest::Approx(5.0 * 1.3));
  CHECK(p.hip_torque_limit() == doctest::Approx(6.5));
}

TEST_CASE("validation rejects bad parameters") {
  RobotParams p = default_params(LegConfig::A);
  p.total_mass = -1.0;
  CHECK_THROWS_AS(p.validate(), ConfigError);

  p = default_params(LegConfig::A);
  p.resting_joint_angles.pop_back();
  CHECK_THROWS_AS(p.validate(), ConfigError);

  p = default_params(LegConfig::A);
  p.trunk_mass_fraction = 1.5;
  CHECK_THROWS_AS(p.validate(), ConfigError);

  p = default_params(LegConfig::B);
  p.segment_lengths[0] = -0.1;
  CHECK_THROWS_AS(p.validate(), ConfigError);
}

TEST_CASE("settings validation and substep count") {
  SimSettings s;
  s.validate();
  CHECK(s.substeps_per_control_tick() == 100);

  s.control_dt = 1.5e-5;  // not an integer multiple of physics_dt
  CHECK_THROWS_AS(s.validate(), ConfigError);

  s = SimSettings{};
  s.physics_dt = 0.0;
  CHECK_THROWS_AS(s.validate(), ConfigError);

  s = SimSettings{};
  s.friction_regularization_velocity = 0.0;
  CHECK_THROWS_AS(s.validate(), ConfigError);
}
