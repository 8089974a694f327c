#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "selda/kinematics.hpp"

using namespace selda;

namespace {

JointState resting_state(const RobotParams& p) {
  JointState q;
  q.angles.assign(p.num_segments(), 0.0);
  q.rates.assign(p.num_segments(), 0.0);
  for (int j = 1; j < p.num_segments(); ++j)
    q.angles[j] = p.resting_joint_angles[j - 1];
  return q;
}

}  // namespace

TEST_CASE("straight config B chain reaches the full 520 mm") {
  const RobotParams p = default_params(LegConfig::B);
  JointState q;
  q.angles = {0.0, M_PI, M_PI, M_PI};
  q.rates.assign(4, 0.0);
  const ChainPose pose = forward_kinematics(q, p);
  CHECK(pose.tip.x() == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(pose.tip.y() == doctest::Approx(-0.520));
  CHECK(pose.virtual_leg_length == doctest::Approx(0.520));
}

TEST_CASE("single segment hangs straight down") {
  RobotParams p = default_params(LegConfig::A);
  p.segment_lengths = {0.150};
  p.resting_joint_angles = {};
  JointState q;
  q.angles = {0.0};
  q.rates = {0.0};
  const ChainPose pose = forward_kinematics(q, p);
  CHECK(pose.tip.x() == doctest::Approx(0.0));
  CHECK(pose.tip.y() == doctest::Approx(-0.150));
}

TEST_CASE("config A resting pose matches the leg resting length within 5%") {
  const RobotParams p = default_params(LegConfig::A);
  const ChainPose pose = forward_kinematics(resting_state(p), p);
  CHECK(pose.virtual_leg_length ==
        doctest::Approx(p.leg_resting_length).epsilon(0.05));
}

TEST_CASE("tip distance never exceeds total chain length") {
  const RobotParams p = default_params(LegConfig::B);
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> hip(-1.5, 1.5);
  std::uniform_real_distribution<double> interior(0.3, M_PI);
  for (int i = 0; i < 200; ++i) {
    JointState q;
    q.angles = {hip(rng), interior(rng), interior(rng), interior(rng)};
    q.rates.assign(4, 0.0);
    const ChainPose pose = forward_kinematics(q, p);
    CHECK(pose.virtual_leg_length <= 0.520 + 1e-12);
  }
}

TEST_CASE("joint count mismatch is rejected") {
  const RobotParams p = default_params(LegConfig::B);
  JointState q;
  q.angles = {0.0, M_PI};
  q.rates = {0.0, 0.0};
  CHECK_THROWS_AS(forward_kinematics(q, p), ConfigError);
}

TEST_CASE("biarticular deflection formula") {
  const RobotParams p = default_params(LegConfig::A);
  JointState q = resting_state(p);
  CHECK(biarticular_deflection(q, p) == doctest::Approx(0.0));

  q.angles[1] -= 0.1;  // knee flexed 0.1 rad past rest
  CHECK(biarticular_deflection(q, p) == doctest::Approx(0.003));

  q.angles[1] = p.resting_joint_angles[0] + 0.1;
  q.angles[2] = p.resting_joint_angles[1] - 0.1;
  CHECK(biarticular_deflection(q, p) == doctest::Approx(0.0));
}

TEST_CASE("boom mapping: full revolution travels 9.73 m") {
  BoomState b;
  b.yaw = 2.0 * M_PI;
  const PlanarPose pose = boom_to_plane(b, 1.55);
  CHECK(std::abs(pose.x - 9.73) < 0.01);
}

TEST_CASE("boom mapping point values") {
  BoomState b;
  CHECK(boom_to_plane(b, 1.55).x == doctest::Approx(0.0));
  CHECK(boom_to_plane(b, 1.55).y == doctest::Approx(0.0));
  b.pitch = 0.1;
  CHECK(boom_to_plane(b, 1.55).y == doctest::Approx(0.15474).epsilon(1e-4));
}

TEST_CASE("boom mapping is odd in each angle") {
  BoomState b;
  b.yaw = 0.37;
  b.pitch = 0.21;
  const PlanarPose p1 = boom_to_plane(b, 1.55);
  b.yaw = -0.37;
  b.pitch = -0.21;
  const PlanarPose p2 = boom_to_plane(b, 1.55);
  CHECK(p1.x == doctest::Approx(-p2.x));
  CHECK(p1.y == doctest::Approx(-p2.y));
}

TEST_CASE("boom round trip preserves pose and rates") {
  PlanarPose pose;
  pose.x = 3.2;
  pose.y = 0.4;
  pose.vx = 1.1;
  pose.vy = -0.3;
  const BoomState b = plane_to_boom(pose, 1.55);
  const PlanarPose back = boom_to_plane(b, 1.55);
  CHECK(back.x == doctest::Approx(pose.x));
  CHECK(back.y == doctest::Approx(pose.y));
  CHECK(back.vx == doctest::Approx(pose.vx));
  CHECK(back.vy == doctest::Approx(pose.vy));

  pose.y = 2.0;  // outside the boom's reach
  CHECK_THROWS_AS(plane_to_boom(pose, 1.55), ConfigError);
}

TEST_CASE("link angle chain alternates bend direction") {
  // With every interior angle at pi the chain is straight regardless of
  // the alternation; bending one joint deflects all distal segments the
  // same way, and the next joint bends the opposite way.
  const std::vector<double> straight = link_angles({0.2, M_PI, M_PI, M_PI});
  for (double phi : straight) CHECK(phi == doctest::Approx(0.2));

  const std::vector<double> bent = link_angles({0.0, M_PI - 0.3, M_PI - 0.2, M_PI});
  CHECK(bent[0] == doctest::Approx(0.0));
  CHECK(bent[1] == doctest::Approx(-0.3));
  CHECK(bent[2] == doctest::Approx(-0.3 + 0.2));
  CHECK(bent[3] == doctest::Approx(bent[2]));
}
