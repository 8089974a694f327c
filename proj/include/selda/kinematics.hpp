#pragma once

#include <Eigen/Core>
#include <vector>

#include "selda/params.hpp"

namespace selda {

/// Leg joint coordinates. angles[0] is the hip's absolute angle measured
/// from the downward vertical, positive when the leg points behind the
/// vertical axis. The remaining entries are interior joint angles (knee
/// alpha, ankle beta, and for config B the foot joint gamma), each in
/// (0, pi] with pi meaning fully extended.
struct JointState {
  std::vector<double> angles;  // rad
  std::vector<double> rates;   // rad/s
};

/// Boom encoder state: horizontal sweep angle and vertical elevation.
struct BoomState {
  double yaw = 0.0;        // rad, horizontal boom angle
  double pitch = 0.0;      // rad, vertical boom angle
  double yaw_rate = 0.0;   // rad/s
  double pitch_rate = 0.0; // rad/s
};

struct PlanarPose {
  double x = 0.0, y = 0.0;    // m, unrolled plane
  double vx = 0.0, vy = 0.0;  // m/s
};

/// Forward-kinematics result in the hip frame (hip at the origin,
/// x forward, y up).
struct ChainPose {
  std::vector<Eigen::Vector2d> joint_positions;  // hip, knee, ..., tip
  std::vector<double> link_angles;  // absolute angle of each segment
  Eigen::Vector2d tip;
  double virtual_leg_length = 0.0;  // |hip - tip|
  double virtual_leg_angle = 0.0;   // rad from downward vertical, positive behind
};

/// Absolute segment angles from the hip angle and interior joint angles.
/// Segments zigzag: the bend direction alternates at successive joints.
std::vector<double> link_angles(const std::vector<double>& joint_angles);

/// Unit direction of a segment whose absolute angle from the downward
/// vertical is phi (positive behind the vertical axis).
inline Eigen::Vector2d link_direction(double phi) {
  return {-std::sin(phi), -std::cos(phi)};
}

/// Throws ConfigError on a joint/segment count mismatch.
ChainPose forward_kinematics(const JointState& q, const RobotParams& p);

/// Biarticular spring deflection delta_b = r_pk * ((alpha0 - alpha) +
/// (beta0 - beta)). Positive when the leg is flexed past rest; may be
/// negative (bidirectional linear element).
double biarticular_deflection(const JointState& q, const RobotParams& p);

/// Unrolled planar CoM coordinates from boom angles: x = L * yaw (arc
/// length), y = L * sin(pitch). Velocities by the chain rule.
PlanarPose boom_to_plane(const BoomState& b, double boom_radius);

/// Inverse of boom_to_plane; requires |y| < L.
BoomState plane_to_boom(const PlanarPose& pose, double boom_radius);

}  // namespace selda
