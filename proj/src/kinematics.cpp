#include "selda/kinematics.hpp"

#include <cmath>

namespace selda {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

std::vector<double> link_angles(const std::vector<double>& joint_angles) {
  std::vector<double> phi(joint_angles.empty() ? 1 : joint_angles.size());
  phi[0] = joint_angles.empty() ? 0.0 : joint_angles[0];
  // Knee bends forward (tip ahead of the shank line), ankle back, and so
  // on alternating; this orientation makes the gait advance toward +x.
  double sign = -1.0;
  for (std::size_t j = 1; j < joint_angles.size(); ++j) {
    phi[j] = phi[j - 1] + sign * (kPi - joint_angles[j]);
    sign = -sign;
  }
  return phi;
}

ChainPose forward_kinematics(const JointState& q, const RobotParams& p) {
  const int n = p.num_segments();
  if (static_cast<int>(q.angles.size()) != n)
    throw ConfigError("forward_kinematics: joint state has " +
                      std::to_string(q.angles.size()) + " angles, expected " +
                      std::to_string(n));
  ChainPose out;
  out.link_angles = link_angles(q.angles);
  out.joint_positions.reserve(n + 1);
  Eigen::Vector2d pos = Eigen::Vector2d::Zero();
  out.joint_positions.push_back(pos);
  for (int i = 0; i < n; ++i) {
    pos += p.segment_lengths[i] * link_direction(out.link_angles[i]);
    out.joint_positions.push_back(pos);
  }
  out.tip = pos;
  out.virtual_leg_length = pos.norm();
  // Angle of the hip->tip line from the downward vertical, positive behind.
  out.virtual_leg_angle = std::atan2(-pos.x(), -pos.y());
  return out;
}

double biarticular_deflection(const JointState& q, const RobotParams& p) {
  if (q.angles.size() < 3)
    throw ConfigError("biarticular_deflection: need knee and ankle angles");
  const double alpha = q.angles[1];
  const double beta = q.angles[2];
  const double alpha0 = p.resting_joint_angles[0];
  const double beta0 = p.resting_joint_angles[1];
  return p.biarticular_insertion_radius * ((alpha0 - alpha) + (beta0 - beta));
}

PlanarPose boom_to_plane(const BoomState& b, double boom_radius) {
  PlanarPose pose;
  pose.x = boom_radius * b.yaw;
  pose.y = boom_radius * std::sin(b.pitch);
  pose.vx = boom_radius * b.yaw_rate;
  pose.vy = boom_radius * std::cos(b.pitch) * b.pitch_rate;
  return pose;
}

BoomState plane_to_boom(const PlanarPose& pose, double boom_radius) {
  BoomState b;
  b.yaw = pose.x / boom_radius;
  const double s = pose.y / boom_radius;
  if (std::abs(s) >= 1.0)
    throw ConfigError("plane_to_boom: |y| must be < boom radius");
  b.pitch = std::asin(s);
  b.yaw_rate = pose.vx / boom_radius;
  b.pitch_rate = pose.vy / (boom_radius * std::cos(b.pitch));
  return b;
}

}  // namespace selda
