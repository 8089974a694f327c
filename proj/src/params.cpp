#include "selda/params.hpp"

#include <cmath>
#include <numeric>

namespace selda {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kDeg = kPi / 180.0;

void require(bool cond, const std::string& msg) {
  if (!cond) throw ConfigError("validation error: " + msg);
}
}  // namespace

std::vector<double> RobotParams::segment_masses() const {
  const double leg_mass = total_mass * (1.0 - trunk_mass_fraction);
  const double total_len =
      std::accumulate(segment_lengths.begin(), segment_lengths.end(), 0.0);
  std::vector<double> masses(segment_lengths.size(), 0.0);
  if (total_len <= 0.0) return masses;
  for (std::size_t i = 0; i < segment_lengths.size(); ++i)
    masses[i] = leg_mass * segment_lengths[i] / total_len;
  return masses;
}

void RobotParams::validate() const {
  require(total_mass > 0.0, "total_mass must be > 0");
  require(trunk_mass_fraction > 0.0 && trunk_mass_fraction <= 1.0,
          "trunk_mass_fraction must be in (0, 1]");
  require(segment_lengths.size() == 3 || segment_lengths.size() == 4,
          "segment_lengths must have 3 (config A) or 4 (config B) entries");
  for (double l : segment_lengths)
    require(l >= 0.0, "segment_lengths entries must be >= 0");
  require(std::accumulate(segment_lengths.begin(), segment_lengths.end(), 0.0) > 0.0,
          "segment_lengths must sum to > 0");
  require(resting_joint_angles.size() == segment_lengths.size() - 1,
          "resting_joint_angles must have one entry per interior joint "
          "(number of segments - 1)");
  for (double a : resting_joint_angles)
    require(a > 0.0 && a <= kPi + 1e-12,
            "resting_joint_angles entries must be in (0, pi]");
  require(knee_stiffness > 0.0, "knee_stiffness must be > 0");
  require(knee_cam_radius > 0.0, "knee_cam_radius must be > 0");
  require(biarticular_stiffness > 0.0, "biarticular_stiffness must be > 0");
  require(biarticular_insertion_radius > 0.0,
          "biarticular_insertion_radius must be > 0");
  require(selda_stiffness > 0.0, "selda_stiffness must be > 0");
  require(selda_bias_torque >= 0.0, "selda_bias_torque must be >= 0");
  require(selda_pulley_radius > 0.0, "selda_pulley_radius must be > 0");
  require(selda_coupling_ratio > 0.0, "selda_coupling_ratio must be > 0");
  require(motor_torque_limit > 0.0, "motor_torque_limit must be > 0");
  require(hip_gear_ratio > 0.0, "hip_gear_ratio must be > 0");
  require(boom_radius > 0.0, "boom_radius must be > 0");
  require(leg_resting_length > 0.0, "leg_resting_length must be > 0");
  require(joint_damping >= 0.0, "joint_damping must be >= 0");
  require(motor_inertia > 0.0, "motor_inertia must be > 0");
  require(motor_time_constant >= 0.0, "motor_time_constant must be >= 0");
  require(selda_stroke > 0.0, "selda_stroke must be > 0");
}

int SimSettings::substeps_per_control_tick() const {
  return static_cast<int>(std::llround(control_dt / physics_dt));
}

void SimSettings::validate() const {
  require(physics_dt > 0.0, "physics_dt must be > 0");
  require(control_dt > 0.0, "control_dt must be > 0");
  const double ratio = control_dt / physics_dt;
  require(std::abs(ratio - std::llround(ratio)) < 1e-9 && std::llround(ratio) >= 1,
          "control_dt must be a positive integer multiple of physics_dt");
  require(contact_stiffness >= 0.0, "contact_stiffness must be >= 0");
  require(contact_damping >= 0.0, "contact_damping must be >= 0");
  require(friction_coefficient >= 0.0, "friction_coefficient must be >= 0");
  require(friction_regularization_velocity > 0.0,
          "friction_regularization_velocity must be > 0");
  require(duration > 0.0, "duration must be > 0");
}

RobotParams default_params(LegConfig config) {
  RobotParams p;
  p.segment_lengths = {0.150, 0.150, 0.150};
  p.resting_joint_angles = {130.0 * kDeg, 160.0 * kDeg};
  if (config == LegConfig::B) {
    p.total_mass = 1.20;
    p.segment_lengths.push_back(0.070);
    p.resting_joint_angles.push_back(kPi);  // foot rests fully extended
  }
  return p;
}

}  // namespace selda
