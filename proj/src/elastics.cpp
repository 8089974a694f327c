#include "selda/elastics.hpp"

#include <cmath>

namespace selda {

double knee_torque(double alpha, double alpha_rate, const RobotParams& p) {
  const double k_rot = p.knee_stiffness * p.knee_cam_radius * p.knee_cam_radius;
  return k_rot * (p.resting_joint_angles[0] - alpha) - p.joint_damping * alpha_rate;
}

std::pair<double, double> biarticular_torques(double deflection,
                                              const RobotParams& p) {
  const double force = p.biarticular_stiffness * deflection;
  const double tau = p.biarticular_insertion_radius * force;
  return {tau, tau};
}

double selda_deflection(double motor_angle, double foot_angle,
                        const RobotParams& p) {
  // Motor winding and foot flexion both displace fluid into the line, so
  // both load the air column.
  const double flexion = p.foot_rest_angle() - foot_angle;
  return motor_angle + flexion * p.selda_coupling_ratio;
}

double selda_pull_torque(double deflection, const RobotParams& p) {
  if (deflection <= 0.0) return 0.0;
  if (!p.selda_isothermal) return p.selda_stiffness * deflection;
  // Isothermal air column: absolute pressure scales with the remaining
  // stroke, P(d) = P0 * s / (s - d). The elastic (above-bias) torque is
  // then k_a * s * d / (s - d), whose slope at d = 0 is exactly k_a.
  const double s = p.selda_stroke;
  const double d = std::min(deflection, 0.999 * s);
  return p.selda_stiffness * s * d / (s - d);
}

SeldaTorques selda_torque(const SeldaState& s, double foot_angle,
                          const RobotParams& p) {
  SeldaTorques out;
  out.deflection = selda_deflection(s.motor_angle, foot_angle, p);
  out.pull = selda_pull_torque(out.deflection, p);
  // The pressurized line always recalls the foot toward its end-stop; the
  // motor works against both the pull and the line pressure.
  out.foot = p.selda_coupling_ratio * (out.pull + p.selda_bias_torque);
  out.motor_reaction = -out.pull - p.selda_bias_torque;
  return out;
}

double selda_elastic_energy(double deflection, const RobotParams& p) {
  double elastic = 0.0;
  if (deflection > 0.0) {
    if (!p.selda_isothermal) {
      elastic = 0.5 * p.selda_stiffness * deflection * deflection;
    } else {
      const double s = p.selda_stroke;
      const double d = std::min(deflection, 0.999 * s);
      elastic = p.selda_stiffness * s * (-d - s * std::log((s - d) / s));
    }
  }
  // Bias potential: the constant line force acts along the transmission
  // coordinate; torque on the motor is -tau_bias, on the foot +tau_bias.
  return elastic + p.selda_bias_torque * deflection;
}

StiffnessCharacterization characterize_stiffness(
    const RobotParams& p, const std::vector<double>& motor_angles) {
  if (motor_angles.size() < 2)
    throw ConfigError("characterize_stiffness: need at least 2 sweep points");
  StiffnessCharacterization out;
  out.samples.reserve(motor_angles.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (double angle : motor_angles) {
    // Foot clamped fully extended: deflection equals the motor angle.
    const double torque = selda_pull_torque(angle, p) + p.selda_bias_torque;
    out.samples.emplace_back(angle, torque);
    sx += angle;
    sy += torque;
    sxx += angle * angle;
    sxy += angle * torque;
  }
  const double n = static_cast<double>(motor_angles.size());
  const double denom = n * sxx - sx * sx;
  if (std::abs(denom) < 1e-15)
    throw ConfigError("characterize_stiffness: sweep angles are degenerate");
  out.fitted_stiffness = (n * sxy - sx * sy) / denom;
  out.fitted_offset = (sy - out.fitted_stiffness * sx) / n;
  return out;
}

}  // namespace selda
