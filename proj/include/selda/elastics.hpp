#pragma once

#include <utility>
#include <vector>

#include "selda/kinematics.hpp"
#include "selda/params.hpp"

namespace selda {

/// State of the ankle motor and pneumatic transmission. motor_angle is the
/// winding angle at the transmission side, zero at the pre-pressure
/// end-stop and positive in the pull (foot-extension) direction.
struct SeldaState {
  double motor_angle = 0.0;       // rad
  double motor_velocity = 0.0;    // rad/s
  double commanded_torque = 0.0;  // N·m, reference from the controller
  double applied_torque = 0.0;    // N·m, after the first-order lag
  double deflection = 0.0;        // rad, transmission deflection d
  bool engaged = false;           // tendon transmitting pull torque
};

/// Knee cam spring torque about the knee interior angle:
/// tau = k_k * r_k^2 * (alpha0 - alpha) - c * alpha_rate.
double knee_torque(double alpha, double alpha_rate, const RobotParams& p);

/// Biarticular coupling torques (knee, ankle) from a spring deflection.
/// Both joints receive r_pk * k_b * delta, restoring toward rest.
std::pair<double, double> biarticular_torques(double deflection,
                                              const RobotParams& p);

struct SeldaTorques {
  double pull = 0.0;            // N·m, elastic tendon pull (never negative)
  double foot = 0.0;            // N·m on the foot joint, + extends the foot
  double motor_reaction = 0.0;  // N·m back-driving the motor
  double deflection = 0.0;      // rad
};

/// Transmission deflection d = motor_angle + (rest - foot_angle) * ratio:
/// winding the motor and flexing the foot both load the air column.
double selda_deflection(double motor_angle, double foot_angle,
                        const RobotParams& p);

/// Series-elastic transmission law with unilateral tendon and pre-pressure
/// bias. Linear by default; gas-law air spring when selda_isothermal is set.
SeldaTorques selda_torque(const SeldaState& s, double foot_angle,
                          const RobotParams& p);

/// Elastic pull torque at deflection d (0 for d <= 0).
double selda_pull_torque(double deflection, const RobotParams& p);

/// Stored transmission energy at deflection d plus the bias-pressure
/// potential; used by the energy bookkeeping.
double selda_elastic_energy(double deflection, const RobotParams& p);

struct StiffnessCharacterization {
  std::vector<std::pair<double, double>> samples;  // (motor angle, torque)
  double fitted_stiffness = 0.0;                   // N·m/rad, LSQ slope
  double fitted_offset = 0.0;                      // N·m
};

/// Quasi-static stiffness sweep with the foot clamped fully extended,
/// reporting the torque felt at the proximal (motor) side per angle and a
/// least-squares linear fit. Throws ConfigError for fewer than 2 points.
StiffnessCharacterization characterize_stiffness(
    const RobotParams& p, const std::vector<double>& motor_angles);

}  // namespace selda
