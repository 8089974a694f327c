#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace selda {

/// Raised when a config file cannot be parsed or a parameter violates an
/// invariant. The message names the offending key.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Raised when a trial produces a non-finite state or the mass matrix
/// becomes singular. Carries a diagnostic with the simulation time.
class SimulationError : public std::runtime_error {
 public:
  explicit SimulationError(const std::string& msg) : std::runtime_error(msg) {}
};

enum class LegConfig { A, B };

enum class Integrator { SemiImplicitEuler, RK4 };

/// Physical parameters of the boom-mounted leg. All values SI (m, kg, s, N,
/// rad); config files may use annotated units which are converted at load.
struct RobotParams {
  double total_mass = 1.05;          // kg
  double trunk_mass_fraction = 0.8;  // share of total_mass placed at the hip
  std::vector<double> segment_lengths;       // m, proximal to distal
  std::vector<double> resting_joint_angles;  // rad, interior angles, one per
                                             // joint between segments
  double knee_stiffness = 10900.0;             // N/m (k_k)
  double knee_cam_radius = 0.030;              // m   (r_k)
  double biarticular_stiffness = 9800.0;       // N/m (k_b)
  double biarticular_insertion_radius = 0.030; // m   (r_pk)
  double selda_stiffness = 0.15;     // N·m/rad (k_a), measured linear fit
  double selda_bias_torque = 0.15;   // N·m, from line pre-pressurization
  double selda_pulley_radius = 0.030;  // m (r_a)
  double selda_coupling_ratio = 1.0;   // motor rad per foot-joint rad
  double motor_torque_limit = 1.3;     // N·m per motor, rated
  double hip_gear_ratio = 5.0;
  double boom_radius = 1.55;           // m (L)
  double leg_resting_length = 0.408;   // m (l0), calibration target only

  // Model extensions (not on the hardware datasheet; all configurable).
  double joint_damping = 0.002;        // N·m·s/rad at each passive joint
  double motor_inertia = 2.0e-4;       // kg·m², ankle motor at transmission side
  double motor_damping = 0.001;        // N·m·s/rad viscous at the motor
  double motor_time_constant = 0.005;  // s, first-order torque lag (0 = none)
  double motor_no_load_speed = 10.0;   // rad/s at transmission side; drive
                                       // torque falls linearly to 0 at this
                                       // speed (DC motor line, 0 = unlimited)
  bool selda_isothermal = false;       // enable gas-law air-spring model
  double selda_stroke = 3.0;           // rad, isothermal volume-exhaustion deflection
  double joint_friction_torque = 0.05;  // N·m, bearing dry friction per joint
  double joint_stop_stiffness = 500.0;  // N·m/rad, unilateral range-limit springs
  double joint_stop_damping = 1.0;      // N·m·s/rad
  double min_interior_angle = 0.35;    // rad, fold limit for knee/ankle joints
  double foot_min_angle = 2.6;         // rad, foot-joint flexion limit
                                       // (diaphragm travel ~31 deg)

  int num_segments() const { return static_cast<int>(segment_lengths.size()); }
  int num_joints() const { return num_segments(); }  // hip + interior joints
  bool has_foot_joint() const { return num_segments() == 4; }

  double trunk_mass() const { return total_mass * trunk_mass_fraction; }
  /// Non-trunk mass split across segments proportional to length.
  std::vector<double> segment_masses() const;

  /// Hip torque saturation at the joint, after the gearbox.
  double hip_torque_limit() const { return hip_gear_ratio * motor_torque_limit; }

  /// Foot-joint resting (fully extended) interior angle; config B only.
  double foot_rest_angle() const { return resting_joint_angles.back(); }

  /// Throws ConfigError naming the offending field on invariant violation.
  void validate() const;
};

/// Integration and contact settings.
struct SimSettings {
  double physics_dt = 1.0e-5;  // s
  double control_dt = 1.0e-3;  // s, must be an integer multiple of physics_dt
  Integrator integrator = Integrator::SemiImplicitEuler;
  double contact_stiffness = 1.0e5;   // N/m (k_c)
  double contact_damping = 100.0;     // N·s/m (c_c)
  double friction_coefficient = 0.8;  // mu
  double friction_regularization_velocity = 0.05;  // m/s (v_reg)
  double duration = 20.0;  // s
  std::uint64_t seed = 0;  // reserved, unused by the default pipeline
  double gravity = 9.81;   // m/s², settable to 0 for conservation checks
  bool contact_enabled = true;

  int substeps_per_control_tick() const;
  void validate() const;
};

/// Measured hardware defaults for the two leg layouts. A: three 150 mm segments.
/// B: appends the 70 mm SELDA-actuated foot and 0.15 kg.
RobotParams default_params(LegConfig config);

}  // namespace selda
