#pragma once

#include <Eigen/Core>
#include <vector>

#include "selda/elastics.hpp"
#include "selda/kinematics.hpp"
#include "selda/params.hpp"

namespace selda {

/// Full simulation state. The trunk cannot pitch (boom constraint), so the
/// base has only the two translational coordinates.
struct SimState {
  double x = 0.0, y = 0.0;    // m, hip position in the unrolled plane
  double vx = 0.0, vy = 0.0;  // m/s
  JointState joints;
  SeldaState selda;
  double t = 0.0;             // s
  bool in_contact = false;
  Eigen::Vector2d grf{0.0, 0.0};  // N, ground reaction on the tip
  double hip_torque = 0.0;        // N·m, actuator torque applied this step

  // Cumulative work integrals for energy bookkeeping.
  double actuator_work = 0.0;   // J, hip + ankle motor input
  double damping_work = 0.0;    // J, parasitic joint/motor/stop dissipation
  double contact_work = 0.0;    // J, work done by ground forces on the robot
};

struct ContactPoint {
  Eigen::Vector2d position{0.0, 0.0};  // m, world
  Eigen::Vector2d velocity{0.0, 0.0};  // m/s
  double penetration = 0.0;            // m, >= 0 when in contact
  double anchor_x = 0.0;               // m, tangential anchor at touchdown
};

/// Clamped Kelvin-Voigt normal force with regularized Coulomb friction.
/// Returns the world-frame force (F_t, F_n); never adhesive, F_n >= 0.
Eigen::Vector2d contact_force(const ContactPoint& c, const SimSettings& settings);

/// Planar rigid-body dynamics of the trunk-plus-leg chain with point
/// masses per body, assembled from point-mass Jacobians, plus the ankle
/// motor and transmission states. Fixed-step deterministic integration.
class Dynamics {
 public:
  Dynamics(const RobotParams& params, const SimSettings& settings);

  const RobotParams& params() const { return params_; }
  const SimSettings& settings() const { return settings_; }

  /// Number of generalized coordinates: x, y, and every non-degenerate joint.
  int num_coords() const { return 2 + static_cast<int>(active_joints_.size()); }
  /// Joints with a massless, zero-length distal chain are frozen at rest.
  bool joint_active(int joint_index) const;

  /// Standardized start: interior angles at rest, hip rotated so the tip
  /// hangs straight below it, tip at drop_height above ground, at rest.
  SimState initial_state(double drop_height = 0.005) const;

  /// Generalized accelerations [x, y, joint angles...] under gravity,
  /// elastic, damping, contact, and the given actuator torques (one entry
  /// per joint coordinate: hip first, then interior joints). Frozen joints
  /// report zero. Throws SimulationError on a singular mass matrix.
  Eigen::VectorXd compute_accelerations(
      const SimState& s, const Eigen::VectorXd& applied_joint_torques) const;

  /// Advances one physics step with the configured integrator. hip_torque
  /// is applied as-is (saturate upstream); ankle_command feeds the motor's
  /// first-order torque lag. Throws SimulationError on non-finite state.
  SimState step(const SimState& s, double hip_torque,
                double ankle_command) const;

  /// Contact probe at the distal tip for the current state.
  ContactPoint tip_contact(const SimState& s) const;

  /// Kinetic + gravitational + elastic energy (contact spring excluded;
  /// ground work is tracked separately in SimState::contact_work).
  double total_energy(const SimState& s) const;

  /// Whole-robot center of mass position and velocity.
  void center_of_mass(const SimState& s, Eigen::Vector2d& position,
                      Eigen::Vector2d& velocity) const;

  Eigen::MatrixXd mass_matrix(const SimState& s) const;

 private:
  struct Derivative;

  Derivative evaluate(const SimState& s, double hip_torque) const;
  void chain_geometry(const SimState& s, std::vector<double>& phi,
                      std::vector<double>& phidot) const;
  /// Jacobian (2 x num_coords) of a point sitting on segment `seg` at arc
  /// length `arc` from that segment's proximal joint, plus its velocity
  /// and velocity-product (bias) acceleration.
  void point_kinematics(const std::vector<double>& phi,
                        const std::vector<double>& phidot, int seg, double arc,
                        Eigen::Matrix<double, 2, Eigen::Dynamic>& jac,
                        Eigen::Vector2d& pos, Eigen::Vector2d& vel,
                        Eigen::Vector2d& bias) const;

  RobotParams params_;
  SimSettings settings_;
  std::vector<double> segment_masses_;
  std::vector<int> active_joints_;     // joint indices with a coordinate
  std::vector<int> coord_of_joint_;    // joint index -> coordinate, -1 if frozen
  // d(phi_k)/d(angle_j) for every segment k and joint j.
  std::vector<std::vector<double>> phi_coeff_;
};

}  // namespace selda
