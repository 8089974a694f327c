#include "selda/dynamics.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <sstream>

namespace selda {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kFrictionRegRate = 0.01;  // rad/s, dry-friction rolloff

Eigen::Vector2d link_tangent(double phi) {
  return {-std::cos(phi), std::sin(phi)};
}
}  // namespace

Eigen::Vector2d contact_force(const ContactPoint& c,
                              const SimSettings& settings) {
  if (c.penetration <= 0.0) return Eigen::Vector2d::Zero();
  const double fn = std::max(
      0.0, settings.contact_stiffness * c.penetration -
               settings.contact_damping * c.velocity.y());
  double ft = 0.0;
  if (settings.friction_regularization_velocity > 0.0) {
    ft = -settings.friction_coefficient * fn *
         std::tanh(c.velocity.x() / settings.friction_regularization_velocity);
  }
  return {ft, fn};
}

struct Dynamics::Derivative {
  Eigen::VectorXd qdd;
  double motor_acc = 0.0;
  double motor_torque_rate = 0.0;
  double actuator_power = 0.0;
  double damping_power = 0.0;
  double contact_power = 0.0;
  bool in_contact = false;
  Eigen::Vector2d grf{0.0, 0.0};
};

Dynamics::Dynamics(const RobotParams& params, const SimSettings& settings)
    : params_(params), settings_(settings) {
  params_.validate();
  settings_.validate();
  segment_masses_ = params_.segment_masses();
  const int n = params_.num_segments();

  coord_of_joint_.assign(n, -1);
  for (int j = 0; j < n; ++j) {
    bool frozen = false;
    if (j >= 1) {
      double distal_len = 0.0;
      for (int k = j; k < n; ++k) distal_len += params_.segment_lengths[k];
      frozen = distal_len < 1e-9;
    }
    if (!frozen) {
      coord_of_joint_[j] = 2 + static_cast<int>(active_joints_.size());
      active_joints_.push_back(j);
    }
  }

  // d(phi_k)/d(angle_j): the hip angle shifts every link; interior joint j
  // bends the chain from segment j on, with alternating direction.
  phi_coeff_.assign(n, std::vector<double>(n, 0.0));
  for (int k = 0; k < n; ++k) {
    phi_coeff_[k][0] = 1.0;
    double sign = -1.0;
    for (int j = 1; j < n; ++j) {
      if (k >= j) phi_coeff_[k][j] = -sign;
      sign = -sign;
    }
  }
}

bool Dynamics::joint_active(int joint_index) const {
  return coord_of_joint_[joint_index] >= 0;
}

void Dynamics::chain_geometry(const SimState& s, std::vector<double>& phi,
                              std::vector<double>& phidot) const {
  phi = link_angles(s.joints.angles);
  const int n = params_.num_segments();
  phidot.assign(n, 0.0);
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      phidot[k] += phi_coeff_[k][j] * s.joints.rates[j];
}

void Dynamics::point_kinematics(const std::vector<double>& phi,
                                const std::vector<double>& phidot, int seg,
                                double arc,
                                Eigen::Matrix<double, 2, Eigen::Dynamic>& jac,
                                Eigen::Vector2d& pos, Eigen::Vector2d& vel,
                                Eigen::Vector2d& bias) const {
  const int nq = num_coords();
  jac.setZero(2, nq);
  jac(0, 0) = 1.0;
  jac(1, 1) = 1.0;
  pos.setZero();
  vel.setZero();
  bias.setZero();
  for (int k = 0; k <= seg; ++k) {
    const double w = (k == seg) ? arc : params_.segment_lengths[k];
    if (w == 0.0) continue;
    const Eigen::Vector2d dir = link_direction(phi[k]);
    const Eigen::Vector2d tan = link_tangent(phi[k]);
    pos += w * dir;
    vel += w * phidot[k] * tan;
    bias -= w * phidot[k] * phidot[k] * dir;
    for (int j : active_joints_) {
      const double c = phi_coeff_[k][j];
      if (c != 0.0) jac.col(coord_of_joint_[j]) += w * c * tan;
    }
  }
}

ContactPoint Dynamics::tip_contact(const SimState& s) const {
  std::vector<double> phi, phidot;
  chain_geometry(s, phi, phidot);
  const int last = params_.num_segments() - 1;
  Eigen::Matrix<double, 2, Eigen::Dynamic> jac;
  Eigen::Vector2d pos, vel, bias;
  point_kinematics(phi, phidot, last, params_.segment_lengths[last], jac, pos,
                   vel, bias);
  ContactPoint c;
  c.position = pos + Eigen::Vector2d(s.x, s.y);
  c.velocity = vel + Eigen::Vector2d(s.vx, s.vy);
  c.penetration = std::max(0.0, -c.position.y());
  c.anchor_x = c.position.x();
  return c;
}

Dynamics::Derivative Dynamics::evaluate(const SimState& s,
                                        double hip_torque) const {
  const int n = params_.num_segments();
  const int nq = num_coords();
  std::vector<double> phi, phidot;
  chain_geometry(s, phi, phidot);

  Eigen::MatrixXd mass = Eigen::MatrixXd::Zero(nq, nq);
  Eigen::VectorXd force = Eigen::VectorXd::Zero(nq);
  const double g = settings_.gravity;

  mass(0, 0) += params_.trunk_mass();
  mass(1, 1) += params_.trunk_mass();
  force(1) -= params_.trunk_mass() * g;

  Eigen::Matrix<double, 2, Eigen::Dynamic> jac;
  Eigen::Vector2d pos, vel, bias;
  for (int seg = 0; seg < n; ++seg) {
    const double m = segment_masses_[seg];
    if (m <= 0.0) continue;
    point_kinematics(phi, phidot, seg, 0.5 * params_.segment_lengths[seg], jac,
                     pos, vel, bias);
    mass.noalias() += m * jac.transpose() * jac;
    force.noalias() -= m * jac.transpose() * bias;
    force.noalias() -= m * g * jac.row(1).transpose();
  }

  Derivative d;

  // Hip actuator.
  force(2) += hip_torque;
  d.actuator_power += hip_torque * s.joints.rates[0];

  // Knee cam spring (with its parasitic damping) and biarticular coupling.
  const double alpha = s.joints.angles[1];
  const double alpha_rate = s.joints.rates[1];
  if (joint_active(1)) {
    force(coord_of_joint_[1]) += knee_torque(alpha, alpha_rate, params_);
    d.damping_power += params_.joint_damping * alpha_rate * alpha_rate;
  }
  const double delta_b = biarticular_deflection(s.joints, params_);
  const auto [tau_bk, tau_ba] = biarticular_torques(delta_b, params_);
  if (joint_active(1)) force(coord_of_joint_[1]) += tau_bk;
  if (joint_active(2)) force(coord_of_joint_[2]) += tau_ba;

  // Parasitic damping on the remaining passive joints.
  for (int j = 2; j < n; ++j) {
    if (!joint_active(j)) continue;
    const double rate = s.joints.rates[j];
    force(coord_of_joint_[j]) -= params_.joint_damping * rate;
    d.damping_power += params_.joint_damping * rate * rate;
  }

  // Bearing dry friction (regularized Coulomb) on every joint: negligible
  // at gait speeds but brings small residual oscillations to rest.
  if (params_.joint_friction_torque > 0.0) {
    for (int j = 0; j < n; ++j) {
      if (!joint_active(j)) continue;
      const double rate = s.joints.rates[j];
      const double tau = params_.joint_friction_torque *
                         std::tanh(rate / kFrictionRegRate);
      force(coord_of_joint_[j]) -= tau;
      d.damping_power += tau * rate;
    }
  }

  // Unilateral range-limit stops on the interior joints.
  for (int j = 1; j < n; ++j) {
    if (!joint_active(j)) continue;
    const double a = s.joints.angles[j];
    const double rate = s.joints.rates[j];
    const bool is_foot = params_.has_foot_joint() && j == n - 1;
    const double lo =
        is_foot ? params_.foot_min_angle : params_.min_interior_angle;
    double viol = 0.0;
    if (a > kPi) viol = a - kPi;
    else if (a < lo) viol = a - lo;
    if (viol != 0.0) {
      force(coord_of_joint_[j]) -= params_.joint_stop_stiffness * viol +
                                   params_.joint_stop_damping * rate;
      d.damping_power += params_.joint_stop_damping * rate * rate;
    }
  }

  // SELDA transmission and ankle motor.
  const bool selda_active = params_.has_foot_joint() && joint_active(n - 1);
  if (selda_active) {
    const auto st = selda_torque(s.selda, s.joints.angles[n - 1], params_);
    force(coord_of_joint_[n - 1]) += st.foot;
    // DC-motor speed-torque line: drive torque falls off linearly with
    // speed in the driving direction, reaching zero at no-load speed.
    double drive = s.selda.applied_torque;
    if (params_.motor_no_load_speed > 0.0 && drive != 0.0) {
      const double w =
          s.selda.motor_velocity * (drive >= 0.0 ? 1.0 : -1.0);
      drive *= std::clamp(1.0 - w / params_.motor_no_load_speed, 0.0, 1.0);
    }
    double motor_torque = drive + st.motor_reaction -
                          params_.motor_damping * s.selda.motor_velocity;
    if (s.selda.motor_angle < 0.0) {
      motor_torque -= params_.joint_stop_stiffness * s.selda.motor_angle +
                      params_.joint_stop_damping * s.selda.motor_velocity;
      d.damping_power += params_.joint_stop_damping * s.selda.motor_velocity *
                         s.selda.motor_velocity;
    }
    d.motor_acc = motor_torque / params_.motor_inertia;
    d.actuator_power += drive * s.selda.motor_velocity;
    d.damping_power += params_.motor_damping * s.selda.motor_velocity *
                       s.selda.motor_velocity;
    if (params_.motor_time_constant > 0.0)
      d.motor_torque_rate = (s.selda.commanded_torque - s.selda.applied_torque) /
                            params_.motor_time_constant;
  }

  // Ground contact at the distal tip.
  if (settings_.contact_enabled) {
    ContactPoint cp = tip_contact(s);
    if (cp.penetration > 0.0) {
      const Eigen::Vector2d f = contact_force(cp, settings_);
      const int last = n - 1;
      point_kinematics(phi, phidot, last, params_.segment_lengths[last], jac,
                       pos, vel, bias);
      force.noalias() += jac.transpose() * f;
      d.in_contact = true;
      d.grf = f;
      d.contact_power = f.dot(cp.velocity);
    }
  }

  Eigen::LDLT<Eigen::MatrixXd> ldlt(mass);
  d.qdd = ldlt.solve(force);
  if (ldlt.info() != Eigen::Success || !d.qdd.allFinite()) {
    std::ostringstream msg;
    msg << "mass-matrix solve failed at t=" << s.t << "; state:";
    msg << " x=" << s.x << " y=" << s.y;
    for (double a : s.joints.angles) msg << " q=" << a;
    throw SimulationError(msg.str());
  }
  return d;
}

Eigen::VectorXd Dynamics::compute_accelerations(
    const SimState& s, const Eigen::VectorXd& applied_joint_torques) const {
  const int n = params_.num_segments();
  if (applied_joint_torques.size() != n)
    throw SimulationError("compute_accelerations: need one torque per joint");
  // Only the hip is directly actuated; the interior joints receive their
  // torques through the elastic and transmission laws inside evaluate().
  for (int j = 1; j < n; ++j)
    if (applied_joint_torques(j) != 0.0)
      throw SimulationError(
          "compute_accelerations: interior joints are not directly actuated");
  const Derivative d = evaluate(s, applied_joint_torques(0));
  Eigen::VectorXd out = Eigen::VectorXd::Zero(2 + n);
  out(0) = d.qdd(0);
  out(1) = d.qdd(1);
  for (int j = 0; j < n; ++j)
    if (joint_active(j)) out(2 + j) = d.qdd(coord_of_joint_[j]);
  return out;
}

SimState Dynamics::step(const SimState& s, double hip_torque,
                        double ankle_command) const {
  const int n = params_.num_segments();
  const double dt = settings_.physics_dt;

  SimState cur = s;
  cur.hip_torque = hip_torque;
  cur.selda.commanded_torque = std::clamp(
      ankle_command, -params_.motor_torque_limit, params_.motor_torque_limit);
  if (params_.motor_time_constant <= 0.0)
    cur.selda.applied_torque = cur.selda.commanded_torque;

  SimState next;
  if (settings_.integrator == Integrator::SemiImplicitEuler) {
    const Derivative d = evaluate(cur, hip_torque);
    next = cur;
    next.vx += dt * d.qdd(0);
    next.vy += dt * d.qdd(1);
    next.x += dt * next.vx;
    next.y += dt * next.vy;
    for (int j = 0; j < n; ++j) {
      if (!joint_active(j)) continue;
      const int c = coord_of_joint_[j];
      next.joints.rates[j] += dt * d.qdd(c);
      next.joints.angles[j] += dt * next.joints.rates[j];
    }
    next.selda.motor_velocity += dt * d.motor_acc;
    next.selda.motor_angle += dt * next.selda.motor_velocity;
    if (params_.motor_time_constant > 0.0)
      next.selda.applied_torque += dt * d.motor_torque_rate;
    next.actuator_work += dt * d.actuator_power;
    next.damping_work += dt * d.damping_power;
    next.contact_work += dt * d.contact_power;
    next.in_contact = d.in_contact;
    next.grf = d.grf;
  } else {
    // Classic RK4. Positions advance with the stage state's velocities,
    // velocities with the stage derivative's accelerations.
    auto stage = [&](const SimState& rate_state, const Derivative& k,
                     double h) {
      SimState out = cur;
      out.x += h * rate_state.vx;
      out.y += h * rate_state.vy;
      out.vx += h * k.qdd(0);
      out.vy += h * k.qdd(1);
      for (int j = 0; j < n; ++j) {
        if (!joint_active(j)) continue;
        out.joints.angles[j] += h * rate_state.joints.rates[j];
        out.joints.rates[j] += h * k.qdd(coord_of_joint_[j]);
      }
      out.selda.motor_angle += h * rate_state.selda.motor_velocity;
      out.selda.motor_velocity += h * k.motor_acc;
      if (params_.motor_time_constant > 0.0)
        out.selda.applied_torque += h * k.motor_torque_rate;
      out.actuator_work += h * k.actuator_power;
      out.damping_work += h * k.damping_power;
      out.contact_work += h * k.contact_power;
      return out;
    };
    const Derivative k1 = evaluate(cur, hip_torque);
    const SimState s2 = stage(cur, k1, 0.5 * dt);
    const Derivative k2 = evaluate(s2, hip_torque);
    const SimState s3 = stage(s2, k2, 0.5 * dt);
    const Derivative k3 = evaluate(s3, hip_torque);
    const SimState s4 = stage(s3, k3, dt);
    const Derivative k4 = evaluate(s4, hip_torque);

    const double w = dt / 6.0;
    next = cur;
    next.x += w * (cur.vx + 2 * s2.vx + 2 * s3.vx + s4.vx);
    next.y += w * (cur.vy + 2 * s2.vy + 2 * s3.vy + s4.vy);
    next.vx += w * (k1.qdd(0) + 2 * k2.qdd(0) + 2 * k3.qdd(0) + k4.qdd(0));
    next.vy += w * (k1.qdd(1) + 2 * k2.qdd(1) + 2 * k3.qdd(1) + k4.qdd(1));
    for (int j = 0; j < n; ++j) {
      if (!joint_active(j)) continue;
      const int c = coord_of_joint_[j];
      next.joints.angles[j] +=
          w * (cur.joints.rates[j] + 2 * s2.joints.rates[j] +
               2 * s3.joints.rates[j] + s4.joints.rates[j]);
      next.joints.rates[j] +=
          w * (k1.qdd(c) + 2 * k2.qdd(c) + 2 * k3.qdd(c) + k4.qdd(c));
    }
    next.selda.motor_angle +=
        w * (cur.selda.motor_velocity + 2 * s2.selda.motor_velocity +
             2 * s3.selda.motor_velocity + s4.selda.motor_velocity);
    next.selda.motor_velocity +=
        w * (k1.motor_acc + 2 * k2.motor_acc + 2 * k3.motor_acc + k4.motor_acc);
    if (params_.motor_time_constant > 0.0)
      next.selda.applied_torque +=
          w * (k1.motor_torque_rate + 2 * k2.motor_torque_rate +
               2 * k3.motor_torque_rate + k4.motor_torque_rate);
    next.actuator_work += w * (k1.actuator_power + 2 * k2.actuator_power +
                               2 * k3.actuator_power + k4.actuator_power);
    next.damping_work += w * (k1.damping_power + 2 * k2.damping_power +
                              2 * k3.damping_power + k4.damping_power);
    next.contact_work += w * (k1.contact_power + 2 * k2.contact_power +
                              2 * k3.contact_power + k4.contact_power);
    next.in_contact = k1.in_contact;
    next.grf = k1.grf;
  }
  next.t = s.t + dt;

  next.selda.deflection =
      params_.has_foot_joint() && joint_active(n - 1)
          ? selda_deflection(next.selda.motor_angle, next.joints.angles[n - 1],
                             params_)
          : 0.0;
  next.selda.engaged = selda_pull_torque(next.selda.deflection, params_) > 0.0;

  bool finite = std::isfinite(next.x) && std::isfinite(next.y) &&
                std::isfinite(next.vx) && std::isfinite(next.vy) &&
                std::isfinite(next.selda.motor_angle) &&
                std::isfinite(next.selda.motor_velocity);
  for (int j = 0; j < n; ++j)
    finite = finite && std::isfinite(next.joints.angles[j]) &&
             std::isfinite(next.joints.rates[j]);
  if (!finite) {
    std::ostringstream msg;
    msg << "non-finite state detected at t=" << next.t;
    throw SimulationError(msg.str());
  }
  return next;
}

SimState Dynamics::initial_state(double drop_height) const {
  SimState s;
  const int n = params_.num_segments();
  s.joints.angles.assign(n, 0.0);
  s.joints.rates.assign(n, 0.0);
  for (int j = 1; j < n; ++j)
    s.joints.angles[j] = params_.resting_joint_angles[j - 1];

  // Rotate the whole chain so the tip hangs straight below the hip.
  ChainPose pose = forward_kinematics(s.joints, params_);
  s.joints.angles[0] = -pose.virtual_leg_angle;
  pose = forward_kinematics(s.joints, params_);

  s.x = 0.0;
  s.y = drop_height - pose.tip.y();
  return s;
}

double Dynamics::total_energy(const SimState& s) const {
  const int n = params_.num_segments();
  std::vector<double> phi, phidot;
  chain_geometry(s, phi, phidot);

  double kinetic = 0.5 * params_.trunk_mass() * (s.vx * s.vx + s.vy * s.vy);
  double potential = params_.trunk_mass() * settings_.gravity * s.y;

  Eigen::Matrix<double, 2, Eigen::Dynamic> jac;
  Eigen::Vector2d pos, vel, bias;
  for (int seg = 0; seg < n; ++seg) {
    const double m = segment_masses_[seg];
    if (m <= 0.0) continue;
    point_kinematics(phi, phidot, seg, 0.5 * params_.segment_lengths[seg], jac,
                     pos, vel, bias);
    const Eigen::Vector2d v = vel + Eigen::Vector2d(s.vx, s.vy);
    kinetic += 0.5 * m * v.squaredNorm();
    potential += m * settings_.gravity * (pos.y() + s.y);
  }

  const double k_rot =
      params_.knee_stiffness * params_.knee_cam_radius * params_.knee_cam_radius;
  const double dk = params_.resting_joint_angles[0] - s.joints.angles[1];
  potential += 0.5 * k_rot * dk * dk;
  const double delta_b = biarticular_deflection(s.joints, params_);
  potential += 0.5 * params_.biarticular_stiffness * delta_b * delta_b;

  if (params_.has_foot_joint() && joint_active(n - 1)) {
    kinetic += 0.5 * params_.motor_inertia * s.selda.motor_velocity *
               s.selda.motor_velocity;
    potential += selda_elastic_energy(
        selda_deflection(s.selda.motor_angle, s.joints.angles[n - 1], params_),
        params_);
    if (s.selda.motor_angle < 0.0)
      potential += 0.5 * params_.joint_stop_stiffness * s.selda.motor_angle *
                   s.selda.motor_angle;
  }

  for (int j = 1; j < n; ++j) {
    if (!joint_active(j)) continue;
    const double a = s.joints.angles[j];
    const bool is_foot = params_.has_foot_joint() && j == n - 1;
    const double lo =
        is_foot ? params_.foot_min_angle : params_.min_interior_angle;
    double viol = 0.0;
    if (a > kPi) viol = a - kPi;
    else if (a < lo) viol = a - lo;
    potential += 0.5 * params_.joint_stop_stiffness * viol * viol;
  }

  return kinetic + potential;
}

void Dynamics::center_of_mass(const SimState& s, Eigen::Vector2d& position,
                              Eigen::Vector2d& velocity) const {
  const int n = params_.num_segments();
  std::vector<double> phi, phidot;
  chain_geometry(s, phi, phidot);
  const Eigen::Vector2d base(s.x, s.y);
  const Eigen::Vector2d base_vel(s.vx, s.vy);
  position = params_.trunk_mass() * base;
  velocity = params_.trunk_mass() * base_vel;
  Eigen::Matrix<double, 2, Eigen::Dynamic> jac;
  Eigen::Vector2d pos, vel, bias;
  for (int seg = 0; seg < n; ++seg) {
    const double m = segment_masses_[seg];
    if (m <= 0.0) continue;
    point_kinematics(phi, phidot, seg, 0.5 * params_.segment_lengths[seg], jac,
                     pos, vel, bias);
    position += m * (pos + base);
    velocity += m * (vel + base_vel);
  }
  position /= params_.total_mass;
  velocity /= params_.total_mass;
}

Eigen::MatrixXd Dynamics::mass_matrix(const SimState& s) const {
  const int n = params_.num_segments();
  const int nq = num_coords();
  std::vector<double> phi, phidot;
  chain_geometry(s, phi, phidot);
  Eigen::MatrixXd mass = Eigen::MatrixXd::Zero(nq, nq);
  mass(0, 0) += params_.trunk_mass();
  mass(1, 1) += params_.trunk_mass();
  Eigen::Matrix<double, 2, Eigen::Dynamic> jac;
  Eigen::Vector2d pos, vel, bias;
  for (int seg = 0; seg < n; ++seg) {
    const double m = segment_masses_[seg];
    if (m <= 0.0) continue;
    point_kinematics(phi, phidot, seg, 0.5 * params_.segment_lengths[seg], jac,
                     pos, vel, bias);
    mass.noalias() += m * jac.transpose() * jac;
  }
  return mass;
}

}  // namespace selda
