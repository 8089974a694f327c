#include "selda/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <vector>

#include "selda/csv.hpp"

namespace selda {

namespace {

constexpr double kDeg = 3.14159265358979323846 / 180.0;

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

/// Multiplicative factor for an annotated unit suffix. SI units map to 1.
double unit_factor(const std::string& unit, const std::string& key) {
  static const std::map<std::string, double> factors = {
      {"", 1.0},       {"m", 1.0},      {"mm", 1e-3},    {"cm", 1e-2},
      {"kg", 1.0},     {"g", 1e-3},     {"s", 1.0},      {"ms", 1e-3},
      {"Hz", 1.0},     {"rad", 1.0},    {"deg", kDeg},   {"N/m", 1.0},
      {"N/mm", 1e3},   {"Nm", 1.0},     {"N*m", 1.0},    {"Nm/rad", 1.0},
      {"N*m/rad", 1.0},{"Nms/rad", 1.0},{"N*m*s/rad", 1.0},
      {"Ns/m", 1.0},   {"N*s/m", 1.0},  {"m/s", 1.0},    {"rad/s", 1.0},
      {"kg*m^2", 1.0}, {"kgm2", 1.0}};
  const auto it = factors.find(unit);
  if (it == factors.end())
    throw ConfigError("parse error: unknown unit '" + unit + "' for key '" +
                      key + "'");
  return it->second;
}

double parse_scalar(const std::string& value, const std::string& key) {
  std::istringstream ss(value);
  double v = 0.0;
  if (!(ss >> v))
    throw ConfigError("parse error: key '" + key + "' needs a number, got '" +
                      value + "'");
  std::string unit;
  ss >> unit;
  std::string extra;
  if (ss >> extra)
    throw ConfigError("parse error: trailing content after value for key '" +
                      key + "'");
  return v * unit_factor(unit, key);
}

std::vector<double> parse_list(const std::string& value,
                               const std::string& key) {
  // Comma-separated numbers with an optional trailing unit for all entries.
  std::string body = value;
  std::string unit;
  const auto space = value.find_last_of(" \t");
  if (space != std::string::npos) {
    const std::string tail = trim(value.substr(space));
    if (!tail.empty() && !std::isdigit(static_cast<unsigned char>(tail[0])) &&
        tail[0] != '-' && tail[0] != '+' && tail[0] != '.') {
      unit = tail;
      body = value.substr(0, space);
    }
  }
  const double factor = unit_factor(unit, key);
  std::vector<double> out;
  std::stringstream ss(body);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    cell = trim(cell);
    if (cell.empty()) continue;
    out.push_back(parse_scalar(cell, key) * factor);
  }
  if (out.empty())
    throw ConfigError("parse error: key '" + key + "' needs a list of numbers");
  return out;
}

bool parse_bool(const std::string& value, const std::string& key) {
  const std::string v = trim(value);
  if (v == "1" || v == "true" || v == "on") return true;
  if (v == "0" || v == "false" || v == "off") return false;
  throw ConfigError("parse error: key '" + key + "' needs a boolean (0/1)");
}

using Setter = std::function<void(SimConfig&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = [] {
    std::map<std::string, Setter> t;
    auto scalar = [&t](const std::string& key, double RobotParams::* field) {
      t[key] = [key, field](SimConfig& c, const std::string& v) {
        c.robot.*field = parse_scalar(v, key);
      };
    };
    auto sim_scalar = [&t](const std::string& key, double SimSettings::* field) {
      t[key] = [key, field](SimConfig& c, const std::string& v) {
        c.sim.*field = parse_scalar(v, key);
      };
    };
    auto ctl_scalar = [&t](const std::string& key,
                           double ControllerConfig::* field) {
      t[key] = [key, field](SimConfig& c, const std::string& v) {
        c.control.*field = parse_scalar(v, key);
      };
    };

    t["config"] = [](SimConfig& c, const std::string& v) {
      const std::string val = trim(v);
      if (val == "A" || val == "a")
        c.robot = default_params(LegConfig::A);
      else if (val == "B" || val == "b")
        c.robot = default_params(LegConfig::B);
      else
        throw ConfigError("parse error: config must be A or B, got '" + val +
                          "'");
    };

    scalar("robot.total_mass", &RobotParams::total_mass);
    scalar("robot.trunk_mass_fraction", &RobotParams::trunk_mass_fraction);
    t["robot.segment_lengths"] = [](SimConfig& c, const std::string& v) {
      c.robot.segment_lengths = parse_list(v, "robot.segment_lengths");
    };
    t["robot.resting_joint_angles"] = [](SimConfig& c, const std::string& v) {
      c.robot.resting_joint_angles =
          parse_list(v, "robot.resting_joint_angles");
    };
    scalar("robot.knee_stiffness", &RobotParams::knee_stiffness);
    scalar("robot.knee_cam_radius", &RobotParams::knee_cam_radius);
    scalar("robot.biarticular_stiffness", &RobotParams::biarticular_stiffness);
    scalar("robot.biarticular_insertion_radius",
           &RobotParams::biarticular_insertion_radius);
    scalar("robot.selda_stiffness", &RobotParams::selda_stiffness);
    scalar("robot.selda_bias_torque", &RobotParams::selda_bias_torque);
    scalar("robot.selda_pulley_radius", &RobotParams::selda_pulley_radius);
    scalar("robot.selda_coupling_ratio", &RobotParams::selda_coupling_ratio);
    scalar("robot.motor_torque_limit", &RobotParams::motor_torque_limit);
    scalar("robot.hip_gear_ratio", &RobotParams::hip_gear_ratio);
    scalar("robot.boom_radius", &RobotParams::boom_radius);
    scalar("robot.leg_resting_length", &RobotParams::leg_resting_length);
    scalar("robot.joint_damping", &RobotParams::joint_damping);
    scalar("robot.joint_friction_torque", &RobotParams::joint_friction_torque);
    scalar("robot.motor_inertia", &RobotParams::motor_inertia);
    scalar("robot.motor_damping", &RobotParams::motor_damping);
    scalar("robot.motor_time_constant", &RobotParams::motor_time_constant);
    scalar("robot.motor_no_load_speed", &RobotParams::motor_no_load_speed);
    t["robot.selda_isothermal"] = [](SimConfig& c, const std::string& v) {
      c.robot.selda_isothermal = parse_bool(v, "robot.selda_isothermal");
    };
    scalar("robot.selda_stroke", &RobotParams::selda_stroke);
    scalar("robot.joint_stop_stiffness", &RobotParams::joint_stop_stiffness);
    scalar("robot.joint_stop_damping", &RobotParams::joint_stop_damping);
    scalar("robot.min_interior_angle", &RobotParams::min_interior_angle);
    scalar("robot.foot_min_angle", &RobotParams::foot_min_angle);

    sim_scalar("sim.physics_dt", &SimSettings::physics_dt);
    sim_scalar("sim.control_dt", &SimSettings::control_dt);
    t["sim.integrator"] = [](SimConfig& c, const std::string& v) {
      const std::string val = trim(v);
      if (val == "semi_implicit_euler" || val == "sie")
        c.sim.integrator = Integrator::SemiImplicitEuler;
      else if (val == "rk4")
        c.sim.integrator = Integrator::RK4;
      else
        throw ConfigError(
            "parse error: sim.integrator must be semi_implicit_euler or rk4");
    };
    sim_scalar("sim.contact_stiffness", &SimSettings::contact_stiffness);
    sim_scalar("sim.contact_damping", &SimSettings::contact_damping);
    sim_scalar("sim.friction_coefficient", &SimSettings::friction_coefficient);
    sim_scalar("sim.friction_regularization_velocity",
               &SimSettings::friction_regularization_velocity);
    sim_scalar("sim.duration", &SimSettings::duration);
    sim_scalar("sim.gravity", &SimSettings::gravity);
    t["sim.seed"] = [](SimConfig& c, const std::string& v) {
      c.sim.seed = static_cast<std::uint64_t>(parse_scalar(v, "sim.seed"));
    };
    t["sim.contact_enabled"] = [](SimConfig& c, const std::string& v) {
      c.sim.contact_enabled = parse_bool(v, "sim.contact_enabled");
    };

    ctl_scalar("control.hip_amplitude", &ControllerConfig::hip_amplitude);
    ctl_scalar("control.hip_frequency", &ControllerConfig::hip_frequency);
    ctl_scalar("control.kp", &ControllerConfig::kp);
    ctl_scalar("control.kd", &ControllerConfig::kd);
    ctl_scalar("control.ankle_step_torque",
               &ControllerConfig::ankle_step_torque);
    ctl_scalar("control.timing_start", &ControllerConfig::timing_start);
    ctl_scalar("control.timing_end", &ControllerConfig::timing_end);
    t["control.ankle_enabled"] = [](SimConfig& c, const std::string& v) {
      c.control.ankle_enabled = parse_bool(v, "control.ankle_enabled");
    };
    return t;
  }();
  return table;
}

void apply_pair(SimConfig& config, const std::string& key,
                const std::string& value) {
  const auto& table = setters();
  const auto it = table.find(key);
  if (it == table.end())
    throw ConfigError("parse error: unknown key '" + key + "'");
  it->second(config, value);
}

}  // namespace

void apply_override(SimConfig& config, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos)
    throw ConfigError("parse error: override '" + assignment +
                      "' is not of the form key=value");
  apply_pair(config, trim(assignment.substr(0, eq)),
             trim(assignment.substr(eq + 1)));
}

void validate(const SimConfig& config) {
  config.robot.validate();
  config.sim.validate();
  config.control.validate();
}

SimConfig parse_config(const std::string& text) {
  SimConfig config;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;

  // The base-config selector applies first so later keys can refine it.
  std::vector<std::pair<std::string, std::string>> pairs;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("parse error: line " + std::to_string(lineno) +
                        " is not of the form key = value");
    pairs.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  std::stable_sort(pairs.begin(), pairs.end(),
                   [](const auto& a, const auto& b) {
                     return (a.first == "config") > (b.first == "config");
                   });
  for (const auto& [key, value] : pairs) apply_pair(config, key, value);
  validate(config);
  return config;
}

SimConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

std::string serialize_config(const SimConfig& config) {
  std::ostringstream out;
  const auto put = [&](const std::string& key, double v) {
    out << key << " = " << format_double(v) << "\n";
  };
  const auto put_list = [&](const std::string& key,
                            const std::vector<double>& values) {
    out << key << " = ";
    for (std::size_t i = 0; i < values.size(); ++i)
      out << format_double(values[i]) << (i + 1 < values.size() ? "," : "\n");
  };
  const RobotParams& r = config.robot;
  put("robot.total_mass", r.total_mass);
  put("robot.trunk_mass_fraction", r.trunk_mass_fraction);
  put_list("robot.segment_lengths", r.segment_lengths);
  put_list("robot.resting_joint_angles", r.resting_joint_angles);
  put("robot.knee_stiffness", r.knee_stiffness);
  put("robot.knee_cam_radius", r.knee_cam_radius);
  put("robot.biarticular_stiffness", r.biarticular_stiffness);
  put("robot.biarticular_insertion_radius", r.biarticular_insertion_radius);
  put("robot.selda_stiffness", r.selda_stiffness);
  put("robot.selda_bias_torque", r.selda_bias_torque);
  put("robot.selda_pulley_radius", r.selda_pulley_radius);
  put("robot.selda_coupling_ratio", r.selda_coupling_ratio);
  put("robot.motor_torque_limit", r.motor_torque_limit);
  put("robot.hip_gear_ratio", r.hip_gear_ratio);
  put("robot.boom_radius", r.boom_radius);
  put("robot.leg_resting_length", r.leg_resting_length);
  put("robot.joint_damping", r.joint_damping);
  put("robot.joint_friction_torque", r.joint_friction_torque);
  put("robot.motor_inertia", r.motor_inertia);
  put("robot.motor_damping", r.motor_damping);
  put("robot.motor_time_constant", r.motor_time_constant);
  put("robot.motor_no_load_speed", r.motor_no_load_speed);
  out << "robot.selda_isothermal = " << (r.selda_isothermal ? 1 : 0) << "\n";
  put("robot.selda_stroke", r.selda_stroke);
  put("robot.joint_stop_stiffness", r.joint_stop_stiffness);
  put("robot.joint_stop_damping", r.joint_stop_damping);
  put("robot.min_interior_angle", r.min_interior_angle);
  put("robot.foot_min_angle", r.foot_min_angle);

  const SimSettings& s = config.sim;
  put("sim.physics_dt", s.physics_dt);
  put("sim.control_dt", s.control_dt);
  out << "sim.integrator = "
      << (s.integrator == Integrator::RK4 ? "rk4" : "semi_implicit_euler")
      << "\n";
  put("sim.contact_stiffness", s.contact_stiffness);
  put("sim.contact_damping", s.contact_damping);
  put("sim.friction_coefficient", s.friction_coefficient);
  put("sim.friction_regularization_velocity",
      s.friction_regularization_velocity);
  put("sim.duration", s.duration);
  put("sim.gravity", s.gravity);
  out << "sim.seed = " << s.seed << "\n";
  out << "sim.contact_enabled = " << (s.contact_enabled ? 1 : 0) << "\n";

  const ControllerConfig& c = config.control;
  put("control.hip_amplitude", c.hip_amplitude);
  put("control.hip_frequency", c.hip_frequency);
  put("control.kp", c.kp);
  put("control.kd", c.kd);
  put("control.ankle_step_torque", c.ankle_step_torque);
  put("control.timing_start", c.timing_start);
  put("control.timing_end", c.timing_end);
  out << "control.ankle_enabled = " << (c.ankle_enabled ? 1 : 0) << "\n";
  return out.str();
}

}  // namespace selda
