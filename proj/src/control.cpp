#include "selda/control.hpp"

#include <algorithm>
#include <cmath>

namespace selda {

namespace {
constexpr double kTwoPi = 6.283185307179586476925287;
}

void ControllerConfig::validate() const {
  if (!(hip_frequency > 0.0))
    throw ConfigError("validation error: hip_frequency must be > 0");
  if (kp < 0.0 || kd < 0.0)
    throw ConfigError("validation error: kp and kd must be >= 0");
  if (!(timing_start >= 0.0 && timing_start < timing_end && timing_end <= 1.0))
    throw ConfigError(
        "validation error: need 0 <= timing_start < timing_end <= 1");
}

double cycle_phase(double t, const ControllerConfig& cfg) {
  const double phase = std::fmod(t * cfg.hip_frequency, 1.0);
  return phase < 0.0 ? phase + 1.0 : phase;
}

double hip_reference(double t, const ControllerConfig& cfg) {
  return cfg.hip_amplitude * std::sin(kTwoPi * cfg.hip_frequency * t);
}

double hip_reference_rate(double t, const ControllerConfig& cfg) {
  return kTwoPi * cfg.hip_frequency * cfg.hip_amplitude *
         std::cos(kTwoPi * cfg.hip_frequency * t);
}

double hip_pd_torque(double ref, double measured, double ref_rate,
                     double measured_rate, const ControllerConfig& cfg,
                     double torque_limit) {
  const double tau =
      cfg.kp * (ref - measured) + cfg.kd * (ref_rate - measured_rate);
  return std::clamp(tau, -torque_limit, torque_limit);
}

double ankle_command(double t, const ControllerConfig& cfg) {
  if (!cfg.ankle_enabled) return 0.0;
  const double phase = cycle_phase(t, cfg);
  const bool active = phase >= cfg.timing_start && phase < cfg.timing_end;
  return active ? cfg.ankle_step_torque : 0.0;
}

}  // namespace selda
