#pragma once

#include "selda/params.hpp"

namespace selda {

/// Open-loop gait controller settings: sinusoidal hip reference with PD
/// tracking and a step-torque ankle command gated by cycle phase.
struct ControllerConfig {
  double hip_amplitude = 0.3141592653589793;  // rad (18 deg)
  double hip_frequency = 1.65;                // Hz
  double kp = 40.0;                           // N·m/rad at the hip joint
  double kd = 0.35;                           // N·m·s/rad
  double ankle_step_torque = 1.0;             // N·m motor reference
  double timing_start = 0.20;  // t_T, fraction of the step cycle
  double timing_end = 0.50;    // fraction of the step cycle
  bool ankle_enabled = false;

  void validate() const;
};

/// Cycle phase in [0, 1); phase 0 is the hip sine's zero-upcrossing.
double cycle_phase(double t, const ControllerConfig& cfg);

/// Hip reference trajectory A * sin(2*pi*f*t).
double hip_reference(double t, const ControllerConfig& cfg);

/// Analytic reference rate 2*pi*f*A*cos(2*pi*f*t).
double hip_reference_rate(double t, const ControllerConfig& cfg);

/// PD tracking torque clamped to +/- torque_limit.
double hip_pd_torque(double ref, double measured, double ref_rate,
                     double measured_rate, const ControllerConfig& cfg,
                     double torque_limit);

/// Ankle motor torque reference: the step torque while the cycle phase is
/// in [timing_start, timing_end), zero otherwise or when disabled.
double ankle_command(double t, const ControllerConfig& cfg);

}  // namespace selda
