#pragma once

#include <optional>
#include <string>
#include <vector>

#include "selda/control.hpp"
#include "selda/dynamics.hpp"
#include "selda/params.hpp"

namespace selda {

/// One uniformly sampled record (at control_dt) of a trial.
struct LogRecord {
  double t = 0.0;
  double x_com = 0.0, y_com = 0.0;
  double vx_com = 0.0, vy_com = 0.0;
  std::vector<double> joint_angles;
  std::vector<double> joint_rates;
  double hip_torque = 0.0;
  double ankle_motor_torque = 0.0;
  double grf_x = 0.0, grf_y = 0.0;
  bool contact = false;
  double tip_y = 0.0;  // world height of the contact point
  double selda_deflection = 0.0;
  double phase = 0.0;  // controller cycle phase in [0, 1)
  double energy = 0.0;
  double actuator_work = 0.0;
  double damping_work = 0.0;
  double contact_work = 0.0;
};

struct TrajectoryLog {
  double sample_period = 0.0;  // s
  int num_joints = 0;
  std::vector<LogRecord> records;
  bool aborted = false;        // trial hit a non-finite state
  std::string abort_message;

  std::vector<std::string> column_names() const;
};

/// Simulates from the standardized initial condition (resting pose, tip
/// 5 mm above ground, at rest) for settings.duration. On a simulation
/// abort the partial log is returned with the diagnostic attached.
TrajectoryLog run_trial(const RobotParams& params, const SimSettings& settings,
                        const ControllerConfig& controller);

/// One detected step: touchdown to the following touchdown.
struct StepWindow {
  double touchdown = 0.0;       // s
  double liftoff = 0.0;         // s
  double next_touchdown = 0.0;  // s
  double apex_time = 0.0;       // s, CoM height maximum inside the step
  double apex_height = 0.0;     // m
};

/// Contact-edge step detection with a 50 ms debounce: contact or flight
/// intervals shorter than the debounce are merged into their neighbours.
/// Returns an empty list when no complete step exists.
std::vector<StepWindow> detect_steps(const TrajectoryLog& log,
                                     double debounce = 0.050);

struct Quartiles {
  double min = 0.0, q1 = 0.0, median = 0.0, q3 = 0.0, max = 0.0, mean = 0.0;
};

Quartiles quartiles(std::vector<double> values);

struct GaitMetrics {
  int step_count = 0;
  std::vector<double> step_lengths;    // m, CoM advance per step
  std::vector<double> step_heights;    // m, max - min CoM height per step
  std::vector<double> step_durations;  // s
  Quartiles length_stats;
  Quartiles height_stats;
  Quartiles duration_stats;
  double mean_velocity = 0.0;    // m/s over the analyzed window
  double revolution_time = 0.0;  // s to travel one full boom turn
  bool period_two = false;       // alternating step heights differ > 10%
  double window_start = 0.0, window_end = 0.0;
};

/// Metrics over the steady-state window. By default the first
/// `discard_steps` steps are dropped as transient. Throws ConfigError when
/// no complete step remains.
GaitMetrics compute_metrics(const TrajectoryLog& log,
                            const std::vector<StepWindow>& steps,
                            const RobotParams& params, int discard_steps = 3);

struct TrialResult {
  std::string label;
  std::optional<double> timing;  // t_T for active trials
  GaitMetrics metrics;
  TrajectoryLog log;
  std::string error;  // non-empty when the trial or its analysis failed
};

struct ComparisonReport {
  TrialResult config_a;
  TrialResult config_b;
  double velocity_ratio = 0.0;
  double step_length_ratio = 0.0;
  /// Hardware reference numbers for context: the physical robot reached
  /// 0.62 m/s (A) and 1.20 m/s (B) passive, step length 378 -> 730 mm.
  std::string footer() const;
};

/// Passive A-vs-B study under identical controller settings.
ComparisonReport compare_configurations(const SimSettings& settings,
                                        const ControllerConfig& controller,
                                        int discard_steps = 3);

/// Active-timing study: one active trial per t_T plus the passive
/// baseline. Trials run concurrently up to max_threads (0 = hardware
/// concurrency, capped by the SELDA_SIM_THREADS environment variable).
std::vector<TrialResult> timing_sweep(const RobotParams& params,
                                      const SimSettings& settings,
                                      const ControllerConfig& controller,
                                      const std::vector<double>& timings,
                                      int discard_steps = 3,
                                      int max_threads = 0);

/// Default sweep timings 5..30% in 5% increments.
std::vector<double> default_sweep_timings();

}  // namespace selda
