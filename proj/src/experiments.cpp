#include "selda/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <thread>

namespace selda {

namespace {
constexpr double kTwoPi = 6.283185307179586476925287;
}

std::vector<std::string> TrajectoryLog::column_names() const {
  std::vector<std::string> cols = {"t", "x_com", "y_com", "vx_com", "vy_com"};
  for (int j = 0; j < num_joints; ++j) cols.push_back("q" + std::to_string(j));
  for (int j = 0; j < num_joints; ++j) cols.push_back("qd" + std::to_string(j));
  for (const char* c :
       {"hip_torque", "ankle_motor_torque", "grf_x", "grf_y", "contact",
        "tip_y", "selda_deflection", "phase", "energy", "actuator_work",
        "damping_work", "contact_work"})
    cols.push_back(c);
  return cols;
}

TrajectoryLog run_trial(const RobotParams& params, const SimSettings& settings,
                        const ControllerConfig& controller) {
  controller.validate();
  const Dynamics dyn(params, settings);

  TrajectoryLog log;
  log.sample_period = settings.control_dt;
  log.num_joints = params.num_joints();

  SimState s = dyn.initial_state();
  // The hip reference oscillates about the standing posture: the tracked
  // coordinate is the deviation from the initial hip angle (encoder zero).
  const double hip_neutral = s.joints.angles[0];
  const int substeps = settings.substeps_per_control_tick();
  const long ticks = std::lround(settings.duration / settings.control_dt);
  log.records.reserve(ticks + 1);

  try {
    for (long tick = 0; tick <= ticks; ++tick) {
      // Controller sampled at control_dt with zero-order hold between ticks.
      const double t = tick * settings.control_dt;
      const double ref = hip_reference(t, controller);
      const double ref_rate = hip_reference_rate(t, controller);
      const double hip_tau =
          hip_pd_torque(ref, s.joints.angles[0] - hip_neutral, ref_rate,
                        s.joints.rates[0], controller,
                        params.hip_torque_limit());
      const double ankle_tau = ankle_command(t, controller);

      LogRecord rec;
      rec.t = t;
      Eigen::Vector2d com, com_vel;
      dyn.center_of_mass(s, com, com_vel);
      rec.x_com = com.x();
      rec.y_com = com.y();
      rec.vx_com = com_vel.x();
      rec.vy_com = com_vel.y();
      rec.joint_angles = s.joints.angles;
      rec.joint_rates = s.joints.rates;
      rec.hip_torque = hip_tau;
      rec.ankle_motor_torque = s.selda.applied_torque;
      rec.grf_x = s.grf.x();
      rec.grf_y = s.grf.y();
      rec.contact = s.in_contact;
      rec.tip_y = dyn.tip_contact(s).position.y();
      rec.selda_deflection = s.selda.deflection;
      rec.phase = cycle_phase(t, controller);
      rec.energy = dyn.total_energy(s);
      rec.actuator_work = s.actuator_work;
      rec.damping_work = s.damping_work;
      rec.contact_work = s.contact_work;
      log.records.push_back(std::move(rec));

      if (tick == ticks) break;
      for (int i = 0; i < substeps; ++i) s = dyn.step(s, hip_tau, ankle_tau);
    }
  } catch (const SimulationError& e) {
    log.aborted = true;
    log.abort_message = e.what();
  }
  return log;
}

std::vector<StepWindow> detect_steps(const TrajectoryLog& log,
                                     double debounce) {
  std::vector<StepWindow> steps;
  const auto& recs = log.records;
  if (recs.empty()) return steps;

  // Contact intervals as [start, end) record indices.
  struct Interval {
    std::size_t begin, end;
  };
  std::vector<Interval> intervals;
  for (std::size_t i = 0; i < recs.size();) {
    if (recs[i].contact) {
      std::size_t j = i;
      while (j < recs.size() && recs[j].contact) ++j;
      intervals.push_back({i, j});
      i = j;
    } else {
      ++i;
    }
  }
  const double dt = log.sample_period;
  const auto shorter = [&](std::size_t a, std::size_t b) {
    return (b - a) * dt < debounce;
  };
  // Close flight gaps shorter than the debounce, then drop contact blips.
  std::vector<Interval> merged;
  for (const auto& iv : intervals) {
    if (!merged.empty() && shorter(merged.back().end, iv.begin))
      merged.back().end = iv.end;
    else
      merged.push_back(iv);
  }
  std::vector<Interval> clean;
  for (const auto& iv : merged)
    if (!shorter(iv.begin, iv.end)) clean.push_back(iv);

  for (std::size_t k = 0; k + 1 < clean.size(); ++k) {
    StepWindow w;
    w.touchdown = recs[clean[k].begin].t;
    w.liftoff = recs[clean[k].end - 1].t + dt;
    w.next_touchdown = recs[clean[k + 1].begin].t;
    w.apex_height = -std::numeric_limits<double>::infinity();
    for (std::size_t i = clean[k].begin; i < clean[k + 1].begin; ++i) {
      if (recs[i].y_com > w.apex_height) {
        w.apex_height = recs[i].y_com;
        w.apex_time = recs[i].t;
      }
    }
    steps.push_back(w);
  }
  return steps;
}

Quartiles quartiles(std::vector<double> values) {
  Quartiles q;
  if (values.empty()) return q;
  std::sort(values.begin(), values.end());
  const auto at = [&](double f) {
    const double pos = f * (values.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    const std::size_t hi = std::min(lo + 1, values.size() - 1);
    const double frac = pos - lo;
    return values[lo] * (1.0 - frac) + values[hi] * frac;
  };
  q.min = values.front();
  q.q1 = at(0.25);
  q.median = at(0.5);
  q.q3 = at(0.75);
  q.max = values.back();
  double sum = 0.0;
  for (double v : values) sum += v;
  q.mean = sum / values.size();
  return q;
}

GaitMetrics compute_metrics(const TrajectoryLog& log,
                            const std::vector<StepWindow>& steps,
                            const RobotParams& params, int discard_steps) {
  if (static_cast<int>(steps.size()) <= discard_steps)
    throw ConfigError("compute_metrics: fewer than " +
                      std::to_string(discard_steps + 1) +
                      " complete steps in the log");
  GaitMetrics m;
  const double dt = log.sample_period;
  const double t0 = log.records.front().t;
  const auto index_at = [&](double t) {
    const std::size_t idx = static_cast<std::size_t>(std::lround((t - t0) / dt));
    return std::min(idx, log.records.size() - 1);
  };
  const auto record_at = [&](double t) -> const LogRecord& {
    return log.records[index_at(t)];
  };

  for (std::size_t k = discard_steps; k < steps.size(); ++k) {
    const StepWindow& w = steps[k];
    const LogRecord& td = record_at(w.touchdown);
    const LogRecord& next = record_at(w.next_touchdown);
    m.step_lengths.push_back(next.x_com - td.x_com);
    m.step_durations.push_back(w.next_touchdown - w.touchdown);
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t i = index_at(w.touchdown); i < index_at(w.next_touchdown);
         ++i) {
      const double y = log.records[i].y_com;
      lo = std::min(lo, y);
      hi = std::max(hi, y);
    }
    m.step_heights.push_back(hi - lo);
  }
  m.step_count = static_cast<int>(m.step_lengths.size());
  m.length_stats = quartiles(m.step_lengths);
  m.height_stats = quartiles(m.step_heights);
  m.duration_stats = quartiles(m.step_durations);

  m.window_start = steps[discard_steps].touchdown;
  m.window_end = steps.back().next_touchdown;
  const double dx =
      record_at(m.window_end).x_com - record_at(m.window_start).x_com;
  const double span = m.window_end - m.window_start;
  m.mean_velocity = span > 0.0 ? dx / span : 0.0;

  // Revolution time: measured crossing when the window covers one full
  // boom turn, otherwise extrapolated from the mean velocity.
  const double revolution = kTwoPi * params.boom_radius;
  const double x_start = record_at(m.window_start).x_com;
  m.revolution_time = std::numeric_limits<double>::infinity();
  for (std::size_t i = index_at(m.window_start); i <= index_at(m.window_end);
       ++i) {
    if (log.records[i].x_com - x_start >= revolution) {
      m.revolution_time = log.records[i].t - m.window_start;
      break;
    }
  }
  if (!std::isfinite(m.revolution_time) && std::abs(m.mean_velocity) > 1e-9)
    m.revolution_time = revolution / std::abs(m.mean_velocity);

  if (m.step_heights.size() >= 2) {
    double even = 0.0, odd = 0.0;
    std::size_t ne = 0, no = 0;
    for (std::size_t i = 0; i < m.step_heights.size(); ++i) {
      if (i % 2 == 0) { even += m.step_heights[i]; ++ne; }
      else { odd += m.step_heights[i]; ++no; }
    }
    even /= ne;
    odd /= std::max<std::size_t>(no, 1);
    const double mean = m.height_stats.mean;
    if (mean > 0.0) m.period_two = std::abs(even - odd) > 0.10 * mean;
  }
  return m;
}

std::string ComparisonReport::footer() const {
  return "hardware reference: A 0.62 m/s, B passive 1.20 m/s; "
         "step length 378 mm -> 730 mm (+93%)";
}

ComparisonReport compare_configurations(const SimSettings& settings,
                                        const ControllerConfig& controller,
                                        int discard_steps) {
  ControllerConfig passive = controller;
  passive.ankle_enabled = false;

  ComparisonReport report;
  report.config_a.label = "A";
  report.config_a.log = run_trial(default_params(LegConfig::A), settings, passive);
  report.config_a.metrics =
      compute_metrics(report.config_a.log,
                      detect_steps(report.config_a.log),
                      default_params(LegConfig::A), discard_steps);

  report.config_b.label = "B-passive";
  report.config_b.log = run_trial(default_params(LegConfig::B), settings, passive);
  report.config_b.metrics =
      compute_metrics(report.config_b.log,
                      detect_steps(report.config_b.log),
                      default_params(LegConfig::B), discard_steps);

  const double va = report.config_a.metrics.mean_velocity;
  const double vb = report.config_b.metrics.mean_velocity;
  report.velocity_ratio = va != 0.0 ? vb / va : 0.0;
  const double la = report.config_a.metrics.length_stats.mean;
  const double lb = report.config_b.metrics.length_stats.mean;
  report.step_length_ratio = la != 0.0 ? lb / la : 0.0;
  return report;
}

std::vector<double> default_sweep_timings() {
  return {0.05, 0.10, 0.15, 0.20, 0.25, 0.30};
}

std::vector<TrialResult> timing_sweep(const RobotParams& params,
                                      const SimSettings& settings,
                                      const ControllerConfig& controller,
                                      const std::vector<double>& timings,
                                      int discard_steps, int max_threads) {
  for (double t : timings)
    if (!(t >= 0.0 && t < controller.timing_end))
      throw ConfigError("timing_sweep: timings must lie in [0, timing_end)");

  struct Job {
    std::string label;
    std::optional<double> timing;
    ControllerConfig cfg;
  };
  std::vector<Job> jobs;
  {
    ControllerConfig passive = controller;
    passive.ankle_enabled = false;
    jobs.push_back({"passive", std::nullopt, passive});
  }
  for (double t : timings) {
    ControllerConfig cfg = controller;
    cfg.ankle_enabled = true;
    cfg.timing_start = t;
    std::ostringstream label;
    label << "tT=" << std::lround(t * 100.0) << "%";
    jobs.push_back({label.str(), t, cfg});
  }

  int threads = max_threads > 0 ? max_threads
                                : static_cast<int>(std::thread::hardware_concurrency());
  if (const char* env = std::getenv("SELDA_SIM_THREADS")) {
    const int cap = std::atoi(env);
    if (cap > 0) threads = std::min(threads, cap);
  }
  threads = std::clamp<int>(threads, 1, static_cast<int>(jobs.size()));

  std::vector<TrialResult> results(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= jobs.size()) return;
      TrialResult r;
      r.label = jobs[i].label;
      r.timing = jobs[i].timing;
      try {
        r.log = run_trial(params, settings, jobs[i].cfg);
        r.metrics = compute_metrics(r.log, detect_steps(r.log), params,
                                    discard_steps);
      } catch (const std::exception& e) {
        r.error = e.what();
      }
      results[i] = std::move(r);
    }
  };
  std::vector<std::thread> pool;
  for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  return results;
}

}  // namespace selda
