#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "selda/experiments.hpp"

using namespace selda;

namespace {

// Synthetic log with a given contact pattern at 10 ms sampling.
TrajectoryLog make_log(const std::vector<bool>& contact, double dt = 0.01) {
  TrajectoryLog log;
  log.sample_period = dt;
  log.num_joints = 4;
  for (std::size_t i = 0; i < contact.size(); ++i) {
    LogRecord r;
    r.t = i * dt;
    r.contact = contact[i];
    log.records.push_back(r);
  }
  return log;
}

std::vector<bool> square_wave(double period, double duty, double duration,
                              double dt, double first_touchdown) {
  std::vector<bool> c;
  for (double t = 0.0; t < duration; t += dt) {
    const double ph = std::fmod(t - first_touchdown + 10.0 * period, period);
    c.push_back(ph < duty * period);
  }
  return c;
}

const TrajectoryLog& reference_trial() {
  static const TrajectoryLog log = [] {
    const RobotParams p = default_params(LegConfig::B);
    SimSettings s;
    ControllerConfig c;
    return run_trial(p, s, c);
  }();
  return log;
}

}  // namespace

TEST_CASE("step detection on a clean square wave") {
  const auto log = make_log(square_wave(0.6, 0.5, 2.0, 0.01, 0.3));
  const auto steps = detect_steps(log);
  REQUIRE(steps.size() == 2);
  CHECK(steps[0].touchdown == doctest::Approx(0.3));
  CHECK(steps[0].liftoff == doctest::Approx(0.6));
  CHECK(steps[0].next_touchdown == doctest::Approx(0.9));
  CHECK(steps[1].touchdown == doctest::Approx(0.9));
  CHECK(steps[1].next_touchdown == doctest::Approx(1.5));
}

TEST_CASE("debounce merges short flight gaps and drops contact blips") {
  auto contact = square_wave(0.6, 0.5, 2.0, 0.01, 0.3);
  // A 20 ms flicker inside the first stance must not split the step.
  contact[35] = contact[36] = false;
  // A 20 ms touch in mid-flight must not create one.
  contact[65] = contact[66] = true;
  const auto steps = detect_steps(make_log(contact));
  REQUIRE(steps.size() == 2);
  CHECK(steps[0].touchdown == doctest::Approx(0.3));
  CHECK(steps[0].next_touchdown == doctest::Approx(0.9));
}

TEST_CASE("no contact, no steps") {
  CHECK(detect_steps(make_log(std::vector<bool>(200, false))).empty());
  CHECK(detect_steps(TrajectoryLog{}).empty());
  // A single stance has no completed step either.
  CHECK(detect_steps(make_log(square_wave(10.0, 0.05, 2.0, 0.01, 0.3))).empty());
}

TEST_CASE("quartiles") {
  const Quartiles q = quartiles({5.0, 1.0, 3.0, 2.0, 4.0});
  CHECK(q.min == 1.0);
  CHECK(q.q1 == doctest::Approx(2.0));
  CHECK(q.median == doctest::Approx(3.0));
  CHECK(q.q3 == doctest::Approx(4.0));
  CHECK(q.max == 5.0);
  CHECK(q.mean == doctest::Approx(3.0));

  const Quartiles e = quartiles({1.0, 2.0, 3.0, 4.0});
  CHECK(e.q1 == doctest::Approx(1.75));
  CHECK(e.median == doctest::Approx(2.5));
  CHECK(e.q3 == doctest::Approx(3.25));
}

TEST_CASE("metrics on a constant-velocity synthetic gait") {
  const double dt = 0.01, period = 0.6, v = 1.20;
  auto log = make_log(square_wave(period, 0.5, 8.0, dt, 0.3), dt);
  for (auto& r : log.records) {
    r.x_com = v * r.t;
    const double s = std::sin(M_PI * (r.t - 0.3) / period);
    r.y_com = 0.40 + 0.020 * s * s;
  }
  const auto steps = detect_steps(log);
  const RobotParams p = default_params(LegConfig::B);
  const auto m = compute_metrics(log, steps, p);

  CHECK(m.step_count == static_cast<int>(steps.size()) - 3);
  CHECK(m.mean_velocity == doctest::Approx(1.20).epsilon(1e-9));
  for (double l : m.step_lengths) CHECK(l == doctest::Approx(v * period));
  for (double d : m.step_durations) CHECK(d == doctest::Approx(period));
  for (double h : m.step_heights) CHECK(h == doctest::Approx(0.020).epsilon(1e-3));
  CHECK_FALSE(m.period_two);
  // One boom revolution is 2*pi*1.55 m; at 1.20 m/s that takes 8.116 s.
  CHECK(m.revolution_time ==
        doctest::Approx(2.0 * M_PI * 1.55 / 1.20).epsilon(1e-6));
}

TEST_CASE("alternating step heights flag a period-two gait") {
  const double dt = 0.01, period = 0.6;
  auto log = make_log(square_wave(period, 0.5, 8.0, dt, 0.3), dt);
  for (auto& r : log.records) {
    r.x_com = 0.5 * r.t;
    const int k = static_cast<int>(std::floor((r.t - 0.3) / period));
    const double amp = (k % 2 == 0) ? 0.030 : 0.015;
    const double s = std::sin(M_PI * (r.t - 0.3) / period);
    r.y_com = 0.40 + amp * s * s;
  }
  const auto m =
      compute_metrics(log, detect_steps(log), default_params(LegConfig::B));
  CHECK(m.period_two);
}

TEST_CASE("too few steps is an error") {
  const auto log = make_log(square_wave(0.6, 0.5, 2.0, 0.01, 0.3));
  CHECK_THROWS_AS(
      compute_metrics(log, detect_steps(log), default_params(LegConfig::B)),
      ConfigError);
}

TEST_CASE("step lengths telescope to the window displacement") {
  const auto& log = reference_trial();
  REQUIRE_FALSE(log.aborted);
  const auto steps = detect_steps(log);
  const auto m = compute_metrics(log, steps, default_params(LegConfig::B));
  REQUIRE(m.step_count >= 5);
  double sum = 0.0;
  for (double l : m.step_lengths) sum += l;
  const auto at = [&](double t) {
    return log.records[std::lround(t / log.sample_period)].x_com;
  };
  CHECK(std::abs(sum - (at(m.window_end) - at(m.window_start))) <= 1e-9);
}

TEST_CASE("trials are deterministic record for record") {
  const RobotParams p = default_params(LegConfig::B);
  SimSettings s;
  s.duration = 2.0;
  ControllerConfig c;
  const TrajectoryLog a = run_trial(p, s, c);
  const TrajectoryLog b = run_trial(p, s, c);
  REQUIRE(a.records.size() == b.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    CHECK(a.records[i].x_com == b.records[i].x_com);
    CHECK(a.records[i].y_com == b.records[i].y_com);
    CHECK(a.records[i].energy == b.records[i].energy);
    CHECK(a.records[i].hip_torque == b.records[i].hip_torque);
  }
}

TEST_CASE("zero drive comes to rest on the ground") {
  // With the hip reference amplitude at zero the leg should settle onto
  // static equilibrium; bearing friction kills the residual oscillation
  // well within eight seconds.
  const RobotParams p = default_params(LegConfig::B);
  SimSettings s;
  s.duration = 8.0;
  ControllerConfig c;
  c.hip_amplitude = 0.0;
  const TrajectoryLog log = run_trial(p, s, c);
  REQUIRE_FALSE(log.aborted);
  const LogRecord& last = log.records.back();
  CHECK(last.contact);
  CHECK(std::abs(last.vx_com) < 1e-3);
  CHECK(std::abs(last.vy_com) < 1e-3);
  // The posture is stationary over the final second. (The instantaneous
  // joint rates still carry a sub-milliradian jitter at the stiff range
  // stops, so the angles are the meaningful rest check.)
  const LogRecord& earlier =
      log.records[log.records.size() - 1 - std::lround(1.0 / log.sample_period)];
  for (std::size_t j = 0; j < last.joint_angles.size(); ++j)
    CHECK(std::abs(last.joint_angles[j] - earlier.joint_angles[j]) < 1e-3);
}

TEST_CASE("timing sweep produces the passive row plus one per timing") {
  const RobotParams p = default_params(LegConfig::B);
  SimSettings s;
  s.duration = 6.0;
  ControllerConfig c;
  const std::vector<double> timings = {0.10, 0.25};
  const auto results = timing_sweep(p, s, c, timings, 2);
  REQUIRE(results.size() == 3);
  CHECK(results[0].label == "passive");
  CHECK_FALSE(results[0].timing.has_value());
  CHECK(results[1].label == "tT=10%");
  CHECK(results[1].timing.value() == doctest::Approx(0.10));
  CHECK(results[2].label == "tT=25%");
  for (const auto& r : results) CHECK(r.error.empty());

  SUBCASE("results do not depend on the thread count") {
    const auto serial = timing_sweep(p, s, c, timings, 2, 1);
    REQUIRE(serial.size() == results.size());
    for (std::size_t i = 0; i < results.size(); ++i) {
      CHECK(serial[i].label == results[i].label);
      CHECK(serial[i].metrics.mean_velocity == results[i].metrics.mean_velocity);
      CHECK(serial[i].metrics.step_count == results[i].metrics.step_count);
    }
  }

  CHECK(default_sweep_timings().size() == 6);
  CHECK_THROWS_AS(timing_sweep(p, s, c, {0.7}), ConfigError);
}

TEST_CASE("passive comparison favours the compliant foot") {
  SimSettings s;
  ControllerConfig c;
  const ComparisonReport report = compare_configurations(s, c);
  CHECK(report.config_a.metrics.step_count >= 5);
  CHECK(report.config_b.metrics.step_count >= 5);
  CHECK(report.velocity_ratio > 1.0);
  CHECK(report.step_length_ratio > 1.0);
  CHECK_FALSE(report.footer().empty());
}
