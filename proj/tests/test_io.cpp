#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "selda/config.hpp"
#include "selda/csv.hpp"
#include "selda/svg.hpp"

using namespace selda;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name) : path("/tmp/selda_test_" + name) {}
  ~TempFile() { std::remove(path.c_str()); }
};

TrajectoryLog tiny_log() {
  TrajectoryLog log;
  log.sample_period = 0.001;
  log.num_joints = 4;
  for (int i = 0; i < 5; ++i) {
    LogRecord r;
    r.t = i * 0.001;
    r.x_com = 0.1 * i + 1.0 / 3.0;
    r.y_com = 0.4 - 1e-17 * i;
    r.vx_com = std::sqrt(2.0) * i;
    r.joint_angles = {0.1, 2.27, 2.79, 3.14159};
    r.joint_rates = {0.0, -0.5, 0.25, 1e-300};
    r.contact = i % 2 == 0;
    r.grf_y = 12.345678901234567 * i;
    log.records.push_back(r);
  }
  return log;
}

}  // namespace

TEST_CASE("format_double round-trips exactly") {
  for (double v : {0.0, 1.0, -1.5, 1.0 / 3.0, M_PI, 1e-300, 6.5,
                   0.1 + 0.2, 9.738937226128358}) {
    const std::string s = format_double(v);
    CHECK(std::stod(s) == v);
  }
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(-2.0) == "-2");
}

TEST_CASE("trajectory CSV round trip is lossless") {
  const TrajectoryLog log = tiny_log();
  TempFile f("log.csv");
  write_log_csv(log, f.path, {{"config", "B"}, {"trial", "unit"}});

  const CsvTable t = read_csv(f.path);
  CHECK(t.columns == log.column_names());
  REQUIRE(t.rows.size() == log.records.size());
  CHECK(t.metadata.size() >= 2);

  const auto x = t.column("x_com");
  const auto grf = t.column("grf_y");
  const auto qd3 = t.column("qd3");
  for (std::size_t i = 0; i < log.records.size(); ++i) {
    CHECK(x[i] == log.records[i].x_com);
    CHECK(grf[i] == log.records[i].grf_y);
    CHECK(qd3[i] == log.records[i].joint_rates[3]);
  }
  CHECK(t.column("contact")[1] == 0.0);
  CHECK(t.column("contact")[2] == 1.0);
  CHECK(t.column_index("no_such_column") == -1);
}

TEST_CASE("identical logs serialize to identical bytes") {
  TempFile a("log_a.csv"), b("log_b.csv");
  write_log_csv(tiny_log(), a.path, {{"k", "v"}});
  write_log_csv(tiny_log(), b.path, {{"k", "v"}});
  const std::string bytes = slurp(a.path);
  CHECK(bytes == slurp(b.path));
  CHECK_FALSE(bytes.empty());
  CHECK(bytes.front() == '#');
}

TEST_CASE("empty log writes a header-only table") {
  TrajectoryLog log;
  log.sample_period = 0.001;
  log.num_joints = 3;
  TempFile f("empty.csv");
  write_log_csv(log, f.path);
  const CsvTable t = read_csv(f.path);
  CHECK(t.columns.size() == log.column_names().size());
  CHECK(t.rows.empty());
}

TEST_CASE("missing file raises IoError") {
  CHECK_THROWS_AS(read_csv("/tmp/selda_definitely_not_here.csv"), IoError);
}

TEST_CASE("config text round trip reproduces every value") {
  SimConfig cfg;
  cfg.robot = default_params(LegConfig::A);
  cfg.robot.selda_stiffness = 0.15000000000000002;
  cfg.sim.physics_dt = 1.0 / 3.0e5;
  cfg.sim.control_dt = 100.0 / 3.0e5;
  cfg.sim.integrator = Integrator::RK4;
  cfg.control.timing_start = 0.22;

  const std::string text = serialize_config(cfg);
  const SimConfig back = parse_config(text);
  CHECK(back.robot.selda_stiffness == cfg.robot.selda_stiffness);
  CHECK(back.sim.physics_dt == cfg.sim.physics_dt);
  CHECK(back.sim.control_dt == cfg.sim.control_dt);
  CHECK(back.sim.integrator == Integrator::RK4);
  CHECK(back.control.timing_start == cfg.control.timing_start);
  CHECK(back.robot.segment_lengths == cfg.robot.segment_lengths);
  // Serializing again yields the same bytes.
  CHECK(serialize_config(back) == text);
}

TEST_CASE("config units convert to SI on load") {
  const SimConfig cfg = parse_config(
      "config = B\n"
      "robot.knee_stiffness = 10.9 N/mm\n"
      "robot.segment_lengths = 150, 150, 150, 70 mm\n"
      "robot.resting_joint_angles = 130, 160, 180 deg\n"
      "sim.control_dt = 1 ms\n"
      "robot.total_mass = 1200 g\n"
      "control.hip_frequency = 1.65 Hz\n");
  CHECK(cfg.robot.knee_stiffness == doctest::Approx(10900.0));
  CHECK(cfg.robot.segment_lengths[3] == doctest::Approx(0.070));
  CHECK(cfg.robot.resting_joint_angles[0] ==
        doctest::Approx(130.0 * M_PI / 180.0));
  CHECK(cfg.sim.control_dt == doctest::Approx(1e-3));
  CHECK(cfg.robot.total_mass == doctest::Approx(1.20));
}

TEST_CASE("config selects the base layout before applying keys") {
  // The base-selection line applies first regardless of its position.
  const SimConfig cfg = parse_config(
      "robot.total_mass = 2.0\n"
      "config = B\n");
  CHECK(cfg.robot.num_segments() == 4);
  CHECK(cfg.robot.total_mass == doctest::Approx(2.0));

  const SimConfig a = parse_config("config = A\n");
  CHECK(a.robot.num_segments() == 3);
  CHECK(a.robot.total_mass == doctest::Approx(1.05));
}

TEST_CASE("config parse errors name the offender") {
  CHECK_THROWS_AS(parse_config("robot.not_a_key = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("config = C\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("robot.total_mass = banana\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("robot.total_mass = 1 furlong\n"), ConfigError);
  CHECK_THROWS_AS(load_config("/tmp/selda_no_such_config.cfg"), ConfigError);
  try {
    parse_config("robot.not_a_key = 1\n");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("not_a_key") != std::string::npos);
  }
}

TEST_CASE("command-line override uses the same schema") {
  SimConfig cfg;
  apply_override(cfg, "sim.duration=5");
  CHECK(cfg.sim.duration == doctest::Approx(5.0));
  apply_override(cfg, "control.hip_amplitude=10 deg");
  CHECK(cfg.control.hip_amplitude == doctest::Approx(10.0 * M_PI / 180.0));
  CHECK_THROWS_AS(apply_override(cfg, "garbage"), ConfigError);
  CHECK_THROWS_AS(apply_override(cfg, "sim.bogus=1"), ConfigError);
}

TEST_CASE("config file load") {
  TempFile f("conf.cfg");
  {
    std::ofstream out(f.path);
    out << "# comment line\n\nconfig = B\nsim.duration = 2\n";
  }
  const SimConfig cfg = load_config(f.path);
  CHECK(cfg.robot.num_segments() == 4);
  CHECK(cfg.sim.duration == doctest::Approx(2.0));
}

TEST_CASE("SVG rendering is deterministic and carries the labels") {
  PlotSpec spec;
  spec.title = "hip angle";
  spec.x_label = "time [s]";
  spec.y_label = "angle [rad]";
  PlotSeries s;
  s.label = "q0";
  for (int i = 0; i < 50; ++i) {
    s.x.push_back(0.01 * i);
    s.y.push_back(std::sin(0.3 * i));
  }
  spec.series.push_back(s);

  const std::string svg = render_svg(spec);
  CHECK(svg == render_svg(spec));
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("hip angle") != std::string::npos);
  CHECK(svg.find("time [s]") != std::string::npos);
  CHECK(svg.find("angle [rad]") != std::string::npos);
  CHECK(svg.find("polyline") != std::string::npos);

  TempFile f("plot.svg");
  write_svg(spec, f.path);
  CHECK(slurp(f.path) == svg);
}

TEST_CASE("box plots draw one glyph per box") {
  PlotSpec spec;
  spec.title = "step durations";
  PlotBox b;
  b.label = "passive";
  b.min = 0.55;
  b.q1 = 0.58;
  b.median = 0.60;
  b.q3 = 0.62;
  b.max = 0.66;
  spec.boxes.push_back(b);
  b.label = "tT=10%";
  spec.boxes.push_back(b);

  const std::string svg = render_svg(spec);
  // Two framing rects (canvas + plot area) plus one rect per box.
  std::size_t count = 0;
  for (std::size_t pos = svg.find("<rect"); pos != std::string::npos;
       pos = svg.find("<rect", pos + 1))
    ++count;
  CHECK(count == 2 + spec.boxes.size());
  CHECK(svg.find("passive") != std::string::npos);
}
