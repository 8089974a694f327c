// Command-line driver: stiffness characterization, single hopping trials,
// the A/B comparison study, ankle-timing sweeps, and CSV-to-SVG plotting.

#include <filesystem>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "selda/config.hpp"
#include "selda/csv.hpp"
#include "selda/elastics.hpp"
#include "selda/experiments.hpp"
#include "selda/svg.hpp"

namespace fs = std::filesystem;
using namespace selda;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfigError = 1;
constexpr int kExitSimAbort = 2;

struct CommonOpts {
  std::string config_path;
  std::vector<std::string> overrides;
};

SimConfig resolve_config(const CommonOpts& opts) {
  SimConfig config;
  if (!opts.config_path.empty()) config = load_config(opts.config_path);
  for (const auto& o : opts.overrides) apply_override(config, o);
  validate(config);
  return config;
}

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--config", opts.config_path, "Config file path");
  cmd->add_option("--set", opts.overrides, "Override, key=value (repeatable)");
}

std::vector<double> parse_timings(const std::string& text) {
  // a:b:step inclusive range, or a comma-separated list.
  std::vector<double> out;
  if (text.find(':') != std::string::npos) {
    double a = 0, b = 0, step = 0;
    char c1 = 0, c2 = 0;
    std::istringstream ss(text);
    if (!(ss >> a >> c1 >> b >> c2 >> step) || c1 != ':' || c2 != ':' ||
        step <= 0)
      throw ConfigError("bad --timings range '" + text + "', want a:b:step");
    for (double t = a; t <= b + step * 1e-9; t += step) out.push_back(t);
  } else {
    std::stringstream ss(text);
    std::string cell;
    while (std::getline(ss, cell, ','))
      if (!cell.empty()) out.push_back(std::stod(cell));
  }
  if (out.empty()) throw ConfigError("empty --timings list");
  return out;
}

std::map<std::string, std::string> trial_metadata(const SimConfig& config,
                                                  const std::string& label) {
  return {{"label", label},
          {"seed", std::to_string(config.sim.seed)},
          {"config_hash",
           std::to_string(std::hash<std::string>{}(serialize_config(config)))},
          {"units", "SI (m, kg, s, N, rad)"}};
}

void report_trial(const TrialResult& r, std::ostream& out) {
  out << r.label;
  if (r.timing) out << " (timing " << format_double(*r.timing) << ")";
  if (!r.error.empty()) {
    out << ": FAILED: " << r.error << "\n";
    return;
  }
  out << ": steps=" << r.metrics.step_count
      << " velocity=" << format_double(r.metrics.mean_velocity)
      << " m/s, step length median="
      << format_double(r.metrics.length_stats.median)
      << " m, revolution time=" << format_double(r.metrics.revolution_time)
      << " s" << (r.metrics.period_two ? " [period-2]" : "") << "\n";
}

int cmd_characterize(const CommonOpts& opts, const std::string& out_path,
                     double max_angle, int steps) {
  const SimConfig config = resolve_config(opts);
  std::vector<double> angles;
  for (int i = 0; i <= steps; ++i)
    angles.push_back(max_angle * i / static_cast<double>(steps));
  const auto result = characterize_stiffness(config.robot, angles);
  write_characterization_csv(result, out_path);
  std::cout << "fitted stiffness " << format_double(result.fitted_stiffness)
            << " N*m/rad, offset " << format_double(result.fitted_offset)
            << " N*m -> " << out_path << "\n";
  return kExitOk;
}

int cmd_hop(const CommonOpts& opts, const std::string& out_path) {
  const SimConfig config = resolve_config(opts);
  const TrajectoryLog log =
      run_trial(config.robot, config.sim, config.control);
  if (!out_path.empty())
    write_log_csv(log, out_path, trial_metadata(config, "hop"));
  if (log.aborted) {
    std::cerr << "simulation aborted: " << log.abort_message << "\n";
    return kExitSimAbort;
  }
  const auto steps = detect_steps(log);
  TrialResult r;
  r.label = "hop";
  if (!steps.empty()) r.metrics = compute_metrics(log, steps, config.robot);
  report_trial(r, std::cout);
  return kExitOk;
}

int cmd_compare(const CommonOpts& opts, const std::string& out_dir) {
  const SimConfig config = resolve_config(opts);
  const auto report = compare_configurations(config.sim, config.control);
  report_trial(report.config_a, std::cout);
  report_trial(report.config_b, std::cout);
  std::cout << "velocity ratio B/A = " << format_double(report.velocity_ratio)
            << ", step length ratio B/A = "
            << format_double(report.step_length_ratio) << "\n"
            << report.footer() << "\n";
  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    write_log_csv(report.config_a.log, out_dir + "/config_a.csv",
                  trial_metadata(config, "config_a"));
    write_log_csv(report.config_b.log, out_dir + "/config_b.csv",
                  trial_metadata(config, "config_b"));
    write_summary_csv({report.config_a, report.config_b},
                      out_dir + "/summary.csv");
  }
  if (!report.config_a.error.empty() || !report.config_b.error.empty())
    return kExitSimAbort;
  return kExitOk;
}

int cmd_sweep(const CommonOpts& opts, const std::string& timings_text,
              const std::string& out_dir) {
  const SimConfig config = resolve_config(opts);
  const std::vector<double> timings = timings_text.empty()
                                          ? default_sweep_timings()
                                          : parse_timings(timings_text);
  const auto results =
      timing_sweep(config.robot, config.sim, config.control, timings);
  bool any_failed = false;
  for (const auto& r : results) {
    report_trial(r, std::cout);
    if (!r.error.empty()) any_failed = true;
  }
  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    for (const auto& r : results)
      write_log_csv(r.log, out_dir + "/" + r.label + ".csv",
                    trial_metadata(config, r.label));
    write_summary_csv(results, out_dir + "/summary.csv");
  }
  return any_failed ? kExitSimAbort : kExitOk;
}

int cmd_plot(const std::string& in_path, const std::string& out_path,
             const std::string& kind, std::vector<std::string> y_columns,
             const std::string& x_column, const std::string& title) {
  const CsvTable table = read_csv(in_path);
  PlotSpec spec;
  spec.title = title.empty() ? fs::path(in_path).stem().string() : title;
  if (kind == "boxplot") {
    // Summary CSV rows become one box per trial from the quartile columns.
    const auto need = [&](const char* name) {
      const int idx = table.column_index(name);
      if (idx < 0)
        throw IoError("csv: summary column '" + std::string(name) +
                      "' missing from " + in_path);
      return idx;
    };
    const std::string base =
        y_columns.empty() ? "step_length" : y_columns.front();
    const int c_min = need((base + "_min").c_str());
    const int c_q1 = need((base + "_q1").c_str());
    const int c_med = need((base + "_median").c_str());
    const int c_q3 = need((base + "_q3").c_str());
    const int c_max = need((base + "_max").c_str());
    const int c_timing = table.column_index("timing");
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
      PlotBox box;
      box.label = c_timing >= 0 && table.rows[i][c_timing] != 0.0
                      ? format_double(table.rows[i][c_timing])
                      : std::to_string(i);
      box.min = table.rows[i][c_min];
      box.q1 = table.rows[i][c_q1];
      box.median = table.rows[i][c_med];
      box.q3 = table.rows[i][c_q3];
      box.max = table.rows[i][c_max];
      spec.boxes.push_back(box);
    }
    spec.x_label = "trial";
    spec.y_label = base;
  } else {
    const std::string xcol = x_column.empty() ? "t" : x_column;
    if (table.column_index(xcol) < 0)
      throw IoError("csv: no column named '" + xcol + "' in " + in_path);
    if (y_columns.empty())
      throw IoError("plot: at least one --y column is required");
    for (const auto& name : y_columns) {
      PlotSeries s;
      s.label = name;
      s.x = table.column(xcol);
      s.y = table.column(name);
      s.color = "";
      s.points_only = (kind == "scatter");
      spec.series.push_back(std::move(s));
    }
    spec.x_label = xcol;
    spec.y_label = y_columns.size() == 1 ? y_columns.front() : "";
  }
  write_svg(spec, out_path);
  std::cout << "wrote " << out_path << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Planar hopping-leg simulator: pneumatic series-elastic ankle "
      "transmission on a boom-mounted compliant leg"};
  app.require_subcommand(1);

  CommonOpts characterize_opts, hop_opts, compare_opts, sweep_opts;
  std::string characterize_out = "stiffness.csv";
  double characterize_max = 2.0;
  int characterize_steps = 40;
  std::string hop_out, compare_out, sweep_out = "results", sweep_timings;
  std::string plot_in, plot_out = "plot.svg", plot_kind = "timeseries";
  std::string plot_x, plot_title;
  std::vector<std::string> plot_y;

  auto* characterize = app.add_subcommand(
      "characterize", "Quasi-static transmission stiffness sweep");
  add_common(characterize, characterize_opts);
  characterize->add_option("--out", characterize_out, "Output CSV path");
  characterize->add_option("--max-angle", characterize_max,
                           "Sweep end, motor rad");
  characterize->add_option("--steps", characterize_steps, "Sample count");

  auto* hop = app.add_subcommand("hop", "Single hopping trial");
  add_common(hop, hop_opts);
  hop->add_option("--out", hop_out, "Trajectory CSV path");

  auto* compare =
      app.add_subcommand("compare", "Passive three- vs four-segment study");
  add_common(compare, compare_opts);
  compare->add_option("--out", compare_out, "Output directory");

  auto* sweep = app.add_subcommand("sweep", "Ankle activation-timing sweep");
  add_common(sweep, sweep_opts);
  sweep->add_option("--timings", sweep_timings,
                    "a:b:step range or comma list of cycle fractions");
  sweep->add_option("--out", sweep_out, "Output directory");

  auto* plot = app.add_subcommand("plot", "Render a CSV to SVG");
  plot->add_option("--in", plot_in, "Input CSV")->required();
  plot->add_option("--out", plot_out, "Output SVG path");
  plot->add_option("--kind", plot_kind, "timeseries | scatter | boxplot")
      ->check(CLI::IsMember({"timeseries", "scatter", "boxplot"}));
  plot->add_option("--x", plot_x, "X column (default t)");
  plot->add_option("--y", plot_y,
                   "Y columns; for boxplot, the stat prefix "
                   "(step_length or step_height)");
  plot->add_option("--title", plot_title, "Plot title");

  CLI11_PARSE(app, argc, argv);

  try {
    if (characterize->parsed())
      return cmd_characterize(characterize_opts, characterize_out,
                              characterize_max, characterize_steps);
    if (hop->parsed()) return cmd_hop(hop_opts, hop_out);
    if (compare->parsed()) return cmd_compare(compare_opts, compare_out);
    if (sweep->parsed()) return cmd_sweep(sweep_opts, sweep_timings, sweep_out);
    if (plot->parsed())
      return cmd_plot(plot_in, plot_out, plot_kind, plot_y, plot_x,
                      plot_title);
  } catch (const SimulationError& e) {
    std::cerr << "simulation error: " << e.what() << "\n";
    return kExitSimAbort;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfigError;
  }
  return kExitConfigError;
}
