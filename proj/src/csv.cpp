#include "selda/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace selda {

std::string format_double(double value) {
  char buf[40];
  // Shortest representation that round-trips: try increasing precision.
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof(buf), "%.*g", prec, value);
    double back = 0.0;
    std::sscanf(buf, "%lf", &back);
    if (back == value) return buf;
  }
  return buf;
}

int CsvTable::column_index(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i)
    if (columns[i] == name) return static_cast<int>(i);
  return -1;
}

std::vector<double> CsvTable::column(const std::string& name) const {
  const int idx = column_index(name);
  if (idx < 0) throw IoError("csv: no column named '" + name + "'");
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r[idx]);
  return out;
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  return out;
}

void write_metadata(std::ofstream& out,
                    const std::map<std::string, std::string>& metadata) {
  for (const auto& [key, value] : metadata)
    out << "# " << key << " = " << value << "\n";
}

}  // namespace

void write_log_csv(const TrajectoryLog& log, const std::string& path,
                   const std::map<std::string, std::string>& metadata) {
  auto out = open_out(path);
  write_metadata(out, metadata);
  if (log.aborted) out << "# aborted = " << log.abort_message << "\n";
  const auto cols = log.column_names();
  for (std::size_t i = 0; i < cols.size(); ++i)
    out << cols[i] << (i + 1 < cols.size() ? "," : "\n");
  for (const auto& r : log.records) {
    out << format_double(r.t) << ',' << format_double(r.x_com) << ','
        << format_double(r.y_com) << ',' << format_double(r.vx_com) << ','
        << format_double(r.vy_com);
    for (double a : r.joint_angles) out << ',' << format_double(a);
    for (double v : r.joint_rates) out << ',' << format_double(v);
    out << ',' << format_double(r.hip_torque) << ','
        << format_double(r.ankle_motor_torque) << ','
        << format_double(r.grf_x) << ',' << format_double(r.grf_y) << ','
        << (r.contact ? 1 : 0) << ',' << format_double(r.tip_y) << ','
        << format_double(r.selda_deflection) << ',' << format_double(r.phase)
        << ',' << format_double(r.energy) << ','
        << format_double(r.actuator_work) << ','
        << format_double(r.damping_work) << ','
        << format_double(r.contact_work) << "\n";
  }
  if (!out) throw IoError("write failed for '" + path + "'");
}

void write_summary_csv(const std::vector<TrialResult>& results,
                       const std::string& path,
                       const std::map<std::string, std::string>& metadata) {
  auto out = open_out(path);
  write_metadata(out, metadata);
  out << "label,timing,mean_velocity,revolution_time,step_count,"
         "step_length_mean,step_length_median,step_length_q1,step_length_q3,"
         "step_length_min,step_length_max,"
         "step_height_mean,step_height_median,step_height_q1,step_height_q3,"
         "step_height_min,step_height_max,"
         "step_duration_mean,period_two\n";
  for (const auto& r : results) {
    const auto& m = r.metrics;
    out << r.label << ',' << (r.timing ? format_double(*r.timing) : "")
        << ',' << format_double(m.mean_velocity) << ','
        << format_double(m.revolution_time) << ',' << m.step_count << ','
        << format_double(m.length_stats.mean) << ','
        << format_double(m.length_stats.median) << ','
        << format_double(m.length_stats.q1) << ','
        << format_double(m.length_stats.q3) << ','
        << format_double(m.length_stats.min) << ','
        << format_double(m.length_stats.max) << ','
        << format_double(m.height_stats.mean) << ','
        << format_double(m.height_stats.median) << ','
        << format_double(m.height_stats.q1) << ','
        << format_double(m.height_stats.q3) << ','
        << format_double(m.height_stats.min) << ','
        << format_double(m.height_stats.max) << ','
        << format_double(m.duration_stats.mean) << ','
        << (m.period_two ? 1 : 0) << "\n";
  }
  if (!out) throw IoError("write failed for '" + path + "'");
}

void write_characterization_csv(const StiffnessCharacterization& c,
                                const std::string& path) {
  auto out = open_out(path);
  out << "# fitted_stiffness_Nm_per_rad = " << format_double(c.fitted_stiffness)
      << "\n";
  out << "# fitted_offset_Nm = " << format_double(c.fitted_offset) << "\n";
  out << "angle,torque\n";
  for (const auto& [angle, torque] : c.samples)
    out << format_double(angle) << ',' << format_double(torque) << "\n";
  if (!out) throw IoError("write failed for '" + path + "'");
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  CsvTable table;
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      table.metadata.push_back(line.substr(1));
      continue;
    }
    std::stringstream ss(line);
    std::string cell;
    if (!have_header) {
      while (std::getline(ss, cell, ',')) table.columns.push_back(cell);
      have_header = true;
      continue;
    }
    std::vector<double> row;
    row.reserve(table.columns.size());
    while (std::getline(ss, cell, ',')) {
      try {
        row.push_back(cell.empty() ? 0.0 : std::stod(cell));
      } catch (const std::exception&) {
        row.push_back(0.0);  // non-numeric cells (labels) read as 0
      }
    }
    row.resize(table.columns.size(), 0.0);
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace selda
