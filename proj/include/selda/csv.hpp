#pragma once

#include <map>
#include <string>
#include <vector>

#include "selda/elastics.hpp"
#include "selda/experiments.hpp"

namespace selda {

/// Raised on file I/O failures; the message names the path.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Shortest decimal representation that round-trips the exact double.
std::string format_double(double value);

/// Numeric table read back from a CSV written by this module.
struct CsvTable {
  std::vector<std::string> metadata;  // '#'-prefixed lines, without the '#'
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  int column_index(const std::string& name) const;  // -1 when absent
  std::vector<double> column(const std::string& name) const;
};

/// Trajectory log as CSV: '#' metadata lines, a header line, then one row
/// per sample in the documented fixed column order. Deterministic bytes.
void write_log_csv(const TrajectoryLog& log, const std::string& path,
                   const std::map<std::string, std::string>& metadata = {});

/// Sweep/comparison summary: one row per trial.
void write_summary_csv(const std::vector<TrialResult>& results,
                       const std::string& path,
                       const std::map<std::string, std::string>& metadata = {});

/// Stiffness characterization as a two-column (angle, torque) CSV with the
/// fitted slope recorded in a '#' metadata line.
void write_characterization_csv(const StiffnessCharacterization& c,
                                const std::string& path);

CsvTable read_csv(const std::string& path);

}  // namespace selda
