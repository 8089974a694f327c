#pragma once

#include <string>

#include "selda/control.hpp"
#include "selda/params.hpp"

namespace selda {

/// A complete, validated experiment configuration.
struct SimConfig {
  RobotParams robot = default_params(LegConfig::B);
  SimSettings sim;
  ControllerConfig control;
};

/// Loads the key-value config schema (one `key = value [unit]` pair per
/// line, '#' comments). A `config = A|B` line selects the base parameter
/// set before other keys apply. Values convert to SI immediately; the
/// annotated units mm, cm, deg, N/mm, ms, g are accepted. Unset keys keep
/// their documented defaults. Throws ConfigError on parse or validation
/// failure, naming the offending key.
SimConfig load_config(const std::string& path);

/// Applies a single `key=value` override (same schema as the file).
void apply_override(SimConfig& config, const std::string& assignment);

/// Validates all three sections.
void validate(const SimConfig& config);

/// Serializes every key in SI units; parsing the result reproduces the
/// exact same configuration.
std::string serialize_config(const SimConfig& config);

/// Parses serialize_config output (or any schema text).
SimConfig parse_config(const std::string& text);

}  // namespace selda
