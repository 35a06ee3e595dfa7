#pragma once

#include <istream>
#include <string>
#include <utility>
#include <vector>

#include "deqt/experiment.hpp"

namespace deqt {

/// Names of the built-in setups, in report order.
const std::vector<std::string>& setup_names();

/// Preset for a named setup ("Global-3-8", "Compact", "Local-8-8", ...).
/// Throws UsageError for an unknown name.
ExperimentConfig preset(const std::string& name);

/// Apply one flat key=value override. Throws UsageError on an unknown key
/// or a malformed value.
void apply_override(ExperimentConfig& config, const std::string& key, const std::string& value);

/// Splits "key=value".
std::pair<std::string, std::string> split_assignment(const std::string& text);

/// Reads `key = value` lines ('#' starts a comment) and applies them in order.
void apply_config_stream(ExperimentConfig& config, std::istream& in);

/// Fully resolved configuration as ordered key/value pairs. Feeding these back
/// through apply_override reproduces the config.
std::vector<std::pair<std::string, std::string>> to_key_values(const ExperimentConfig& config);

std::string format_config(const ExperimentConfig& config);

}  // namespace deqt
