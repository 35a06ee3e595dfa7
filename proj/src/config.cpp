#include "deqt/config.hpp"

#include <charconv>
#include <sstream>

#include "deqt/error.hpp"
#include "deqt/io.hpp"

namespace deqt {

const std::vector<std::string>& setup_names() {
  static const std::vector<std::string> names = {
      "Global-1-8", "Global-2-8", "Global-3-8", "Global-4-8", "Global-5-8", "Global-6-8",
      "Global-7-8", "Global-8-8", "Compact",    "Local-1-8",  "Local-8-8"};
  return names;
}

ExperimentConfig preset(const std::string& name) {
  ExperimentConfig config;
  if (name.starts_with("Global-") && name.size() == 10 && name.ends_with("-8")) {
    const int n = name[7] - '0';
    if (n >= 1 && n <= 8) {
      config.n_train_flags = n;
      config.representation = Representation::global(n);
      return config;
    }
  }
  if (name == "Compact") {
    config.n_train_flags = 8;
    config.representation = Representation::compact();
    return config;
  }
  if (name == "Local-1-8" || name == "Local-8-8") {
    config.n_train_flags = name == "Local-1-8" ? 1 : 8;
    config.representation = Representation::local();
    return config;
  }
  throw UsageError("unknown setup '" + name + "'");
}

namespace {

template <typename Int>
Int parse_int(const std::string& key, const std::string& value) {
  Int out{};
  const char* end = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end) throw UsageError("bad integer for '" + key + "': '" + value + "'");
  return out;
}

double parse_real(const std::string& key, const std::string& value) {
  try {
    return parse_double(value);
  } catch (const std::exception&) {
    throw UsageError("bad number for '" + key + "': '" + value + "'");
  }
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw UsageError("bad boolean for '" + key + "': '" + value + "'");
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

void apply_override(ExperimentConfig& c, const std::string& key, const std::string& value) {
  if (key == "width") {
    c.world.width = parse_int<int>(key, value);
    c.world.goal.x = c.world.width - 1;
  } else if (key == "height") {
    c.world.height = parse_int<int>(key, value);
    c.world.goal.y = c.world.height - 1;
  } else if (key == "start_x") {
    c.world.start.x = parse_int<int>(key, value);
  } else if (key == "start_y") {
    c.world.start.y = parse_int<int>(key, value);
  } else if (key == "goal_x") {
    c.world.goal.x = parse_int<int>(key, value);
  } else if (key == "goal_y") {
    c.world.goal.y = parse_int<int>(key, value);
  } else if (key == "flag_radius") {
    c.world.flag_zone_radius = parse_int<int>(key, value);
  } else if (key == "max_steps") {
    c.world.max_steps = parse_int<int>(key, value);
  } else if (key == "representation") {
    const RepresentationType type = parse_representation_type(value);
    c.representation = type == RepresentationType::Global ? Representation::global(c.n_train_flags)
                       : type == RepresentationType::CompactGlobal ? Representation::compact()
                                                                   : Representation::local();
  } else if (key == "n_train_flags") {
    c.n_train_flags = parse_int<int>(key, value);
    if (c.representation.type == RepresentationType::Global) c.representation.n_train_flags = c.n_train_flags;
  } else if (key == "alpha") {
    c.params.alpha = parse_real(key, value);
  } else if (key == "gamma") {
    c.params.gamma = parse_real(key, value);
  } else if (key == "q_init") {
    c.params.q_init = parse_real(key, value);
  } else if (key == "t0") {
    c.schedule.t0 = parse_real(key, value);
  } else if (key == "decay") {
    c.schedule.decay = parse_real(key, value);
  } else if (key == "update_every") {
    c.schedule.update_every = parse_int<std::uint64_t>(key, value);
  } else if (key == "t_min") {
    c.schedule.t_min = parse_real(key, value);
  } else if (key == "temperature_unit") {
    if (value == "actions") {
      c.schedule.unit = TemperatureUnit::Actions;
    } else if (value == "episodes") {
      c.schedule.unit = TemperatureUnit::Episodes;
    } else {
      throw UsageError("temperature_unit must be 'actions' or 'episodes'");
    }
  } else if (key == "episodes") {
    c.episodes = parse_int<int>(key, value);
  } else if (key == "bins") {
    c.histogram.n_bins = parse_int<int>(key, value);
  } else if (key == "degenerate_floor") {
    c.histogram.degenerate_floor = parse_real(key, value);
  } else if (key == "entropy_values") {
    if (value == "state_action") {
      c.entropy_values = EntropyValues::StateAction;
    } else if (value == "state_max") {
      c.entropy_values = EntropyValues::StateMax;
    } else {
      throw UsageError("entropy_values must be 'state_action' or 'state_max'");
    }
  } else if (key == "include_channel0") {
    c.include_channel0 = parse_bool(key, value);
  } else if (key == "timeout_terminal_bootstrap") {
    c.timeout_terminal_bootstrap = parse_bool(key, value);
  } else if (key == "tests") {
    c.n_tests = parse_int<int>(key, value);
  } else if (key == "test_temperature") {
    c.test_temperature = parse_real(key, value);
  } else if (key == "runs") {
    c.n_runs = parse_int<int>(key, value);
  } else if (key == "seed") {
    c.master_seed = parse_int<std::uint64_t>(key, value);
  } else if (key == "snapshot_stride") {
    c.snapshot_stride = parse_int<int>(key, value);
  } else {
    throw UsageError("unknown configuration key '" + key + "'");
  }
}

std::pair<std::string, std::string> split_assignment(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos) throw UsageError("expected key=value, got '" + text + "'");
  std::string key = trim(text.substr(0, eq));
  if (key.empty()) throw UsageError("empty key in '" + text + "'");
  return {std::move(key), trim(text.substr(eq + 1))};
}

void apply_config_stream(ExperimentConfig& config, std::istream& in) {
  std::string line;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto [key, value] = split_assignment(line);
    apply_override(config, key, value);
  }
}

std::vector<std::pair<std::string, std::string>> to_key_values(const ExperimentConfig& c) {
  auto i = [](auto v) { return std::to_string(v); };
  auto b = [](bool v) { return std::string(v ? "true" : "false"); };
  return {
      {"width", i(c.world.width)},
      {"height", i(c.world.height)},
      {"start_x", i(c.world.start.x)},
      {"start_y", i(c.world.start.y)},
      {"goal_x", i(c.world.goal.x)},
      {"goal_y", i(c.world.goal.y)},
      {"flag_radius", i(c.world.flag_zone_radius)},
      {"max_steps", i(c.world.max_steps)},
      {"n_train_flags", i(c.n_train_flags)},
      {"representation", to_string(c.representation.type)},
      {"alpha", format_double(c.params.alpha)},
      {"gamma", format_double(c.params.gamma)},
      {"q_init", format_double(c.params.q_init)},
      {"t0", format_double(c.schedule.t0)},
      {"decay", format_double(c.schedule.decay)},
      {"update_every", i(c.schedule.update_every)},
      {"t_min", format_double(c.schedule.t_min)},
      {"temperature_unit", c.schedule.unit == TemperatureUnit::Actions ? "actions" : "episodes"},
      {"episodes", i(c.episodes)},
      {"bins", i(c.histogram.n_bins)},
      {"degenerate_floor", format_double(c.histogram.degenerate_floor)},
      {"entropy_values", c.entropy_values == EntropyValues::StateAction ? "state_action" : "state_max"},
      {"include_channel0", b(c.include_channel0)},
      {"timeout_terminal_bootstrap", b(c.timeout_terminal_bootstrap)},
      {"tests", i(c.n_tests)},
      {"test_temperature", format_double(c.test_temperature)},
      {"runs", i(c.n_runs)},
      {"seed", i(c.master_seed)},
      {"snapshot_stride", i(c.snapshot_stride)},
  };
}

std::string format_config(const ExperimentConfig& config) {
  std::ostringstream out;
  for (const auto& [key, value] : to_key_values(config)) out << key << " = " << value << '\n';
  return out.str();
}

}  // namespace deqt
