#include "deqt/gridworld.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include "deqt/error.hpp"

namespace deqt {

const char* to_string(Action action) {
  switch (action) {
    case Action::Up: return "up";
    case Action::Down: return "down";
    case Action::Left: return "left";
    case Action::Right: return "right";
  }
  return "?";
}

void WorldConfig::validate() const {
  if (width < 1 || height < 1) throw ConfigError("world must be at least 1x1");
  if (!contains(start) || !contains(goal)) throw ConfigError("start and goal must lie inside the grid");
  if (start == goal) throw ConfigError("start and goal must differ");
  if (flag_zone_radius < 1) throw ConfigError("flag_zone_radius must be >= 1");
  if (max_steps < 1) throw ConfigError("max_steps must be >= 1");
}

std::vector<Position> flag_zone(const WorldConfig& config) {
  std::vector<Position> zone;
  const int r = config.flag_zone_radius;
  for (int y = config.goal.y - r; y <= config.goal.y + r; ++y) {
    for (int x = config.goal.x - r; x <= config.goal.x + r; ++x) {
      const Position p{x, y};
      if (p != config.goal && config.contains(p)) zone.push_back(p);
    }
  }
  return zone;
}

FlagLayout sample_flag_layout(const WorldConfig& config, int n_flags, RandomStream& rng) {
  std::vector<Position> zone = flag_zone(config);
  if (n_flags < 1 || static_cast<std::size_t>(n_flags) > zone.size()) {
    throw ConfigError("n_flags = " + std::to_string(n_flags) + " outside [1, " +
                      std::to_string(zone.size()) + "]");
  }
  // Partial Fisher-Yates: the first n_flags cells are a uniform draw without replacement.
  for (std::size_t i = 0; i < static_cast<std::size_t>(n_flags); ++i) {
    const std::size_t j = i + rng.below(zone.size() - i);
    std::swap(zone[i], zone[j]);
  }
  zone.resize(static_cast<std::size_t>(n_flags));
  return FlagLayout{std::move(zone)};
}

WorldState initial_state(const WorldConfig& config, const FlagLayout& layout) {
  WorldState state;
  state.agent = config.start;
  state.remaining = layout.flags;
  return state;
}

Position move(Position p, Action action, const WorldConfig& config) {
  Position next = p;
  switch (action) {
    case Action::Up: --next.y; break;
    case Action::Down: ++next.y; break;
    case Action::Left: --next.x; break;
    case Action::Right: ++next.x; break;
  }
  return config.contains(next) ? next : p;
}

StepResult step(WorldState state, Action action, const WorldConfig& config) {
  if (state.done) throw UsageError("step called on a finished episode");

  Transition tr;
  tr.from = state.agent;
  tr.action = action;
  state.agent = move(state.agent, action, config);
  tr.to = state.agent;

  auto flag = std::find(state.remaining.begin(), state.remaining.end(), state.agent);
  if (flag != state.remaining.end()) {
    state.remaining.erase(flag);
    ++state.flags_collected;
    tr.picked_flag = true;
  }
  ++state.steps;

  if (state.agent == config.goal) {
    tr.reached_goal = true;
    tr.reward = static_cast<double>(state.flags_collected);
    state.done = true;
  } else if (state.steps >= config.max_steps) {
    tr.timed_out = true;
    state.done = true;
  }
  return StepResult{std::move(state), tr};
}

double episode_return(int steps_to_goal, int flags_collected, bool reached_goal, double gamma) {
  if (!reached_goal) return 0.0;
  return std::pow(gamma, steps_to_goal) * static_cast<double>(flags_collected);
}

}  // namespace deqt
