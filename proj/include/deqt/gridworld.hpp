#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <vector>

#include "deqt/rng.hpp"

namespace deqt {

/// Grid cell. x is the column, y is the row; y grows downward.
struct Position {
  int x = 0;
  int y = 0;

  friend auto operator<=>(const Position&, const Position&) = default;
};

enum class Action : std::uint8_t { Up = 0, Down = 1, Left = 2, Right = 3 };

inline constexpr std::size_t kActionCount = 4;
inline constexpr std::array<Action, kActionCount> kActions = {Action::Up, Action::Down,
                                                             Action::Left, Action::Right};

const char* to_string(Action action);

struct WorldConfig {
  int width = 10;
  int height = 10;
  Position start{0, 0};
  Position goal{9, 9};
  int flag_zone_radius = 2;
  int max_steps = 1000;

  bool contains(Position p) const { return p.x >= 0 && p.x < width && p.y >= 0 && p.y < height; }

  /// Throws ConfigError when the configuration is unusable.
  void validate() const;
};

struct FlagLayout {
  std::vector<Position> flags;
};

struct WorldState {
  Position agent;
  std::vector<Position> remaining;
  int steps = 0;
  bool done = false;
  int flags_collected = 0;
};

struct Transition {
  Position from;
  Action action = Action::Up;
  Position to;
  /// The destination cell held a flag when the agent arrived (and it was collected).
  bool picked_flag = false;
  bool reached_goal = false;
  bool timed_out = false;
  double reward = 0.0;

  bool terminal() const { return reached_goal; }
};

struct StepResult {
  WorldState state;
  Transition transition;
};

/// Cells within Chebyshev distance flag_zone_radius of the goal, excluding the
/// goal, clipped to the grid. Row-major order (y, then x).
std::vector<Position> flag_zone(const WorldConfig& config);

/// n_flags distinct cells drawn uniformly without replacement from the flag zone.
FlagLayout sample_flag_layout(const WorldConfig& config, int n_flags, RandomStream& rng);

WorldState initial_state(const WorldConfig& config, const FlagLayout& layout);

/// Position after moving one cell, staying put at the border.
Position move(Position p, Action action, const WorldConfig& config);

/// Advance one action. Takes the state by value so callers can move it through
/// without reallocating the flag list.
StepResult step(WorldState state, Action action, const WorldConfig& config);

/// Discounted return of an episode whose only reward is paid on reaching the goal.
double episode_return(int steps_to_goal, int flags_collected, bool reached_goal, double gamma);

}  // namespace deqt
