#pragma once

#include <string>

#include "deqt/gridworld.hpp"

namespace deqt {

enum class RepresentationType {
  /// Channel = number of flags still to collect (N+1 channels for N training flags).
  Global,
  /// Three channels: 0 remaining, exactly 1 remaining, more than 1 remaining.
  CompactGlobal,
  /// Two channels: whether the agent's cell held a flag on arrival.
  Local,
};

struct Representation {
  RepresentationType type = RepresentationType::Global;
  /// Only meaningful for Global.
  int n_train_flags = 1;

  static Representation global(int n_train_flags) { return {RepresentationType::Global, n_train_flags}; }
  static Representation compact() { return {RepresentationType::CompactGlobal, 0}; }
  static Representation local() { return {RepresentationType::Local, 0}; }
};

enum class Phase { Training, Testing };

struct StateIndex {
  int x = 0;
  int y = 0;
  int channel = 0;

  friend bool operator==(const StateIndex&, const StateIndex&) = default;
};

int channel_count(const Representation& rep);

/// Flag channel for the given observation. During testing a Global encoder
/// holds the channel at N until fewer than N flags remain.
int encode_channel(const Representation& rep, int remaining, bool flag_at_pos, Phase phase);

StateIndex encode(const Representation& rep, Position pos, int remaining, bool flag_at_pos,
                  Phase phase);

std::string to_string(RepresentationType type);
RepresentationType parse_representation_type(const std::string& name);

}  // namespace deqt
