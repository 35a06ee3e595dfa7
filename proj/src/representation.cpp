#include "deqt/representation.hpp"

#include <algorithm>

#include "deqt/error.hpp"

namespace deqt {

int channel_count(const Representation& rep) {
  switch (rep.type) {
    case RepresentationType::Global: return rep.n_train_flags + 1;
    case RepresentationType::CompactGlobal: return 3;
    case RepresentationType::Local: return 2;
  }
  return 0;
}

int encode_channel(const Representation& rep, int remaining, bool flag_at_pos, Phase phase) {
  if (remaining < 0) throw UsageError("negative remaining-flag count");
  switch (rep.type) {
    case RepresentationType::Global:
      if (rep.n_train_flags < 1) throw UsageError("global representation needs n_train_flags >= 1");
      if (phase == Phase::Testing) return std::min(remaining, rep.n_train_flags);
      if (remaining > rep.n_train_flags) {
        throw UsageError("remaining flags exceed the training flag count of a global encoder");
      }
      return remaining;
    case RepresentationType::CompactGlobal:
      return remaining > 1 ? 2 : remaining;
    case RepresentationType::Local:
      return flag_at_pos ? 1 : 0;
  }
  return 0;
}

StateIndex encode(const Representation& rep, Position pos, int remaining, bool flag_at_pos,
                  Phase phase) {
  return StateIndex{pos.x, pos.y, encode_channel(rep, remaining, flag_at_pos, phase)};
}

std::string to_string(RepresentationType type) {
  switch (type) {
    case RepresentationType::Global: return "global";
    case RepresentationType::CompactGlobal: return "compact";
    case RepresentationType::Local: return "local";
  }
  return "?";
}

RepresentationType parse_representation_type(const std::string& name) {
  if (name == "global") return RepresentationType::Global;
  if (name == "compact") return RepresentationType::CompactGlobal;
  if (name == "local") return RepresentationType::Local;
  throw UsageError("unknown representation '" + name + "' (expected global, compact or local)");
}

}  // namespace deqt
