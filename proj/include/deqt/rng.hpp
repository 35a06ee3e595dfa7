#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace deqt {

/// Seeded pseudo-random stream.
///
/// Built on std::mt19937_64 seeded through std::seed_seq, both of which are
/// fully specified by the standard, so a (seed, stream) pair yields the same
/// sequence on every conforming platform. The distributions below are
/// implemented here rather than taken from <random> because the standard
/// distributions are implementation-defined.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t next() { return engine_(); }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, n). n must be positive.
  std::size_t below(std::size_t n);

 private:
  std::mt19937_64 engine_;
};

/// Stream identifiers used to split one run seed into independent streams.
namespace streams {
inline constexpr std::uint64_t kTraining = 0;
inline constexpr std::uint64_t kTesting = 1;
}  // namespace streams

/// Run-level seed: master_seed XOR run_index.
inline std::uint64_t run_seed(std::uint64_t master_seed, std::uint64_t run_index) {
  return master_seed ^ run_index;
}

}  // namespace deqt
