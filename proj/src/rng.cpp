#include "deqt/rng.hpp"

#include <limits>

#include "deqt/error.hpp"

namespace deqt {

namespace {

std::mt19937_64 seeded_engine(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t stream)
    : engine_(seeded_engine(seed, stream)) {}

std::size_t RandomStream::below(std::size_t n) {
  if (n == 0) throw UsageError("RandomStream::below: n must be positive");
  const std::uint64_t bound = n;
  // Reject the low partial block so every residue is equally likely.
  const std::uint64_t threshold = (std::numeric_limits<std::uint64_t>::max() - bound + 1) % bound;
  for (;;) {
    const std::uint64_t r = engine_();
    if (r >= threshold) return static_cast<std::size_t>(r % bound);
  }
}

}  // namespace deqt
