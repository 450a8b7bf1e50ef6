#pragma once

#include <cstdint>
#include <limits>
#include <random>

namespace gdcomp {

// Uniform integer in [lo, hi] by rejection sampling over std::mt19937_64.
// Unlike std::uniform_int_distribution the sequence is the same on every platform.
inline std::uint64_t uniform_u64(std::mt19937_64& rng, std::uint64_t lo, std::uint64_t hi) {
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t span = hi - lo;
  if (span == kMax) return rng();
  const std::uint64_t range = span + 1;
  const std::uint64_t limit = kMax - (kMax % range + 1) % range;
  std::uint64_t x;
  do {
    x = rng();
  } while (x > limit);
  return lo + x % range;
}

}  // namespace gdcomp
