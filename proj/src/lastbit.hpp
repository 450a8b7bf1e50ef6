#pragma once

#include <cstdint>
#include <string>

#include "error.hpp"

namespace gdcomp {

/// Number of low-order bits kept as deviation, 1..30.
class DeviationSize {
 public:
  static constexpr unsigned kMin = 1;
  static constexpr unsigned kMax = 30;

  constexpr explicit DeviationSize(unsigned bits) : bits_(bits) {
    if (bits < kMin || bits > kMax) {
      fail(ErrorCode::InvalidArgument, "deviation size must be in 1..30 bits, got " + std::to_string(bits));
    }
  }

  constexpr unsigned bits() const noexcept { return bits_; }
  constexpr unsigned base_bits() const noexcept { return 32 - bits_; }
  constexpr std::uint32_t deviation_mask() const noexcept { return (std::uint32_t{1} << bits_) - 1; }

  constexpr bool operator==(const DeviationSize&) const = default;

 private:
  unsigned bits_;
};

struct BaseDeviation {
  std::uint32_t base;
  std::uint32_t deviation;

  constexpr bool operator==(const BaseDeviation&) const = default;
};

// Inclusive value range covered by one base.
struct Region {
  std::uint32_t lo;
  std::uint32_t hi;

  constexpr bool operator==(const Region&) const = default;
};

// LastBit transform: the n low bits are the deviation, the remaining high bits the base.
constexpr BaseDeviation split(std::uint32_t value, DeviationSize n) noexcept {
  return {value >> n.bits(), value & n.deviation_mask()};
}

constexpr std::uint32_t merge(std::uint32_t base, std::uint32_t deviation, DeviationSize n) noexcept {
  return (base << n.bits()) | deviation;
}

constexpr std::uint32_t merge(BaseDeviation bd, DeviationSize n) noexcept { return merge(bd.base, bd.deviation, n); }

// base must be < 2^(32-n).
constexpr Region region_bounds(std::uint32_t base, DeviationSize n) noexcept {
  const std::uint32_t lo = base << n.bits();
  return {lo, lo + n.deviation_mask()};
}

}  // namespace gdcomp
