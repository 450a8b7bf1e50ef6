#include "datagen.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <random>
#include <utility>

#include "error.hpp"
#include "rng.hpp"

namespace gdcomp {

namespace {

constexpr std::array<std::pair<DatasetKind, std::string_view>, 6> kNames = {{
    {DatasetKind::UniformRandom, "uniform"},
    {DatasetKind::SortedEquidistant, "sorted-equidistant"},
    {DatasetKind::Years, "years"},
    {DatasetKind::Months, "months"},
    {DatasetKind::TimeSeries, "time-series"},
    {DatasetKind::PrimaryKey, "primary-key"},
}};

std::uint32_t in_range(std::mt19937_64& rng, std::uint32_t lo, std::uint32_t hi) {
  return static_cast<std::uint32_t>(uniform_u64(rng, lo, hi));
}

}  // namespace

std::string_view to_string(DatasetKind k) noexcept {
  for (const auto& [kind, name] : kNames) {
    if (kind == k) return name;
  }
  return "?";
}

std::optional<DatasetKind> parse_dataset_kind(std::string_view name) noexcept {
  for (const auto& [kind, n] : kNames) {
    if (n == name) return kind;
  }
  return std::nullopt;
}

std::vector<std::uint32_t> generate(const DatasetSpec& spec) {
  if (spec.length == 0) fail(ErrorCode::InvalidArgument, "dataset length must be at least 1");
  if (spec.length > std::numeric_limits<std::uint32_t>::max()) {
    fail(ErrorCode::InvalidArgument, "dataset length exceeds the 32-bit offset range");
  }

  std::mt19937_64 rng(spec.seed);
  std::vector<std::uint32_t> out(spec.length);
  switch (spec.kind) {
    case DatasetKind::UniformRandom:
      for (auto& v : out) v = static_cast<std::uint32_t>(rng() >> 32);
      break;
    case DatasetKind::SortedEquidistant:
      for (std::size_t i = 0; i < out.size(); ++i) out[i] = static_cast<std::uint32_t>(5 * i);
      break;
    case DatasetKind::Years:
      for (auto& v : out) v = in_range(rng, 1900, 2100);
      break;
    case DatasetKind::Months:
      for (auto& v : out) v = in_range(rng, 1, 12);
      break;
    case DatasetKind::TimeSeries: {
      std::int64_t level = 1'000'000;
      constexpr std::int64_t kMax = std::numeric_limits<std::uint32_t>::max();
      for (auto& v : out) {
        v = static_cast<std::uint32_t>(level);
        const std::int64_t step = static_cast<std::int64_t>(uniform_u64(rng, 0, 768)) - 256;
        level = std::clamp<std::int64_t>(level + step, 0, kMax);
      }
      break;
    }
    case DatasetKind::PrimaryKey:
      for (std::size_t i = 0; i < out.size(); ++i) out[i] = static_cast<std::uint32_t>(i + 1);
      break;
  }
  return out;
}

}  // namespace gdcomp
