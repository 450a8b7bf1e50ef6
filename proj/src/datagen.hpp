#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace gdcomp {

enum class DatasetKind { UniformRandom, SortedEquidistant, Years, Months, TimeSeries, PrimaryKey };

inline constexpr DatasetKind kAllDatasets[] = {DatasetKind::UniformRandom, DatasetKind::SortedEquidistant,
                                               DatasetKind::Years,         DatasetKind::Months,
                                               DatasetKind::TimeSeries,    DatasetKind::PrimaryKey};

std::string_view to_string(DatasetKind k) noexcept;
std::optional<DatasetKind> parse_dataset_kind(std::string_view name) noexcept;

struct DatasetSpec {
  static constexpr std::size_t kDefaultLength = 65535;

  DatasetKind kind = DatasetKind::UniformRandom;
  std::size_t length = kDefaultLength;
  std::uint64_t seed = 0;
};

/**
 * @brief Generates one of the synthetic evaluation datasets.
 *
 * Stochastic kinds draw from std::mt19937_64 seeded with spec.seed; bounded
 * draws use rejection sampling, so output is identical on every platform.
 *
 * - UniformRandom: [0, 2^32)
 * - SortedEquidistant: 0, 5, 10, ...
 * - Years: [1900, 2100]
 * - Months: [1, 12]
 * - TimeSeries: random walk from 10^6 with steps in [-256, +512], clamped to the u32 domain
 * - PrimaryKey: 1, 2, 3, ...
 *
 * Throws InvalidArgument for zero length.
 */
std::vector<std::uint32_t> generate(const DatasetSpec& spec);

}  // namespace gdcomp
