#pragma once

#include <array>
#include <atomic>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "profiler.hpp"
#include "scan.hpp"

namespace gdcomp {

struct WeightVector {
  double compression = 0.25;
  double seq = 0.25;
  double rand = 0.25;
  double scan = 0.25;

  // Throws InvalidArgument unless every weight is >= 0 and they sum to 1 (within 1e-9).
  void validate() const;
  bool operator==(const WeightVector&) const = default;
};

enum class Preset { MC, EQ, LM, EM };

WeightVector preset_weights(Preset p) noexcept;
std::optional<Preset> parse_preset(std::string_view name) noexcept;
std::string_view to_string(Preset p) noexcept;

// Loads {"preset": "mc"} or {"weights": {"compression":..,"seq":..,"rand":..,"scan":..}}.
WeightVector load_weights(const std::filesystem::path& path);

struct UsageStats {
  std::uint64_t seq_access = 0;
  std::uint64_t rand_access = 0;
  std::array<std::uint64_t, 6> scans{};  // indexed like kAllPredicates

  std::uint64_t total_scans() const noexcept;
  bool operator==(const UsageStats&) const = default;
};

// Loads {"seq_access": .., "rand_access": .., "scans": {"equals": .., ...}}.
UsageStats load_usage(const std::filesystem::path& path);

/// Live per-segment counters; increments from any thread are never lost.
class UsageCounters {
 public:
  void record_sequential(std::uint64_t n = 1) noexcept { seq_.fetch_add(n, std::memory_order_relaxed); }
  void record_random(std::uint64_t n = 1) noexcept { rand_.fetch_add(n, std::memory_order_relaxed); }
  void record_scan(Predicate p) noexcept { scans_[static_cast<std::size_t>(p)].fetch_add(1, std::memory_order_relaxed); }
  UsageStats snapshot() const noexcept;

 private:
  std::atomic<std::uint64_t> seq_{0};
  std::atomic<std::uint64_t> rand_{0};
  std::array<std::atomic<std::uint64_t>, 6> scans_{};
};

// Per-metric scores in [0, 1], higher is better.
struct RowScores {
  double compression;
  double seq;
  double rand;
  double scan;
};

// Min-max per column; times are inverted; a constant column scores 1.
std::vector<RowScores> normalize(std::span<const MetricsRow> rows);
double weighted_score(const RowScores& s, const WeightVector& w) noexcept;

/**
 * Index of the row with the highest weighted score. Ties go to the smaller
 * deviation size, then to the encoder with the lower encoder_priority(), then
 * to the earlier row. Throws InvalidArgument on an empty table.
 */
std::size_t select_best_index(std::span<const MetricsRow> rows, const WeightVector& w);
Config select_best(const DiagnosticsTable& table, const WeightVector& w);

// Speed weights proportional to the counters, scaled to 1 - compression_floor.
// All-zero stats give equal weights. Throws InvalidArgument unless 0 <= floor <= 1.
WeightVector weights_from_usage(const UsageStats& stats, double compression_floor);

struct EncodingDecision {
  Config chosen;
  double score = 0;
  double estimated_gain = 0;  // chosen score minus current score
  bool reencode = false;
  WeightVector weights;
};

inline constexpr double kDefaultCompressionFloor = 0.2;
inline constexpr double kDefaultReencodeThreshold = 0.05;

// Normalizes the current row together with the candidates. Throws InvalidArgument on no candidates.
EncodingDecision advise(const MetricsRow& current, std::span<const MetricsRow> candidates, const UsageStats& stats,
                        double threshold = kDefaultReencodeThreshold,
                        double compression_floor = kDefaultCompressionFloor);

}  // namespace gdcomp
