#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "scan.hpp"
#include "segment.hpp"

namespace gdcomp {

struct MetricsRow {
  Config config;
  double gain_pct = 0;  // may be negative
  double seq_ns = 0;    // per element
  double rand_ns = 0;   // per element
  double scan_us = 0;   // per scan

  bool operator==(const MetricsRow&) const = default;
};

struct DiagnosticsTable {
  std::string dataset;
  std::string content_hash;
  Encoder encoder = Encoder::Gd1;
  std::vector<MetricsRow> rows;

  bool operator==(const DiagnosticsTable&) const = default;
};

struct ValueRange {
  std::uint32_t min;
  std::uint32_t max;
};

struct WorkloadSpec {
  std::size_t random_offsets = 6553;
  std::size_t queries = 655;
  double range_extension = 0.1;
  unsigned repetitions = 5;  // median is reported
  unsigned warmup = 1;

  // 10% of the length as random offsets, 1% as scan queries.
  static WorkloadSpec defaults_for(std::size_t length);
  std::size_t scan_count() const noexcept { return queries * kAllPredicates.size(); }
};

// 100 * (1 - compressed / original); throws InvalidArgument when original is 0.
double compression_gain(std::size_t compressed_bytes, std::size_t original_bytes);

// Hex FNV-1a 64 over the encoder name and the little-endian value image.
std::string content_hash(std::span<const std::uint32_t> values, Encoder encoder);

ValueRange value_range(std::span<const std::uint32_t> values);

// Uniform offsets in [0, length).
std::vector<std::uint32_t> draw_offsets(std::size_t length, std::size_t count, std::uint64_t seed);
// Uniform over [min - ext*span, max + ext*span], clamped to the u32 domain.
std::vector<std::uint32_t> draw_queries(ValueRange range, std::size_t count, double extension, std::uint64_t seed);

/**
 * Access-test primitives. Each repetition is one access test; a segment
 * without random access is decompressed once at the start of every test and
 * that cost is part of the reported time. Return the median over
 * `repetitions` after `warmup` untimed runs.
 */
double time_sequential_access(const Segment& seg, unsigned repetitions, unsigned warmup = 0);
double time_random_access(const Segment& seg, std::span<const std::uint32_t> offsets, unsigned repetitions,
                          unsigned warmup = 0);
// Microseconds per scan over every (query, predicate) pair.
double time_scans(const Segment& seg, std::span<const std::uint32_t> queries, unsigned repetitions,
                  unsigned warmup = 0);

MetricsRow measure(const Segment& seg, ValueRange range, const WorkloadSpec& workload, std::uint64_t seed);
// Derives the value range with one untimed decompression.
MetricsRow measure(const Segment& seg, const WorkloadSpec& workload, std::uint64_t seed);

// Number of measure() calls made by this process.
std::uint64_t measurement_count() noexcept;

// GD encoders: one row per deviation size 1..30. Other encoders: a single row.
DiagnosticsTable sweep(std::span<const std::uint32_t> values, Encoder encoder, const WorkloadSpec& workload,
                       std::uint64_t seed, std::string dataset = {});

}  // namespace gdcomp
