#include "profiler.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <random>

#include "error.hpp"
#include "lastbit.hpp"
#include "rng.hpp"

namespace gdcomp {

namespace {

using Clock = std::chrono::steady_clock;

std::atomic<std::uint64_t> g_measurements{0};

// Keeps results observable so the timed loops are not optimized away.
volatile std::uint64_t g_sink = 0;

double elapsed_ns(Clock::time_point start) {
  return static_cast<double>(std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start).count());
}

template <class F>
double median_of(unsigned repetitions, unsigned warmup, F&& run_once) {
  for (unsigned i = 0; i < warmup; ++i) run_once();
  std::vector<double> samples;
  samples.reserve(repetitions);
  for (unsigned i = 0; i < std::max(1u, repetitions); ++i) samples.push_back(run_once());
  std::sort(samples.begin(), samples.end());
  const std::size_t mid = samples.size() / 2;
  return samples.size() % 2 == 1 ? samples[mid] : (samples[mid - 1] + samples[mid]) / 2;
}

std::uint64_t fold(std::span<const std::uint32_t> out) {
  std::uint64_t acc = 0;
  for (const std::uint32_t v : out) acc += v;
  return acc;
}

// Timing fields must stay positive even when the clock resolution is coarse.
double positive(double v) { return std::max(v, std::numeric_limits<double>::min()); }

}  // namespace

WorkloadSpec WorkloadSpec::defaults_for(std::size_t length) {
  WorkloadSpec w;
  w.random_offsets = std::max<std::size_t>(1, length / 10);
  w.queries = std::max<std::size_t>(1, length / 100);
  return w;
}

double compression_gain(std::size_t compressed_bytes, std::size_t original_bytes) {
  if (original_bytes == 0) fail(ErrorCode::InvalidArgument, "original size must be positive");
  return 100.0 * (1.0 - static_cast<double>(compressed_bytes) / static_cast<double>(original_bytes));
}

std::string content_hash(std::span<const std::uint32_t> values, Encoder encoder) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  const auto mix = [&h](std::uint8_t byte) {
    h ^= byte;
    h *= 0x100000001b3ULL;
  };
  for (const char c : to_string(encoder)) mix(static_cast<std::uint8_t>(c));
  mix(0);
  for (const std::uint32_t v : values) {
    for (unsigned k = 0; k < 4; ++k) mix(static_cast<std::uint8_t>(v >> (8 * k)));
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

ValueRange value_range(std::span<const std::uint32_t> values) {
  if (values.empty()) fail(ErrorCode::InvalidArgument, "value range of an empty sequence");
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  return {*lo, *hi};
}

std::vector<std::uint32_t> draw_offsets(std::size_t length, std::size_t count, std::uint64_t seed) {
  if (length == 0) fail(ErrorCode::InvalidArgument, "cannot draw offsets from an empty segment");
  std::mt19937_64 rng(seed);
  std::vector<std::uint32_t> out(count);
  for (auto& o : out) o = static_cast<std::uint32_t>(uniform_u64(rng, 0, length - 1));
  return out;
}

std::vector<std::uint32_t> draw_queries(ValueRange range, std::size_t count, double extension, std::uint64_t seed) {
  const double span = static_cast<double>(range.max) - static_cast<double>(range.min);
  const double ext = std::floor(span * extension);
  constexpr double kTop = std::numeric_limits<std::uint32_t>::max();
  const auto lo = static_cast<std::uint64_t>(std::clamp(static_cast<double>(range.min) - ext, 0.0, kTop));
  const auto hi = static_cast<std::uint64_t>(std::clamp(static_cast<double>(range.max) + ext, 0.0, kTop));
  std::mt19937_64 rng(seed);
  std::vector<std::uint32_t> out(count);
  for (auto& q : out) q = static_cast<std::uint32_t>(uniform_u64(rng, lo, hi));
  return out;
}

double time_sequential_access(const Segment& seg, unsigned repetitions, unsigned warmup) {
  const std::size_t n = seg.size();
  std::vector<std::uint32_t> offsets(n);
  std::iota(offsets.begin(), offsets.end(), 0u);
  std::vector<std::uint32_t> out(n);
  const double ns = median_of(repetitions, warmup, [&] {
    const auto start = Clock::now();
    if (seg.random_access()) {
      seg.gather(offsets, out);
    } else {
      const std::vector<std::uint32_t> values = seg.decompress();
      for (std::size_t i = 0; i < n; ++i) out[i] = values[i];
    }
    const double t = elapsed_ns(start);
    g_sink = g_sink + fold(out);
    return t;
  });
  return positive(ns / static_cast<double>(n));
}

double time_random_access(const Segment& seg, std::span<const std::uint32_t> offsets, unsigned repetitions,
                          unsigned warmup) {
  if (offsets.empty()) fail(ErrorCode::InvalidArgument, "random access test needs at least one offset");
  std::vector<std::uint32_t> out(offsets.size());
  const double ns = median_of(repetitions, warmup, [&] {
    const auto start = Clock::now();
    if (seg.random_access()) {
      seg.gather(offsets, out);
    } else {
      const std::vector<std::uint32_t> values = seg.decompress();
      for (std::size_t k = 0; k < offsets.size(); ++k) out[k] = values[offsets[k]];
    }
    const double t = elapsed_ns(start);
    g_sink = g_sink + fold(out);
    return t;
  });
  return positive(ns / static_cast<double>(offsets.size()));
}

double time_scans(const Segment& seg, std::span<const std::uint32_t> queries, unsigned repetitions, unsigned warmup) {
  if (queries.empty()) fail(ErrorCode::InvalidArgument, "scan test needs at least one query value");
  const double ns = median_of(repetitions, warmup, [&] {
    std::uint64_t matches = 0;
    const auto start = Clock::now();
    for (const std::uint32_t q : queries) {
      for (const Predicate p : kAllPredicates) matches += seg.scan(p, q).size();
    }
    const double t = elapsed_ns(start);
    g_sink = g_sink + matches;
    return t;
  });
  const double scans = static_cast<double>(queries.size() * kAllPredicates.size());
  return positive(ns / scans / 1000.0);
}

MetricsRow measure(const Segment& seg, ValueRange range, const WorkloadSpec& workload, std::uint64_t seed) {
  g_measurements.fetch_add(1, std::memory_order_relaxed);
  MetricsRow row;
  row.config = seg.config();
  row.gain_pct = compression_gain(seg.size_bytes(), seg.size() * sizeof(std::uint32_t));

  const std::vector<std::uint32_t> offsets = draw_offsets(seg.size(), workload.random_offsets, seed);
  const std::vector<std::uint32_t> queries =
      draw_queries(range, workload.queries, workload.range_extension, seed ^ 0x9e3779b97f4a7c15ULL);
  row.seq_ns = time_sequential_access(seg, workload.repetitions, workload.warmup);
  row.rand_ns = time_random_access(seg, offsets, workload.repetitions, workload.warmup);
  row.scan_us = time_scans(seg, queries, workload.repetitions, workload.warmup);
  return row;
}

MetricsRow measure(const Segment& seg, const WorkloadSpec& workload, std::uint64_t seed) {
  const std::vector<std::uint32_t> values = seg.decompress();
  return measure(seg, value_range(values), workload, seed);
}

std::uint64_t measurement_count() noexcept { return g_measurements.load(std::memory_order_relaxed); }

DiagnosticsTable sweep(std::span<const std::uint32_t> values, Encoder encoder, const WorkloadSpec& workload,
                       std::uint64_t seed, std::string dataset) {
  if (values.empty()) fail(ErrorCode::InvalidArgument, "cannot profile an empty segment");
  DiagnosticsTable table;
  table.dataset = std::move(dataset);
  table.content_hash = content_hash(values, encoder);
  table.encoder = encoder;
  const ValueRange range = value_range(values);
  if (is_gd(encoder)) {
    for (unsigned n = DeviationSize::kMin; n <= DeviationSize::kMax; ++n) {
      const auto seg = encode_segment({encoder, n}, values);
      table.rows.push_back(measure(*seg, range, workload, seed));
    }
  } else {
    const auto seg = encode_segment({encoder, 0}, values);
    table.rows.push_back(measure(*seg, range, workload, seed));
  }
  return table;
}

}  // namespace gdcomp
