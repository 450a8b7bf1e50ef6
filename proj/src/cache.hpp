#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "profiler.hpp"

namespace gdcomp {

/**
 * JSON metrics cache. One document per (values, encoder) content hash:
 *
 *   {"content_hash": "...", "variant": "gd1", "dataset": "months",
 *    "rows": [{"n": 1, "gain_pct": ..., "seq_ns": ..., "rand_ns": ..., "scan_us": ...}, ...]}
 *
 * Non-GD encoders store a single row with n = 0.
 */
std::string to_json(const DiagnosticsTable& table);
// Throws Malformed.
DiagnosticsTable table_from_json(const std::string& text);

// Throws Io on write failure.
void cache_store(const DiagnosticsTable& table, const std::filesystem::path& path);
// Throws NotFound, Malformed.
DiagnosticsTable cache_load(const std::filesystem::path& path);
// As above, plus HashMismatch when the stored hash differs from expected_hash.
DiagnosticsTable cache_load(const std::filesystem::path& path, const std::string& expected_hash);

class MetricsCache {
 public:
  explicit MetricsCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

  const std::filesystem::path& dir() const noexcept { return dir_; }
  std::filesystem::path path_for(const std::string& hash) const { return dir_ / (hash + ".json"); }

  // nullopt on a miss (missing entry or stale hash); throws Malformed on a damaged entry.
  std::optional<DiagnosticsTable> lookup(std::span<const std::uint32_t> values, Encoder encoder) const;
  std::optional<DiagnosticsTable> lookup(const std::string& hash) const;
  void store(const DiagnosticsTable& table) const;
  // Most recently written entry.
  std::optional<DiagnosticsTable> latest() const;
  std::vector<DiagnosticsTable> all() const;

 private:
  std::filesystem::path dir_;
};

// Columns: dataset,encoder,dev_size,gain_pct,seq_ns,rand_ns,scan_us
std::string to_csv(std::span<const DiagnosticsTable> tables);

}  // namespace gdcomp
