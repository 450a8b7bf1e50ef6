#include "cache.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "error.hpp"

namespace gdcomp {

namespace fs = std::filesystem;
using nlohmann::json;

std::string to_json(const DiagnosticsTable& table) {
  json rows = json::array();
  for (const MetricsRow& r : table.rows) {
    rows.push_back({{"n", r.config.dev_size},
                    {"gain_pct", r.gain_pct},
                    {"seq_ns", r.seq_ns},
                    {"rand_ns", r.rand_ns},
                    {"scan_us", r.scan_us}});
  }
  const json doc = {{"content_hash", table.content_hash},
                    {"variant", std::string(to_string(table.encoder))},
                    {"dataset", table.dataset},
                    {"rows", rows}};
  return doc.dump(2);
}

DiagnosticsTable table_from_json(const std::string& text) {
  try {
    const json doc = json::parse(text);
    DiagnosticsTable table;
    table.content_hash = doc.at("content_hash").get<std::string>();
    const auto variant = doc.at("variant").get<std::string>();
    const auto encoder = parse_encoder(variant);
    if (!encoder) fail(ErrorCode::Malformed, "unknown variant '" + variant + "' in metrics cache");
    table.encoder = *encoder;
    table.dataset = doc.value("dataset", std::string{});
    for (const json& r : doc.at("rows")) {
      MetricsRow row;
      row.config = {table.encoder, r.at("n").get<unsigned>()};
      row.gain_pct = r.at("gain_pct").get<double>();
      row.seq_ns = r.at("seq_ns").get<double>();
      row.rand_ns = r.at("rand_ns").get<double>();
      row.scan_us = r.at("scan_us").get<double>();
      table.rows.push_back(row);
    }
    return table;
  } catch (const json::exception& e) {
    fail(ErrorCode::Malformed, std::string("malformed metrics cache: ") + e.what());
  }
}

void cache_store(const DiagnosticsTable& table, const fs::path& path) {
  std::error_code ec;
  if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
  // Write-then-rename so readers never observe a partial document.
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorCode::Io, "cannot write metrics cache " + tmp.string());
    out << to_json(table) << '\n';
    if (!out) fail(ErrorCode::Io, "failed writing metrics cache " + tmp.string());
  }
  fs::rename(tmp, path, ec);
  if (ec) fail(ErrorCode::Io, "cannot move metrics cache into place: " + ec.message());
}

DiagnosticsTable cache_load(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::NotFound, "metrics cache " + path.string() + " not found");
  std::ostringstream buf;
  buf << in.rdbuf();
  return table_from_json(buf.str());
}

DiagnosticsTable cache_load(const fs::path& path, const std::string& expected_hash) {
  DiagnosticsTable table = cache_load(path);
  if (table.content_hash != expected_hash) {
    fail(ErrorCode::HashMismatch, "metrics cache " + path.string() + " holds hash " + table.content_hash +
                                      ", expected " + expected_hash);
  }
  return table;
}

std::optional<DiagnosticsTable> MetricsCache::lookup(std::span<const std::uint32_t> values, Encoder encoder) const {
  return lookup(content_hash(values, encoder));
}

std::optional<DiagnosticsTable> MetricsCache::lookup(const std::string& hash) const {
  try {
    return cache_load(path_for(hash), hash);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NotFound || e.code() == ErrorCode::HashMismatch) return std::nullopt;
    throw;
  }
}

void MetricsCache::store(const DiagnosticsTable& table) const { cache_store(table, path_for(table.content_hash)); }

namespace {
std::vector<fs::path> entries(const fs::path& dir) {
  std::vector<fs::path> out;
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) return out;
  for (const auto& e : fs::directory_iterator(dir, ec)) {
    if (e.is_regular_file() && e.path().extension() == ".json") out.push_back(e.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}
}  // namespace

std::optional<DiagnosticsTable> MetricsCache::latest() const {
  const auto files = entries(dir_);
  if (files.empty()) return std::nullopt;
  const auto newest = std::max_element(files.begin(), files.end(), [](const fs::path& a, const fs::path& b) {
    return fs::last_write_time(a) < fs::last_write_time(b);
  });
  return cache_load(*newest);
}

std::vector<DiagnosticsTable> MetricsCache::all() const {
  std::vector<DiagnosticsTable> out;
  for (const auto& f : entries(dir_)) out.push_back(cache_load(f));
  return out;
}

std::string to_csv(std::span<const DiagnosticsTable> tables) {
  std::ostringstream os;
  os.precision(6);
  os << std::fixed;
  os << "dataset,encoder,dev_size,gain_pct,seq_ns,rand_ns,scan_us\n";
  for (const DiagnosticsTable& t : tables) {
    for (const MetricsRow& r : t.rows) {
      os << t.dataset << ',' << to_string(r.config.encoder) << ',' << r.config.dev_size << ',' << r.gain_pct << ','
         << r.seq_ns << ',' << r.rand_ns << ',' << r.scan_us << '\n';
    }
  }
  return os.str();
}

}  // namespace gdcomp
