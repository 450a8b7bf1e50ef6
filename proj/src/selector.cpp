#include "selector.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "error.hpp"

namespace gdcomp {

using nlohmann::json;

void WeightVector::validate() const {
  for (const double w : {compression, seq, rand, scan}) {
    if (!(w >= 0) || !std::isfinite(w)) fail(ErrorCode::InvalidArgument, "weights must be finite and non-negative");
  }
  const double sum = compression + seq + rand + scan;
  if (std::abs(sum - 1.0) > 1e-9) {
    fail(ErrorCode::InvalidArgument, "weights must sum to 1, got " + std::to_string(sum));
  }
}

// LM leans on access speed (late materialization dereferences offsets);
// EM leans on scans (early materialization filters first).
WeightVector preset_weights(Preset p) noexcept {
  switch (p) {
    case Preset::MC: return {1.0, 0.0, 0.0, 0.0};
    case Preset::EQ: return {0.25, 0.25, 0.25, 0.25};
    case Preset::LM: return {0.2, 0.3, 0.4, 0.1};
    case Preset::EM: return {0.2, 0.1, 0.1, 0.6};
  }
  return {};
}

std::optional<Preset> parse_preset(std::string_view name) noexcept {
  if (name == "mc" || name == "MC") return Preset::MC;
  if (name == "eq" || name == "EQ") return Preset::EQ;
  if (name == "lm" || name == "LM") return Preset::LM;
  if (name == "em" || name == "EM") return Preset::EM;
  return std::nullopt;
}

std::string_view to_string(Preset p) noexcept {
  switch (p) {
    case Preset::MC: return "mc";
    case Preset::EQ: return "eq";
    case Preset::LM: return "lm";
    case Preset::EM: return "em";
  }
  return "?";
}

namespace {

json read_json(const std::filesystem::path& path, const char* what) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::NotFound, std::string(what) + " file " + path.string() + " not found");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return json::parse(buf.str());
  } catch (const json::exception& e) {
    fail(ErrorCode::Malformed, std::string("malformed ") + what + " file: " + e.what());
  }
}

}  // namespace

WeightVector load_weights(const std::filesystem::path& path) {
  const json doc = read_json(path, "weights");
  try {
    if (doc.contains("preset")) {
      const auto name = doc.at("preset").get<std::string>();
      const auto preset = parse_preset(name);
      if (!preset) fail(ErrorCode::Malformed, "unknown preset '" + name + "' in weights file");
      return preset_weights(*preset);
    }
    const json& w = doc.at("weights");
    WeightVector out{w.at("compression").get<double>(), w.at("seq").get<double>(), w.at("rand").get<double>(),
                     w.at("scan").get<double>()};
    out.validate();
    return out;
  } catch (const json::exception& e) {
    fail(ErrorCode::Malformed, std::string("malformed weights file: ") + e.what());
  }
}

std::uint64_t UsageStats::total_scans() const noexcept {
  std::uint64_t total = 0;
  for (const std::uint64_t s : scans) total += s;
  return total;
}

UsageStats load_usage(const std::filesystem::path& path) {
  const json doc = read_json(path, "usage stats");
  try {
    UsageStats stats;
    stats.seq_access = doc.value("seq_access", std::uint64_t{0});
    stats.rand_access = doc.value("rand_access", std::uint64_t{0});
    if (doc.contains("scans")) {
      for (const auto& [key, value] : doc.at("scans").items()) {
        const auto p = parse_predicate(key);
        if (!p) fail(ErrorCode::Malformed, "unknown predicate '" + key + "' in usage stats");
        stats.scans[static_cast<std::size_t>(*p)] = value.get<std::uint64_t>();
      }
    }
    return stats;
  } catch (const json::exception& e) {
    fail(ErrorCode::Malformed, std::string("malformed usage stats file: ") + e.what());
  }
}

UsageStats UsageCounters::snapshot() const noexcept {
  UsageStats s;
  s.seq_access = seq_.load(std::memory_order_relaxed);
  s.rand_access = rand_.load(std::memory_order_relaxed);
  for (std::size_t i = 0; i < scans_.size(); ++i) s.scans[i] = scans_[i].load(std::memory_order_relaxed);
  return s;
}

std::vector<RowScores> normalize(std::span<const MetricsRow> rows) {
  if (rows.empty()) fail(ErrorCode::InvalidArgument, "cannot normalize an empty table");

  const auto column = [&](auto field, bool higher_is_better) {
    double lo = field(rows[0]);
    double hi = lo;
    for (const MetricsRow& r : rows) {
      lo = std::min(lo, field(r));
      hi = std::max(hi, field(r));
    }
    std::vector<double> out(rows.size(), 1.0);
    if (hi > lo) {
      for (std::size_t i = 0; i < rows.size(); ++i) {
        const double x = field(rows[i]);
        out[i] = higher_is_better ? (x - lo) / (hi - lo) : (hi - x) / (hi - lo);
      }
    }
    return out;
  };

  const auto comp = column([](const MetricsRow& r) { return r.gain_pct; }, true);
  const auto seq = column([](const MetricsRow& r) { return r.seq_ns; }, false);
  const auto rnd = column([](const MetricsRow& r) { return r.rand_ns; }, false);
  const auto scan = column([](const MetricsRow& r) { return r.scan_us; }, false);

  std::vector<RowScores> scores(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) scores[i] = {comp[i], seq[i], rnd[i], scan[i]};
  return scores;
}

double weighted_score(const RowScores& s, const WeightVector& w) noexcept {
  return w.compression * s.compression + w.seq * s.seq + w.rand * s.rand + w.scan * s.scan;
}

namespace {

std::size_t best_of(std::span<const MetricsRow> rows, const std::vector<double>& scores) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const MetricsRow& a = rows[i];
    const MetricsRow& b = rows[best];
    if (scores[i] != scores[best]) {
      if (scores[i] > scores[best]) best = i;
      continue;
    }
    if (a.config.dev_size != b.config.dev_size) {
      if (a.config.dev_size < b.config.dev_size) best = i;
      continue;
    }
    if (encoder_priority(a.config.encoder) < encoder_priority(b.config.encoder)) best = i;
  }
  return best;
}

std::vector<double> weighted_scores(std::span<const MetricsRow> rows, const WeightVector& w) {
  const auto norm = normalize(rows);
  std::vector<double> scores(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) scores[i] = weighted_score(norm[i], w);
  return scores;
}

}  // namespace

std::size_t select_best_index(std::span<const MetricsRow> rows, const WeightVector& w) {
  w.validate();
  if (rows.empty()) fail(ErrorCode::InvalidArgument, "cannot select from an empty table");
  return best_of(rows, weighted_scores(rows, w));
}

Config select_best(const DiagnosticsTable& table, const WeightVector& w) {
  return table.rows[select_best_index(table.rows, w)].config;
}

WeightVector weights_from_usage(const UsageStats& stats, double compression_floor) {
  if (!(compression_floor >= 0.0 && compression_floor <= 1.0)) {
    fail(ErrorCode::InvalidArgument, "compression floor must be in [0, 1]");
  }
  const double seq = static_cast<double>(stats.seq_access);
  const double rnd = static_cast<double>(stats.rand_access);
  const double scan = static_cast<double>(stats.total_scans());
  const double total = seq + rnd + scan;
  if (total == 0) return preset_weights(Preset::EQ);
  const double speed = 1.0 - compression_floor;
  return {compression_floor, speed * seq / total, speed * rnd / total, speed * scan / total};
}

EncodingDecision advise(const MetricsRow& current, std::span<const MetricsRow> candidates, const UsageStats& stats,
                        double threshold, double compression_floor) {
  if (candidates.empty()) fail(ErrorCode::InvalidArgument, "advise needs at least one candidate");
  std::vector<MetricsRow> rows(candidates.begin(), candidates.end());
  std::size_t current_index = rows.size();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].config == current.config) {
      current_index = i;
      break;
    }
  }
  if (current_index == rows.size()) rows.push_back(current);

  EncodingDecision d;
  d.weights = weights_from_usage(stats, compression_floor);
  const auto scores = weighted_scores(rows, d.weights);
  const std::size_t best = best_of(rows, scores);
  d.chosen = rows[best].config;
  d.score = scores[best];
  d.estimated_gain = scores[best] - scores[current_index];
  d.reencode = d.estimated_gain > threshold;
  return d;
}

}  // namespace gdcomp
