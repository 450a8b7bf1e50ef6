// Acceptance checks. Prints one PASS/FAIL line per criterion; exits nonzero on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "baselines.hpp"
#include "datagen.hpp"
#include "error.hpp"
#include "gd_segment.hpp"
#include "instrument.hpp"
#include "lastbit.hpp"
#include "oracle.hpp"
#include "profiler.hpp"
#include "run_cli.hpp"
#include "segment.hpp"
#include "selector.hpp"

using namespace gdcomp;
namespace fs = std::filesystem;

namespace {

constexpr std::size_t kLength = 65535;
constexpr double kGainTolerance = 2.0;
constexpr double kHeavyTolerance = 5.0;

constexpr Encoder kBaselines[] = {Encoder::Uncompressed, Encoder::Dictionary, Encoder::PFor, Encoder::Heavy};
constexpr Encoder kGd[] = {Encoder::Gd1, Encoder::Gd2, Encoder::Gd3, Encoder::Gd4};

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) detail << "first failure: " << what << "; ";
      pass = false;
    }
  }
};

const std::vector<std::uint32_t>& dataset(DatasetKind k) {
  static std::vector<std::vector<std::uint32_t>> cache(std::size(kAllDatasets));
  auto& slot = cache[static_cast<std::size_t>(k)];
  if (slot.empty()) slot = generate({k, kLength, 1000 + static_cast<std::uint64_t>(k)});
  return slot;
}

double gain_of(const Config& c, DatasetKind k) {
  const auto seg = encode_segment(c, dataset(k));
  return compression_gain(seg->size_bytes(), seg->size() * 4);
}

// Deviation size with the smallest footprint for a variant (ties to the smaller n).
unsigned mc_best(Encoder e, DatasetKind k) {
  unsigned best = 1;
  std::size_t best_bytes = SIZE_MAX;
  for (unsigned n = 1; n <= 30; ++n) {
    const std::size_t b = encode_segment({e, n}, dataset(k))->size_bytes();
    if (b < best_bytes) best = n, best_bytes = b;
  }
  return best;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

// --- 1 ---------------------------------------------------------------------
void round_trip(Outcome& o) {
  std::size_t checked = 0;
  for (const DatasetKind k : kAllDatasets) {
    const auto& values = dataset(k);
    for (const Encoder e : kGd) {
      for (unsigned n = 1; n <= 30; ++n) {
        o.require(encode_segment({e, n}, values)->decompress() == values,
                  std::string(to_string(e)) + " n=" + std::to_string(n) + " on " + std::string(to_string(k)));
        ++checked;
      }
    }
    for (const Encoder e : kBaselines) {
      o.require(encode_segment({e, 0}, values)->decompress() == values,
                std::string(to_string(e)) + " on " + std::string(to_string(k)));
      ++checked;
    }
  }
  o.detail << checked << " encodings of " << kLength << " values decoded exactly";
}

// --- 2 ---------------------------------------------------------------------
void scan_oracle(Outcome& o) {
  std::size_t scans = 0, mismatches = 0;
  for (const DatasetKind k : kAllDatasets) {
    const auto& values = dataset(k);
    const WorkloadSpec w = WorkloadSpec::defaults_for(values.size());
    const auto queries = draw_queries(value_range(values), w.queries, w.range_extension, 77 + static_cast<unsigned>(k));
    std::vector<std::unique_ptr<Segment>> segs;
    for (const Encoder e : kBaselines) segs.push_back(encode_segment({e, 0}, values));
    for (const Encoder e : kGd) segs.push_back(encode_segment({e, mc_best(e, k)}, values));
    for (const std::uint32_t q : queries) {
      for (const Predicate p : kAllPredicates) {
        const auto expected = oracle::filter(values, p, q);
        for (const auto& s : segs) {
          ++scans;
          if (s->scan(p, q) != expected) {
            ++mismatches;
            o.require(false, to_string(s->config()) + " " + std::string(to_string(p)) + " " + std::to_string(q) +
                                 " on " + std::string(to_string(k)));
          }
        }
      }
    }
  }
  o.detail << scans << " scans (655 queries x 6 predicates per encoder and dataset), " << mismatches << " mismatches";
}

// --- 3 ---------------------------------------------------------------------
void gains(Outcome& o) {
  struct Target {
    Config config;
    DatasetKind kind;
    double expected;
  };
  const Target targets[] = {
      {{Encoder::Gd1, 3}, DatasetKind::Months, 87},
      {{Encoder::Gd1, 6}, DatasetKind::Years, 75},
      {{Encoder::Gd1, 15}, DatasetKind::PrimaryKey, 50},
      {{Encoder::Gd1, 8}, DatasetKind::PrimaryKey, 50},
      {{Encoder::Gd1, 17}, DatasetKind::SortedEquidistant, 41},
      {{Encoder::PFor, 0}, DatasetKind::Years, 75},
      {{Encoder::PFor, 0}, DatasetKind::Months, 75},
      {{Encoder::PFor, 0}, DatasetKind::PrimaryKey, 50},
      {{Encoder::PFor, 0}, DatasetKind::SortedEquidistant, 50},
      {{Encoder::PFor, 0}, DatasetKind::UniformRandom, 0},
      {{Encoder::Dictionary, 0}, DatasetKind::Months, 75},
      {{Encoder::Dictionary, 0}, DatasetKind::Years, 75},
      {{Encoder::Dictionary, 0}, DatasetKind::UniformRandom, -50},
  };
  for (const Target& t : targets) {
    const double g = gain_of(t.config, t.kind);
    const std::string label = to_string(t.config) + " " + std::string(to_string(t.kind));
    o.require(std::abs(g - t.expected) <= kGainTolerance, label + " = " + fmt(g) + " (want " + fmt(t.expected) + ")");
    o.detail << label << "=" << fmt(g) << " ";
  }

  double uniform_best = -1e9;
  for (unsigned n = 1; n <= 30; ++n) uniform_best = std::max(uniform_best, gain_of({Encoder::Gd1, n}, DatasetKind::UniformRandom));
  o.require(uniform_best <= 5.0, "gd1 uniform best = " + fmt(uniform_best));
  o.detail << "gd1 uniform best=" << fmt(uniform_best) << " ";

  const double heavy_months = gain_of({Encoder::Heavy, 0}, DatasetKind::Months);
  const double heavy_uniform = gain_of({Encoder::Heavy, 0}, DatasetKind::UniformRandom);
  o.require(heavy_months >= 84 - kHeavyTolerance, "heavy months = " + fmt(heavy_months));
  o.require(heavy_uniform <= 0 + kHeavyTolerance, "heavy uniform = " + fmt(heavy_uniform));
  o.detail << "heavy months=" << fmt(heavy_months) << " heavy uniform=" << fmt(heavy_uniform);
}

// --- 4 ---------------------------------------------------------------------
void selector(Outcome& o) {
  std::mt19937_64 rng(4242);
  std::uniform_real_distribution<double> u(0.0, 1.0);

  // MC on every real sweep: gains from real encodings, arbitrary times.
  std::size_t sweeps = 0;
  for (const DatasetKind k : kAllDatasets) {
    for (const Encoder e : kGd) {
      std::vector<MetricsRow> rows;
      for (unsigned n = 1; n <= 30; ++n) {
        rows.push_back({{e, n}, gain_of({e, n}, k), 1 + 10 * u(rng), 1 + 10 * u(rng), 1 + 10 * u(rng)});
      }
      std::size_t argmax = 0;
      for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i].gain_pct > rows[argmax].gain_pct) argmax = i;
      }
      o.require(select_best_index(rows, preset_weights(Preset::MC)) == argmax,
                "MC argmax on " + std::string(to_string(e)) + " " + std::string(to_string(k)));
      ++sweeps;
    }
  }
  const std::vector<MetricsRow> single{{{Encoder::Gd1, 1}, 1, 1, 1, 1}};
  o.require(select_best_index(single, preset_weights(Preset::MC)) == 0, "single-row table");

  constexpr int kTables = 1000;
  int scale_ok = 0, monotone_ok = 0, tie_ok = 0;
  for (int t = 0; t < kTables; ++t) {
    std::vector<MetricsRow> rows;
    const unsigned count = 2 + static_cast<unsigned>(rng() % 40);
    for (unsigned i = 0; i < count; ++i) {
      const Encoder e = static_cast<Encoder>(rng() % 8);
      rows.push_back({{e, is_gd(e) ? 1 + static_cast<unsigned>(rng() % 30) : 0u}, 120 * u(rng) - 60, 0.5 + 100 * u(rng),
                      0.5 + 100 * u(rng), 1 + 5000 * u(rng)});
    }
    const double a = u(rng), b = u(rng), c = u(rng), d = u(rng), s = a + b + c + d;
    const WeightVector w{a / s, b / s, c / s, 1.0 - (a + b + c) / s};
    const std::size_t best = select_best_index(rows, w);

    auto scaled = rows;
    const double ks[4] = {0.01 + 50 * u(rng), 0.01 + 50 * u(rng), 0.01 + 50 * u(rng), 0.01 + 50 * u(rng)};
    for (auto& r : scaled) r.gain_pct *= ks[0], r.seq_ns *= ks[1], r.rand_ns *= ks[2], r.scan_us *= ks[3];
    scale_ok += select_best_index(scaled, w) == best;

    auto better = rows;
    switch (rng() % 4) {
      case 0: better[best].gain_pct += 1 + 10 * u(rng); break;
      case 1: better[best].seq_ns *= 0.5; break;
      case 2: better[best].rand_ns *= 0.5; break;
      default: better[best].scan_us *= 0.5; break;
    }
    monotone_ok += select_best_index(better, w) == best;

    auto dup = rows;
    dup.insert(dup.begin() + static_cast<std::ptrdiff_t>(rng() % (dup.size() + 1)), rows[best]);
    const std::size_t again = select_best_index(dup, w);
    tie_ok += dup[again].config == rows[best].config && select_best_index(dup, w) == again;
  }
  o.require(scale_ok == kTables, "scale invariance " + std::to_string(scale_ok) + "/1000");
  o.require(monotone_ok == kTables, "monotonicity " + std::to_string(monotone_ok) + "/1000");
  o.require(tie_ok == kTables, "tie-break determinism " + std::to_string(tie_ok) + "/1000");

  const std::vector<MetricsRow> ties{{{Encoder::Gd2, 9}, 10, 1, 1, 1}, {{Encoder::Gd1, 4}, 10, 1, 1, 1},
                                     {{Encoder::Gd3, 4}, 10, 1, 1, 1}, {{Encoder::Gd1, 4}, 10, 1, 1, 1}};
  o.require(select_best_index(ties, WeightVector{}) == 1, "duplicate-row tie-break");

  o.detail << "MC exact on " << sweeps << " sweeps; scale " << scale_ok << "/1000, monotone " << monotone_ok
           << "/1000, ties " << tie_ok << "/1000";
}

// --- 5 ---------------------------------------------------------------------
template <class S>
bool lookups_exact(const S& seg, std::size_t expected, std::mt19937_64& rng, std::size_t& accesses) {
  for (int k = 0; k < 2000; ++k) {
    LookupProbe probe;
    (void)seg.get(rng() % seg.size(), probe);
    ++accesses;
    if (probe.reads != expected) return false;
  }
  return true;
}

void lookups(Outcome& o) {
  std::mt19937_64 rng(5);
  std::size_t accesses = 0;
  for (const DatasetKind k : kAllDatasets) {
    const auto& v = dataset(k);
    const std::string name(to_string(k));
    for (const unsigned n : {1u, 3u, 12u, 30u}) {
      const DeviationSize d(n);
      o.require(lookups_exact(GdSegment1::encode(v, d), 3, rng, accesses), "gd1 != 3 on " + name);
      o.require(lookups_exact(GdSegment2::encode(v, d), 3, rng, accesses), "gd2 != 3 on " + name);
      o.require(lookups_exact(GdSegment3::encode(v, d), 4, rng, accesses), "gd3 != 4 on " + name);
    }
    o.require(lookups_exact(DictionarySegment::encode(v), 2, rng, accesses), "dictionary != 2 on " + name);
  }
  static_assert(!RandomAccessSegment<GdSegment4>, "variant 4 must not offer random access");
  const auto s4 = encode_segment({Encoder::Gd4, 3}, dataset(DatasetKind::Months));
  bool rejected = false;
  try {
    (void)s4->get(0);
  } catch (const Error& e) {
    rejected = e.code() == ErrorCode::Unsupported;
  }
  o.require(!s4->random_access() && rejected, "gd4 random access not rejected");
  o.detail << accesses << " probed accesses: gd1=3 gd2=3 dictionary=2 gd3=4; gd4 rejects random access";
}

// --- 6 ---------------------------------------------------------------------
void order_preservation(Outcome& o) {
  constexpr std::uint32_t kLow = (1u << 31) - (1u << 15);
  constexpr std::size_t kSpan = std::size_t{1} << 16;
  std::uint64_t pairs = 0;
  for (const unsigned bits : {1u, 6u, 15u}) {
    const DeviationSize n(bits);
    std::vector<std::uint64_t> key(kSpan);
    for (std::size_t i = 0; i < kSpan; ++i) {
      const BaseDeviation bd = split(kLow + static_cast<std::uint32_t>(i), n);
      key[i] = (std::uint64_t{bd.base} << 32) | bd.deviation;
    }
    std::uint64_t violations = 0;
    for (std::size_t i = 0; i < kSpan; ++i) {
      const std::uint64_t ki = key[i];
      std::uint64_t bad = 0;
      for (std::size_t j = i + 1; j < kSpan; ++j) bad += key[j] <= ki;
      violations += bad;
      pairs += kSpan - i - 1;
    }
    o.require(violations == 0, "exhaustive n=" + std::to_string(bits) + ": " + std::to_string(violations) + " violations");
  }
  std::mt19937_64 rng(6);
  std::uint64_t random_pairs = 0;
  for (int k = 0; k < 2000000; ++k) {
    std::uint32_t a = static_cast<std::uint32_t>(rng()), b = static_cast<std::uint32_t>(rng());
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    const DeviationSize n(1 + static_cast<unsigned>(rng() % 30));
    const BaseDeviation x = split(a, n), y = split(b, n);
    const bool ordered = x.base < y.base || (x.base == y.base && x.deviation < y.deviation);
    o.require(ordered, "random pair " + std::to_string(a) + " < " + std::to_string(b));
    ++random_pairs;
  }
  o.detail << pairs << " exhaustive pairs over [" << kLow << ", " << kLow + kSpan << ") for n in {1,6,15}, "
           << random_pairs << " random full-width pairs";
}

// --- 7 ---------------------------------------------------------------------
void amortized_decompression(Outcome& o) {
  const auto& v = dataset(DatasetKind::Months);
  const WorkloadSpec w = WorkloadSpec::defaults_for(v.size());
  const auto offsets = draw_offsets(v.size(), w.random_offsets, 7);
  constexpr unsigned kReps = 3, kWarmup = 1;
  for (const Config c : {Config{Encoder::Heavy, 0}, Config{Encoder::Gd4, 3}}) {
    const auto seg = encode_segment(c, v);
    std::uint64_t before = instrument::decompressions();
    (void)time_sequential_access(*seg, kReps, kWarmup);
    const std::uint64_t seq = instrument::decompressions() - before;
    before = instrument::decompressions();
    (void)time_random_access(*seg, offsets, kReps, kWarmup);
    const std::uint64_t rnd = instrument::decompressions() - before;
    o.require(seq == kReps + kWarmup, to_string(c) + " sequential: " + std::to_string(seq) + " decompressions");
    o.require(rnd == kReps + kWarmup, to_string(c) + " random: " + std::to_string(rnd) + " decompressions");
    o.detail << to_string(c) << ": " << seq << "/" << rnd << " decompressions for " << kReps + kWarmup
             << " sequential/random runs of " << v.size() << "/" << offsets.size() << " accesses; ";
  }

  // Non-asserting benchmark report.
  std::cout << "  benchmark report (months, " << kLength << " values, " << w.scan_count() << " scans, 1 repetition):\n";
  std::printf("  %-14s %9s %9s %9s %10s\n", "config", "gain_pct", "seq_ns", "rand_ns", "scan_us");
  WorkloadSpec quick = w;
  quick.repetitions = 1;
  quick.warmup = 0;
  std::vector<Config> configs;
  for (const Encoder e : kBaselines) configs.push_back({e, 0});
  for (const Encoder e : kGd) configs.push_back({e, mc_best(e, DatasetKind::Months)});
  for (const Config& c : configs) {
    const auto seg = encode_segment(c, v);
    const MetricsRow r = measure(*seg, value_range(v), quick, 1);
    std::printf("  %-14s %9.2f %9.2f %9.2f %10.2f\n", to_string(c).c_str(), r.gain_pct, r.seq_ns, r.rand_ns, r.scan_us);
  }
  std::fflush(stdout);
}

// --- 8 ---------------------------------------------------------------------
void cli_end_to_end(Outcome& o) {
  std::random_device rd;
  const fs::path dir = fs::temp_directory_path() / ("gdcomp-accept-" + std::to_string(rd()));
  fs::create_directories(dir);
  const std::string data = "'" + (dir / "months.bin").string() + "'";
  const std::string cache = " --cache-dir '" + (dir / "cache").string() + "'";
  const std::string log = (dir / "measure.log").string();
  setenv("GDCOMP_MEASURE_LOG", log.c_str(), 1);

  const auto empty = cli::run("select --preset mc" + cache);
  o.require(empty.exit_code != 0 && empty.out.find("cache miss") != std::string::npos, "empty cache not reported");

  const auto gen = cli::run("gen --kind months --len 65535 --seed 11 --out " + data);
  o.require(gen.exit_code == 0, "gen failed: " + gen.out);
  const auto sweep = cli::run("sweep --variant 1 --reps 1 --warmup 0 --dataset " + data + cache);
  o.require(sweep.exit_code == 0, "sweep failed: " + sweep.out);
  const long swept = cli::last_logged_measurements(log);
  o.require(swept == 30, "sweep measured " + std::to_string(swept) + " configurations");

  const auto first = cli::run("select --preset mc" + cache);
  o.require(first.exit_code == 0 && first.out.rfind("gd1 n=3 ", 0) == 0, "select printed: " + first.out);
  const long m1 = cli::last_logged_measurements(log);
  const auto second = cli::run("select --preset mc --variant 1 --dataset " + data + cache);
  o.require(second.exit_code == 0 && second.out == first.out, "re-run printed: " + second.out);
  const long m2 = cli::last_logged_measurements(log);
  o.require(m1 == 0 && m2 == 0, "select re-measured (" + std::to_string(m1) + ", " + std::to_string(m2) + ")");
  unsetenv("GDCOMP_MEASURE_LOG");
  fs::remove_all(dir);

  std::string shown = first.out;
  shown = shown.substr(0, shown.find(" gain_pct"));
  o.detail << "select --preset mc printed '" << shown << "'; measurements: sweep " << swept << ", selects " << m1
           << " and " << m2;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    std::function<void(Outcome&)> run;
  };
  const Criterion criteria[] = {
      {1, "round trip", round_trip},
      {2, "scan oracle", scan_oracle},
      {3, "compression gains", gains},
      {4, "selector properties", selector},
      {5, "lookup counts", lookups},
      {6, "order preservation", order_preservation},
      {7, "amortized decompression", amortized_decompression},
      {8, "cli end to end", cli_end_to_end},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failures += o.pass ? 0 : 1;
    std::printf("%s [%d] %s (%.1fs): %s\n", o.pass ? "PASS" : "FAIL", c.id, c.title, secs, o.detail.str().c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(std::size(criteria)) - failures, std::size(criteria));
  return failures == 0 ? 0 : 1;
}
