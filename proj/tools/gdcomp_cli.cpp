// gdcomp command-line front end. Talks to the library only through the C API.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gdcomp/gdcomp.h"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;
constexpr int kExitCacheMiss = 3;
constexpr int kExitFailure = 4;

struct CliError {
  int exit_code;
  std::string message;
};

[[noreturn]] void raise(int code, std::string message) { throw CliError{code, std::move(message)}; }

void check(gdc_status status, const std::string& context) {
  if (status == GDC_OK) return;
  int code = kExitFailure;
  if (status == GDC_ERR_NOT_FOUND || status == GDC_ERR_IO) code = kExitIo;
  if (status == GDC_ERR_CACHE_MISS) code = kExitCacheMiss;
  if (status == GDC_ERR_INVALID_ARGUMENT) code = kExitUsage;
  raise(code, context + ": " + gdc_status_name(status) + ": " + gdc_last_error());
}

template <class T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const noexcept { Free(p); }
};
using Values = std::unique_ptr<gdc_values, Deleter<gdc_values, gdc_values_free>>;
using Segment = std::unique_ptr<gdc_segment, Deleter<gdc_segment, gdc_segment_free>>;
using Table = std::unique_ptr<gdc_table, Deleter<gdc_table, gdc_table_free>>;
using Cache = std::unique_ptr<gdc_cache, Deleter<gdc_cache, gdc_cache_free>>;

struct CString {
  char* p = nullptr;
  ~CString() { gdc_string_free(p); }
  std::string str() const { return p ? p : ""; }
};

struct Options {
  std::string dataset;
  std::string variant;
  unsigned dev_size = 0;
  std::string preset;
  std::string weights_file;
  std::string usage_file;
  std::uint64_t seed = 42;
  std::size_t len = 65535;
  std::string kind;
  std::string out;
  std::string cache_dir;
  bool measure = false;
  double threshold = 0.05;
  double floor = 0.2;
  unsigned reps = 5;
  unsigned warmup = 1;
};

std::string cache_dir(const Options& o) {
  if (!o.cache_dir.empty()) return o.cache_dir;
  if (const char* env = std::getenv("GDCOMP_CACHE_DIR"); env != nullptr && *env != '\0') return env;
  return ".gdcomp-cache";
}

gdc_encoder parse_variant(const std::string& v) {
  if (v == "1" || v == "2" || v == "3" || v == "4") return static_cast<gdc_encoder>(GDC_ENCODER_GD1 + (v[0] - '1'));
  gdc_encoder e;
  if (gdc_encoder_parse(v.c_str(), &e) != GDC_OK) {
    raise(kExitUsage, "unknown variant '" + v + "' (expected 1-4, gd1-gd4, uncompressed, dictionary, pfor, heavy)");
  }
  return e;
}

bool is_gd(gdc_encoder e) { return e >= GDC_ENCODER_GD1; }

std::string dataset_name(const std::string& path) {
  const auto slash = path.find_last_of('/');
  std::string base = slash == std::string::npos ? path : path.substr(slash + 1);
  const auto dot = base.find_last_of('.');
  return dot == std::string::npos || dot == 0 ? base : base.substr(0, dot);
}

Values load_values(const std::string& path) {
  if (path.empty()) raise(kExitUsage, "--dataset is required");
  gdc_values* v = nullptr;
  check(gdc_values_read_file(path.c_str(), &v), "reading dataset");
  Values values(v);
  if (gdc_values_length(v) == 0) raise(kExitUsage, "dataset " + path + " is empty");
  return values;
}

Cache open_cache(const Options& o) {
  gdc_cache* c = nullptr;
  check(gdc_cache_open(cache_dir(o).c_str(), &c), "opening cache");
  return Cache(c);
}

gdc_workload workload(const Options& o, std::size_t length) {
  gdc_workload w = gdc_workload_default(length);
  w.repetitions = o.reps;
  w.warmup = o.warmup;
  return w;
}

// Cached table for (values, encoder); measures on a miss only when allowed.
Table obtain_table(const Options& o, const gdc_cache* cache, const gdc_values* values, gdc_encoder encoder,
                   bool allow_measure, bool force_measure) {
  gdc_table* t = nullptr;
  if (!force_measure) {
    const gdc_status s = gdc_cache_lookup(cache, values, encoder, &t);
    if (s == GDC_OK) return Table(t);
    if (s != GDC_ERR_CACHE_MISS) check(s, "reading cache");
    if (!allow_measure) check(s, "looking up metrics");
  }
  const gdc_workload w = workload(o, gdc_values_length(values));
  check(gdc_sweep(values, encoder, &w, o.seed, dataset_name(o.dataset).c_str(), &t), "measuring");
  Table table(t);
  check(gdc_cache_store(cache, table.get()), "writing cache");
  return table;
}

std::string format_config(const gdc_config& c) {
  std::ostringstream os;
  os << gdc_encoder_name(c.encoder);
  if (is_gd(c.encoder)) os << " n=" << c.dev_size;
  return os.str();
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out, std::ios::trunc);
  if (!f) raise(kExitIo, "cannot write " + o.out);
  f << text;
}

// ---------------------------------------------------------------------------

void cmd_gen(const Options& o) {
  if (o.kind.empty()) raise(kExitUsage, "--kind is required");
  if (o.out.empty()) raise(kExitUsage, "--out is required");
  gdc_dataset_kind kind;
  check(gdc_dataset_kind_parse(o.kind.c_str(), &kind), "parsing --kind");
  gdc_values* v = nullptr;
  check(gdc_generate(kind, o.len, o.seed, &v), "generating dataset");
  Values values(v);
  check(gdc_values_write_file(values.get(), o.out.c_str()), "writing dataset");
  std::cout << "wrote " << gdc_values_length(v) << " " << o.kind << " values to " << o.out << "\n";
}

void cmd_sweep(const Options& o) {
  const gdc_encoder encoder = parse_variant(o.variant.empty() ? "1" : o.variant);
  Values values = load_values(o.dataset);
  Cache cache = open_cache(o);
  const std::uint64_t before = gdc_measurement_count();
  Table table = obtain_table(o, cache.get(), values.get(), encoder, true, o.measure);
  const bool measured = gdc_measurement_count() != before;
  const gdc_table* tables[] = {table.get()};
  CString csv;
  check(gdc_table_to_csv(tables, 1, &csv.p), "rendering table");
  if (!o.out.empty()) emit(o, csv.str());
  else std::cout << csv.str();
  std::cerr << (measured ? "measured " : "cache hit: ") << gdc_table_rows(table.get()) << " rows, hash "
            << gdc_table_content_hash(table.get()) << " in " << cache_dir(o) << "\n";
}

void cmd_bench(const Options& o) {
  Values values = load_values(o.dataset);
  Cache cache = open_cache(o);
  std::vector<gdc_encoder> encoders = {GDC_ENCODER_UNCOMPRESSED, GDC_ENCODER_DICTIONARY, GDC_ENCODER_PFOR,
                                       GDC_ENCODER_HEAVY};
  if (o.variant.empty()) {
    for (int e = GDC_ENCODER_GD1; e <= GDC_ENCODER_GD4; ++e) encoders.push_back(static_cast<gdc_encoder>(e));
  } else {
    const gdc_encoder e = parse_variant(o.variant);
    if (is_gd(e)) encoders.push_back(e);
  }
  std::vector<Table> tables;
  for (const gdc_encoder e : encoders) tables.push_back(obtain_table(o, cache.get(), values.get(), e, true, o.measure));
  std::vector<const gdc_table*> raw;
  for (const auto& t : tables) raw.push_back(t.get());
  CString csv;
  check(gdc_table_to_csv(raw.data(), raw.size(), &csv.p), "rendering report");
  emit(o, csv.str());
}

gdc_weights resolve_weights(const Options& o) {
  if (!o.preset.empty() && !o.weights_file.empty()) raise(kExitUsage, "use either --preset or --weights-file");
  gdc_weights w;
  if (!o.weights_file.empty()) {
    check(gdc_weights_load_file(o.weights_file.c_str(), &w), "reading --weights-file");
  } else {
    check(gdc_preset_weights(o.preset.empty() ? "eq" : o.preset.c_str(), &w), "parsing --preset");
  }
  return w;
}

void cmd_select(const Options& o) {
  const gdc_weights w = resolve_weights(o);
  Cache cache = open_cache(o);
  Table table;
  if (o.dataset.empty()) {
    if (!o.variant.empty()) raise(kExitUsage, "--variant needs --dataset");
    gdc_table* t = nullptr;
    check(gdc_cache_latest(cache.get(), &t), "looking up metrics");
    table.reset(t);
  } else {
    Values values = load_values(o.dataset);
    table = obtain_table(o, cache.get(), values.get(), parse_variant(o.variant.empty() ? "1" : o.variant), o.measure,
                         false);
  }
  gdc_metrics_row best;
  check(gdc_select_best(table.get(), &w, &best), "selecting");
  std::printf("%s gain_pct=%.2f seq_ns=%.3f rand_ns=%.3f scan_us=%.3f\n", format_config(best.config).c_str(),
              best.gain_pct, best.seq_ns, best.rand_ns, best.scan_us);
}

void cmd_advise(const Options& o) {
  if (o.usage_file.empty()) raise(kExitUsage, "--usage is required");
  if (o.variant.empty()) raise(kExitUsage, "--variant is required (the current encoding)");
  const gdc_encoder current_encoder = parse_variant(o.variant);
  if (is_gd(current_encoder) && o.dev_size == 0) raise(kExitUsage, "--dev-size is required for GD variants");
  gdc_usage_stats stats;
  check(gdc_usage_load_file(o.usage_file.c_str(), &stats), "reading --usage");
  Values values = load_values(o.dataset);
  Cache cache = open_cache(o);

  gdc_table* merged_raw = nullptr;
  check(gdc_table_create(&merged_raw), "creating table");
  Table merged(merged_raw);
  for (int e = GDC_ENCODER_UNCOMPRESSED; e <= GDC_ENCODER_GD4; ++e) {
    gdc_table* t = nullptr;
    const gdc_status s = gdc_cache_lookup(cache.get(), values.get(), static_cast<gdc_encoder>(e), &t);
    if (s == GDC_ERR_CACHE_MISS) {
      if (!o.measure) continue;
      Table measured = obtain_table(o, cache.get(), values.get(), static_cast<gdc_encoder>(e), true, true);
      check(gdc_table_append(merged.get(), measured.get()), "merging");
      continue;
    }
    check(s, "reading cache");
    Table cached(t);
    check(gdc_table_append(merged.get(), cached.get()), "merging");
  }
  if (gdc_table_rows(merged.get()) == 0) {
    raise(kExitCacheMiss, "looking up metrics: cache miss: no cached metrics for " + o.dataset +
                              " (run sweep/bench first or pass --measure)");
  }

  const gdc_config wanted{current_encoder, is_gd(current_encoder) ? o.dev_size : 0};
  std::optional<gdc_metrics_row> current;
  for (std::size_t i = 0; i < gdc_table_rows(merged.get()); ++i) {
    gdc_metrics_row r;
    check(gdc_table_row(merged.get(), i, &r), "reading row");
    if (r.config.encoder == wanted.encoder && r.config.dev_size == wanted.dev_size) current = r;
  }
  if (!current) {
    raise(kExitCacheMiss, "cache miss: no metrics for the current encoding " + format_config(wanted));
  }

  gdc_decision d;
  check(gdc_advise(&*current, merged.get(), &stats, o.threshold, o.floor, &d), "advising");
  std::printf(
      "{\"current\": \"%s\", \"chosen\": {\"encoder\": \"%s\", \"dev_size\": %u}, \"score\": %.6f, "
      "\"estimated_gain\": %.6f, \"reencode\": %s, \"weights\": {\"compression\": %.6f, \"seq\": %.6f, "
      "\"rand\": %.6f, \"scan\": %.6f}}\n",
      format_config(wanted).c_str(), gdc_encoder_name(d.chosen.encoder), d.chosen.dev_size, d.score,
      d.estimated_gain, d.reencode ? "true" : "false", d.weights.compression, d.weights.seq, d.weights.rand,
      d.weights.scan);
}

void cmd_inspect(const Options& o) {
  const gdc_encoder encoder = parse_variant(o.variant.empty() ? "1" : o.variant);
  if (is_gd(encoder) && o.dev_size == 0) raise(kExitUsage, "--dev-size is required for GD variants");
  Values values = load_values(o.dataset);
  gdc_segment* s = nullptr;
  check(gdc_segment_encode({encoder, is_gd(encoder) ? o.dev_size : 0}, gdc_values_data(values.get()),
                           gdc_values_length(values.get()), &s),
        "encoding");
  Segment seg(s);
  CString text;
  check(gdc_segment_dump(seg.get(), &text.p), "dumping");
  const std::size_t bytes = gdc_segment_size_bytes(seg.get());
  std::ostringstream os;
  os << text.str();
  os << "  gain_pct=" << gdc_compression_gain(bytes, 4 * gdc_segment_length(seg.get())) << " random_access="
     << (gdc_segment_random_access(seg.get()) ? "yes" : "no") << "\n";
  emit(o, os.str());
}

void cmd_report(const Options& o) {
  Cache cache = open_cache(o);
  gdc_table** list = nullptr;
  std::size_t count = 0;
  check(gdc_cache_all(cache.get(), &list, &count), "reading cache");
  CString csv;
  const gdc_status s = gdc_table_to_csv(list, count, &csv.p);
  gdc_table_list_free(list, count);
  check(s, "rendering report");
  if (count == 0) raise(kExitCacheMiss, "cache miss: metrics cache " + cache_dir(o) + " is empty");
  emit(o, csv.str());
}

void log_measurements(const std::string& command) {
  const char* path = std::getenv("GDCOMP_MEASURE_LOG");
  if (path == nullptr || *path == '\0') return;
  std::ofstream f(path, std::ios::app);
  f << command << ' ' << gdc_measurement_count() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gdcomp: generalized-deduplication segment compression benchmark"};
  app.require_subcommand(1);
  Options o;

  const auto dataset = [&](CLI::App* c) { c->add_option("--dataset", o.dataset, "Dataset file (raw little-endian u32)"); };
  const auto variant = [&](CLI::App* c) { c->add_option("--variant", o.variant, "1-4 / gd1-gd4 or a baseline name"); };
  const auto cache = [&](CLI::App* c) {
    c->add_option("--cache-dir", o.cache_dir, "Metrics cache directory (env GDCOMP_CACHE_DIR)");
  };
  const auto timing = [&](CLI::App* c) {
    c->add_option("--seed", o.seed, "Workload seed");
    c->add_option("--reps", o.reps, "Timed repetitions per metric (median reported)")->check(CLI::Range(1u, 1000u));
    c->add_option("--warmup", o.warmup, "Untimed warm-up runs per metric");
    c->add_flag("--measure", o.measure, "Measure even if cached");
  };

  auto* gen = app.add_subcommand("gen", "Generate a synthetic dataset file");
  gen->add_option("--kind", o.kind, "uniform|sorted-equidistant|years|months|time-series|primary-key");
  gen->add_option("--len", o.len, "Element count")->check(CLI::PositiveNumber);
  gen->add_option("--seed", o.seed, "Generator seed");
  gen->add_option("--out", o.out, "Output file");

  auto* sweep = app.add_subcommand("sweep", "Measure all 30 deviation sizes of a GD variant");
  dataset(sweep);
  variant(sweep);
  cache(sweep);
  timing(sweep);
  sweep->add_option("--out", o.out, "Write CSV here instead of stdout");

  auto* bench = app.add_subcommand("bench", "Measure the baselines and GD variants on a dataset");
  dataset(bench);
  variant(bench);
  cache(bench);
  timing(bench);
  bench->add_option("--out", o.out, "Write CSV here instead of stdout");

  auto* select = app.add_subcommand("select", "Pick the best configuration from cached metrics");
  dataset(select);
  variant(select);
  cache(select);
  timing(select);
  select->add_option("--preset", o.preset, "mc|eq|lm|em");
  select->add_option("--weights-file", o.weights_file, "JSON weights file");

  auto* advise = app.add_subcommand("advise", "Decide whether re-encoding pays off for observed usage");
  dataset(advise);
  variant(advise);
  cache(advise);
  timing(advise);
  advise->add_option("--dev-size", o.dev_size, "Deviation size of the current encoding");
  advise->add_option("--usage", o.usage_file, "JSON usage-stats file");
  advise->add_option("--threshold", o.threshold, "Minimum score gain to re-encode");
  advise->add_option("--floor", o.floor, "Compression weight floor")->check(CLI::Range(0.0, 1.0));

  auto* inspect = app.add_subcommand("inspect", "Dump the structure of an encoded segment");
  dataset(inspect);
  variant(inspect);
  inspect->add_option("--dev-size", o.dev_size, "Deviation size")->check(CLI::Range(1u, 30u));
  inspect->add_option("--out", o.out, "Write here instead of stdout");

  auto* report = app.add_subcommand("report", "Render every cached table as CSV");
  cache(report);
  report->add_option("--out", o.out, "Write here instead of stdout");

  CLI11_PARSE(app, argc, argv);

  const std::string command = app.get_subcommands().front()->get_name();
  int rc = 0;
  try {
    if (command == "gen") cmd_gen(o);
    else if (command == "sweep") cmd_sweep(o);
    else if (command == "bench") cmd_bench(o);
    else if (command == "select") cmd_select(o);
    else if (command == "advise") cmd_advise(o);
    else if (command == "inspect") cmd_inspect(o);
    else if (command == "report") cmd_report(o);
  } catch (const CliError& e) {
    std::cerr << "gdcomp " << command << ": " << e.message << "\n";
    rc = e.exit_code;
  }
  log_measurements(command);
  return rc;
}
