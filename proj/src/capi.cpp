#include "gdcomp/gdcomp.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <memory>
#include <new>
#include <string>
#include <vector>

#include "cache.hpp"
#include "datagen.hpp"
#include "error.hpp"
#include "profiler.hpp"
#include "segment.hpp"
#include "selector.hpp"

struct gdc_values {
  std::vector<std::uint32_t> data;
};

struct gdc_segment {
  std::unique_ptr<gdcomp::Segment> rep;
};

struct gdc_table {
  gdcomp::DiagnosticsTable rep;
};

struct gdc_cache {
  gdcomp::MetricsCache rep;
};

namespace {

thread_local std::string g_last_error;

gdc_status to_status(gdcomp::ErrorCode code) {
  using gdcomp::ErrorCode;
  switch (code) {
    case ErrorCode::InvalidArgument: return GDC_ERR_INVALID_ARGUMENT;
    case ErrorCode::OutOfRange: return GDC_ERR_OUT_OF_RANGE;
    case ErrorCode::ValueExceedsWidth: return GDC_ERR_VALUE_EXCEEDS_WIDTH;
    case ErrorCode::Unsupported: return GDC_ERR_UNSUPPORTED;
    case ErrorCode::NotFound: return GDC_ERR_NOT_FOUND;
    case ErrorCode::Io: return GDC_ERR_IO;
    case ErrorCode::Malformed: return GDC_ERR_MALFORMED;
    case ErrorCode::HashMismatch: return GDC_ERR_HASH_MISMATCH;
    case ErrorCode::CacheMiss: return GDC_ERR_CACHE_MISS;
    case ErrorCode::Corrupt: return GDC_ERR_CORRUPT;
  }
  return GDC_ERR_INTERNAL;
}

gdc_status set_error(gdc_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

template <class F>
gdc_status guard(F&& body) {
  try {
    g_last_error.clear();
    body();
    return GDC_OK;
  } catch (const gdcomp::Error& e) {
    return set_error(to_status(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(GDC_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return set_error(GDC_ERR_INTERNAL, e.what());
  }
}

void require(const void* p, const char* name) {
  if (p == nullptr) gdcomp::fail(gdcomp::ErrorCode::InvalidArgument, std::string(name) + " must not be null");
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

gdcomp::Encoder to_cpp(gdc_encoder e) {
  if (e < GDC_ENCODER_UNCOMPRESSED || e > GDC_ENCODER_GD4) {
    gdcomp::fail(gdcomp::ErrorCode::InvalidArgument, "unknown encoder id " + std::to_string(e));
  }
  return static_cast<gdcomp::Encoder>(e);
}

gdcomp::Predicate to_cpp(gdc_predicate p) {
  if (p < GDC_EQUALS || p > GDC_LESS_EQUALS) {
    gdcomp::fail(gdcomp::ErrorCode::InvalidArgument, "unknown predicate id " + std::to_string(p));
  }
  return static_cast<gdcomp::Predicate>(p);
}

gdcomp::Config to_cpp(gdc_config c) { return {to_cpp(c.encoder), c.dev_size}; }
gdc_config to_c(const gdcomp::Config& c) { return {static_cast<gdc_encoder>(c.encoder), c.dev_size}; }

gdcomp::MetricsRow to_cpp(const gdc_metrics_row& r) {
  return {to_cpp(r.config), r.gain_pct, r.seq_ns, r.rand_ns, r.scan_us};
}
gdc_metrics_row to_c(const gdcomp::MetricsRow& r) { return {to_c(r.config), r.gain_pct, r.seq_ns, r.rand_ns, r.scan_us}; }

gdcomp::WeightVector to_cpp(const gdc_weights& w) { return {w.compression, w.seq, w.rand, w.scan}; }
gdc_weights to_c(const gdcomp::WeightVector& w) { return {w.compression, w.seq, w.rand, w.scan}; }

gdcomp::UsageStats to_cpp(const gdc_usage_stats& s) {
  gdcomp::UsageStats out;
  out.seq_access = s.seq_access;
  out.rand_access = s.rand_access;
  for (std::size_t i = 0; i < 6; ++i) out.scans[i] = s.scans[i];
  return out;
}
gdc_usage_stats to_c(const gdcomp::UsageStats& s) {
  gdc_usage_stats out{};
  out.seq_access = s.seq_access;
  out.rand_access = s.rand_access;
  for (std::size_t i = 0; i < 6; ++i) out.scans[i] = s.scans[i];
  return out;
}

gdcomp::WorkloadSpec to_cpp(const gdc_workload& w) {
  gdcomp::WorkloadSpec out;
  out.random_offsets = w.random_offsets;
  out.queries = w.queries;
  out.range_extension = w.range_extension;
  out.repetitions = w.repetitions;
  out.warmup = w.warmup;
  return out;
}

gdc_table* new_table(gdcomp::DiagnosticsTable t) { return new gdc_table{std::move(t)}; }

}  // namespace

extern "C" {

const char* gdc_last_error(void) { return g_last_error.c_str(); }

const char* gdc_status_name(gdc_status status) {
  switch (status) {
    case GDC_OK: return "ok";
    case GDC_ERR_INVALID_ARGUMENT: return "invalid argument";
    case GDC_ERR_OUT_OF_RANGE: return "out of range";
    case GDC_ERR_VALUE_EXCEEDS_WIDTH: return "value exceeds width";
    case GDC_ERR_UNSUPPORTED: return "unsupported";
    case GDC_ERR_NOT_FOUND: return "not found";
    case GDC_ERR_IO: return "i/o error";
    case GDC_ERR_MALFORMED: return "malformed";
    case GDC_ERR_HASH_MISMATCH: return "hash mismatch";
    case GDC_ERR_CACHE_MISS: return "cache miss";
    case GDC_ERR_CORRUPT: return "corrupt";
    case GDC_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

// Names point into static storage of the core.
const char* gdc_encoder_name(gdc_encoder encoder) {
  if (encoder < GDC_ENCODER_UNCOMPRESSED || encoder > GDC_ENCODER_GD4) return "?";
  return gdcomp::to_string(static_cast<gdcomp::Encoder>(encoder)).data();
}

gdc_status gdc_encoder_parse(const char* name, gdc_encoder* out) {
  return guard([&] {
    require(name, "name");
    require(out, "out");
    const auto e = gdcomp::parse_encoder(name);
    if (!e) gdcomp::fail(gdcomp::ErrorCode::InvalidArgument, std::string("unknown encoder '") + name + "'");
    *out = static_cast<gdc_encoder>(*e);
  });
}

const char* gdc_predicate_name(gdc_predicate predicate) {
  if (predicate < GDC_EQUALS || predicate > GDC_LESS_EQUALS) return "?";
  return gdcomp::to_string(static_cast<gdcomp::Predicate>(predicate)).data();
}

gdc_status gdc_predicate_parse(const char* name, gdc_predicate* out) {
  return guard([&] {
    require(name, "name");
    require(out, "out");
    const auto p = gdcomp::parse_predicate(name);
    if (!p) gdcomp::fail(gdcomp::ErrorCode::InvalidArgument, std::string("unknown predicate '") + name + "'");
    *out = static_cast<gdc_predicate>(*p);
  });
}

const char* gdc_dataset_kind_name(gdc_dataset_kind kind) {
  if (kind < GDC_DATASET_UNIFORM || kind > GDC_DATASET_PRIMARY_KEY) return "?";
  return gdcomp::to_string(static_cast<gdcomp::DatasetKind>(kind)).data();
}

gdc_status gdc_dataset_kind_parse(const char* name, gdc_dataset_kind* out) {
  return guard([&] {
    require(name, "name");
    require(out, "out");
    const auto k = gdcomp::parse_dataset_kind(name);
    if (!k) gdcomp::fail(gdcomp::ErrorCode::InvalidArgument, std::string("unknown dataset kind '") + name + "'");
    *out = static_cast<gdc_dataset_kind>(*k);
  });
}

void gdc_string_free(char* s) { std::free(s); }

// ---------------------------------------------------------------------------

gdc_status gdc_values_create(const uint32_t* data, size_t length, gdc_values** out) {
  return guard([&] {
    require(out, "out");
    if (length > 0) require(data, "data");
    *out = new gdc_values{std::vector<std::uint32_t>(data, data + length)};
  });
}

gdc_status gdc_generate(gdc_dataset_kind kind, size_t length, uint64_t seed, gdc_values** out) {
  return guard([&] {
    require(out, "out");
    if (kind < GDC_DATASET_UNIFORM || kind > GDC_DATASET_PRIMARY_KEY) {
      gdcomp::fail(gdcomp::ErrorCode::InvalidArgument, "unknown dataset kind id " + std::to_string(kind));
    }
    gdcomp::DatasetSpec spec{static_cast<gdcomp::DatasetKind>(kind), length, seed};
    *out = new gdc_values{gdcomp::generate(spec)};
  });
}

gdc_status gdc_values_read_file(const char* path, gdc_values** out) {
  return guard([&] {
    require(path, "path");
    require(out, "out");
    std::ifstream in(path, std::ios::binary);
    if (!in) gdcomp::fail(gdcomp::ErrorCode::NotFound, std::string("dataset file ") + path + " not found");
    std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (bytes.size() % 4 != 0) {
      gdcomp::fail(gdcomp::ErrorCode::Malformed,
                   std::string("dataset file ") + path + " size is not a multiple of 4 bytes");
    }
    auto values = std::make_unique<gdc_values>();
    values->data.resize(bytes.size() / 4);
    for (std::size_t i = 0; i < values->data.size(); ++i) {
      values->data[i] = std::uint32_t{bytes[4 * i]} | (std::uint32_t{bytes[4 * i + 1]} << 8) |
                        (std::uint32_t{bytes[4 * i + 2]} << 16) | (std::uint32_t{bytes[4 * i + 3]} << 24);
    }
    *out = values.release();
  });
}

gdc_status gdc_values_write_file(const gdc_values* values, const char* path) {
  return guard([&] {
    require(values, "values");
    require(path, "path");
    std::vector<char> bytes(values->data.size() * 4);
    for (std::size_t i = 0; i < values->data.size(); ++i) {
      for (unsigned k = 0; k < 4; ++k) bytes[4 * i + k] = static_cast<char>(values->data[i] >> (8 * k));
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) gdcomp::fail(gdcomp::ErrorCode::Io, std::string("cannot write dataset file ") + path);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) gdcomp::fail(gdcomp::ErrorCode::Io, std::string("failed writing dataset file ") + path);
  });
}

size_t gdc_values_length(const gdc_values* values) { return values ? values->data.size() : 0; }
const uint32_t* gdc_values_data(const gdc_values* values) { return values ? values->data.data() : nullptr; }
void gdc_values_free(gdc_values* values) { delete values; }

// ---------------------------------------------------------------------------

gdc_status gdc_segment_encode(gdc_config config, const uint32_t* data, size_t length, gdc_segment** out) {
  return guard([&] {
    require(out, "out");
    if (length > 0) require(data, "data");
    auto seg = gdcomp::encode_segment(to_cpp(config), std::span<const std::uint32_t>(data, length));
    *out = new gdc_segment{std::move(seg)};
  });
}

void gdc_segment_free(gdc_segment* segment) { delete segment; }
size_t gdc_segment_length(const gdc_segment* segment) { return segment ? segment->rep->size() : 0; }
size_t gdc_segment_size_bytes(const gdc_segment* segment) { return segment ? segment->rep->size_bytes() : 0; }
int gdc_segment_random_access(const gdc_segment* segment) { return segment && segment->rep->random_access() ? 1 : 0; }

gdc_status gdc_segment_get(const gdc_segment* segment, size_t position, uint32_t* out) {
  return guard([&] {
    require(segment, "segment");
    require(out, "out");
    *out = segment->rep->get(position);
  });
}

gdc_status gdc_segment_get_counted(const gdc_segment* segment, size_t position, uint32_t* out, size_t* lookups) {
  return guard([&] {
    require(segment, "segment");
    require(out, "out");
    require(lookups, "lookups");
    gdcomp::LookupProbe probe;
    *out = segment->rep->get(position, probe);
    *lookups = probe.reads;
  });
}

gdc_status gdc_segment_decompress(const gdc_segment* segment, uint32_t* out, size_t capacity) {
  return guard([&] {
    require(segment, "segment");
    require(out, "out");
    if (capacity < segment->rep->size()) {
      gdcomp::fail(gdcomp::ErrorCode::InvalidArgument, "output capacity smaller than segment length");
    }
    const auto values = segment->rep->decompress();
    std::memcpy(out, values.data(), values.size() * sizeof(std::uint32_t));
  });
}

gdc_status gdc_segment_scan(const gdc_segment* segment, gdc_predicate predicate, uint32_t query,
                            gdc_values** positions) {
  return guard([&] {
    require(segment, "segment");
    require(positions, "positions");
    *positions = new gdc_values{segment->rep->scan(to_cpp(predicate), query)};
  });
}

gdc_status gdc_segment_dump(const gdc_segment* segment, char** text) {
  return guard([&] {
    require(segment, "segment");
    require(text, "text");
    *text = dup_string(segment->rep->dump());
  });
}

// ---------------------------------------------------------------------------

gdc_workload gdc_workload_default(size_t length) {
  const auto w = gdcomp::WorkloadSpec::defaults_for(length);
  return {w.random_offsets, w.queries, w.range_extension, w.repetitions, w.warmup};
}

double gdc_compression_gain(size_t compressed_bytes, size_t original_bytes) {
  if (original_bytes == 0) return 0.0;
  return gdcomp::compression_gain(compressed_bytes, original_bytes);
}

gdc_status gdc_measure(const gdc_segment* segment, const gdc_workload* workload, uint64_t seed,
                       gdc_metrics_row* out) {
  return guard([&] {
    require(segment, "segment");
    require(workload, "workload");
    require(out, "out");
    *out = to_c(gdcomp::measure(*segment->rep, to_cpp(*workload), seed));
  });
}

gdc_status gdc_sweep(const gdc_values* values, gdc_encoder encoder, const gdc_workload* workload, uint64_t seed,
                     const char* dataset, gdc_table** out) {
  return guard([&] {
    require(values, "values");
    require(workload, "workload");
    require(out, "out");
    *out = new_table(gdcomp::sweep(values->data, to_cpp(encoder), to_cpp(*workload), seed, dataset ? dataset : ""));
  });
}

uint64_t gdc_measurement_count(void) { return gdcomp::measurement_count(); }
uint64_t gdc_decompression_count(void) { return gdcomp::instrument::decompressions(); }

// ---------------------------------------------------------------------------

gdc_status gdc_table_create(gdc_table** out) {
  return guard([&] {
    require(out, "out");
    *out = new_table({});
  });
}

void gdc_table_free(gdc_table* table) { delete table; }
size_t gdc_table_rows(const gdc_table* table) { return table ? table->rep.rows.size() : 0; }

gdc_status gdc_table_row(const gdc_table* table, size_t index, gdc_metrics_row* out) {
  return guard([&] {
    require(table, "table");
    require(out, "out");
    if (index >= table->rep.rows.size()) {
      gdcomp::fail(gdcomp::ErrorCode::OutOfRange, "row " + std::to_string(index) + " out of range");
    }
    *out = to_c(table->rep.rows[index]);
  });
}

gdc_status gdc_table_append(gdc_table* dst, const gdc_table* src) {
  return guard([&] {
    require(dst, "dst");
    require(src, "src");
    if (dst->rep.rows.empty() && dst->rep.dataset.empty()) dst->rep.dataset = src->rep.dataset;
    dst->rep.rows.insert(dst->rep.rows.end(), src->rep.rows.begin(), src->rep.rows.end());
  });
}

const char* gdc_table_dataset(const gdc_table* table) { return table ? table->rep.dataset.c_str() : ""; }
const char* gdc_table_content_hash(const gdc_table* table) { return table ? table->rep.content_hash.c_str() : ""; }

gdc_status gdc_table_to_csv(const gdc_table* const* tables, size_t count, char** csv) {
  return guard([&] {
    require(csv, "csv");
    if (count > 0) require(tables, "tables");
    std::vector<gdcomp::DiagnosticsTable> copies;
    for (size_t i = 0; i < count; ++i) {
      require(tables[i], "table");
      copies.push_back(tables[i]->rep);
    }
    *csv = dup_string(gdcomp::to_csv(copies));
  });
}

gdc_status gdc_table_to_json(const gdc_table* table, char** json) {
  return guard([&] {
    require(table, "table");
    require(json, "json");
    *json = dup_string(gdcomp::to_json(table->rep));
  });
}

// ---------------------------------------------------------------------------

gdc_status gdc_content_hash(const gdc_values* values, gdc_encoder encoder, char** hash) {
  return guard([&] {
    require(values, "values");
    require(hash, "hash");
    *hash = dup_string(gdcomp::content_hash(values->data, to_cpp(encoder)));
  });
}

gdc_status gdc_cache_open(const char* dir, gdc_cache** out) {
  return guard([&] {
    require(dir, "dir");
    require(out, "out");
    *out = new gdc_cache{gdcomp::MetricsCache(dir)};
  });
}

void gdc_cache_free(gdc_cache* cache) { delete cache; }

gdc_status gdc_cache_store(const gdc_cache* cache, const gdc_table* table) {
  return guard([&] {
    require(cache, "cache");
    require(table, "table");
    cache->rep.store(table->rep);
  });
}

gdc_status gdc_cache_lookup(const gdc_cache* cache, const gdc_values* values, gdc_encoder encoder, gdc_table** out) {
  return guard([&] {
    require(cache, "cache");
    require(values, "values");
    require(out, "out");
    auto table = cache->rep.lookup(values->data, to_cpp(encoder));
    if (!table) {
      gdcomp::fail(gdcomp::ErrorCode::CacheMiss, "no cached metrics for this dataset and encoder in " +
                                                     cache->rep.dir().string());
    }
    *out = new_table(std::move(*table));
  });
}

gdc_status gdc_cache_latest(const gdc_cache* cache, gdc_table** out) {
  return guard([&] {
    require(cache, "cache");
    require(out, "out");
    auto table = cache->rep.latest();
    if (!table) gdcomp::fail(gdcomp::ErrorCode::CacheMiss, "metrics cache " + cache->rep.dir().string() + " is empty");
    *out = new_table(std::move(*table));
  });
}

gdc_status gdc_cache_all(const gdc_cache* cache, gdc_table*** out, size_t* count) {
  return guard([&] {
    require(cache, "cache");
    require(out, "out");
    require(count, "count");
    auto tables = cache->rep.all();
    auto* list = static_cast<gdc_table**>(std::calloc(tables.size() + 1, sizeof(gdc_table*)));
    if (list == nullptr) throw std::bad_alloc();
    for (std::size_t i = 0; i < tables.size(); ++i) list[i] = new_table(std::move(tables[i]));
    *out = list;
    *count = tables.size();
  });
}

void gdc_table_list_free(gdc_table** tables, size_t count) {
  if (tables == nullptr) return;
  for (size_t i = 0; i < count; ++i) delete tables[i];
  std::free(tables);
}

gdc_status gdc_table_save(const gdc_table* table, const char* path) {
  return guard([&] {
    require(table, "table");
    require(path, "path");
    gdcomp::cache_store(table->rep, path);
  });
}

gdc_status gdc_table_load(const char* path, const char* expected_hash, gdc_table** out) {
  return guard([&] {
    require(path, "path");
    require(out, "out");
    *out = new_table(expected_hash ? gdcomp::cache_load(path, expected_hash) : gdcomp::cache_load(path));
  });
}

// ---------------------------------------------------------------------------

gdc_status gdc_preset_weights(const char* preset, gdc_weights* out) {
  return guard([&] {
    require(preset, "preset");
    require(out, "out");
    const auto p = gdcomp::parse_preset(preset);
    if (!p) gdcomp::fail(gdcomp::ErrorCode::InvalidArgument, std::string("unknown preset '") + preset + "'");
    *out = to_c(gdcomp::preset_weights(*p));
  });
}

gdc_status gdc_weights_load_file(const char* path, gdc_weights* out) {
  return guard([&] {
    require(path, "path");
    require(out, "out");
    *out = to_c(gdcomp::load_weights(path));
  });
}

gdc_status gdc_usage_load_file(const char* path, gdc_usage_stats* out) {
  return guard([&] {
    require(path, "path");
    require(out, "out");
    *out = to_c(gdcomp::load_usage(path));
  });
}

gdc_status gdc_weights_from_usage(const gdc_usage_stats* stats, double compression_floor, gdc_weights* out) {
  return guard([&] {
    require(stats, "stats");
    require(out, "out");
    *out = to_c(gdcomp::weights_from_usage(to_cpp(*stats), compression_floor));
  });
}

gdc_status gdc_select_best(const gdc_table* table, const gdc_weights* weights, gdc_metrics_row* out) {
  return guard([&] {
    require(table, "table");
    require(weights, "weights");
    require(out, "out");
    const std::size_t i = gdcomp::select_best_index(table->rep.rows, to_cpp(*weights));
    *out = to_c(table->rep.rows[i]);
  });
}

gdc_status gdc_advise(const gdc_metrics_row* current, const gdc_table* candidates, const gdc_usage_stats* stats,
                      double threshold, double compression_floor, gdc_decision* out) {
  return guard([&] {
    require(current, "current");
    require(candidates, "candidates");
    require(stats, "stats");
    require(out, "out");
    const auto d =
        gdcomp::advise(to_cpp(*current), candidates->rep.rows, to_cpp(*stats), threshold, compression_floor);
    *out = {to_c(d.chosen), d.score, d.estimated_gain, d.reencode ? 1 : 0, to_c(d.weights)};
  });
}

}  // extern "C"
