/*
 * gdcomp: generalized-deduplication integer segment compression.
 *
 * C interface over the C++ core. Every function returns a gdc_status; on
 * failure gdc_last_error() returns a description for the calling thread.
 * Objects are opaque handles owned by the caller and released with the
 * matching *_free function. Free functions accept NULL.
 */
#ifndef GDCOMP_GDCOMP_H
#define GDCOMP_GDCOMP_H

#include <stddef.h>
#include <stdint.h>

#if defined(GDC_BUILDING_LIBRARY)
#define GDC_API __attribute__((visibility("default")))
#else
#define GDC_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gdc_status {
  GDC_OK = 0,
  GDC_ERR_INVALID_ARGUMENT = 1,
  GDC_ERR_OUT_OF_RANGE = 2,
  GDC_ERR_VALUE_EXCEEDS_WIDTH = 3,
  GDC_ERR_UNSUPPORTED = 4, /* e.g. random access on gd4 / heavy */
  GDC_ERR_NOT_FOUND = 5,
  GDC_ERR_IO = 6,
  GDC_ERR_MALFORMED = 7,
  GDC_ERR_HASH_MISMATCH = 8,
  GDC_ERR_CACHE_MISS = 9,
  GDC_ERR_CORRUPT = 10,
  GDC_ERR_INTERNAL = 99
} gdc_status;

typedef enum gdc_encoder {
  GDC_ENCODER_UNCOMPRESSED = 0,
  GDC_ENCODER_DICTIONARY = 1,
  GDC_ENCODER_PFOR = 2,
  GDC_ENCODER_HEAVY = 3,
  GDC_ENCODER_GD1 = 4,
  GDC_ENCODER_GD2 = 5,
  GDC_ENCODER_GD3 = 6,
  GDC_ENCODER_GD4 = 7
} gdc_encoder;

typedef enum gdc_predicate {
  GDC_EQUALS = 0,
  GDC_NOT_EQUALS = 1,
  GDC_GREATER = 2,
  GDC_GREATER_EQUALS = 3,
  GDC_LESS = 4,
  GDC_LESS_EQUALS = 5
} gdc_predicate;

typedef enum gdc_dataset_kind {
  GDC_DATASET_UNIFORM = 0,
  GDC_DATASET_SORTED_EQUIDISTANT = 1,
  GDC_DATASET_YEARS = 2,
  GDC_DATASET_MONTHS = 3,
  GDC_DATASET_TIME_SERIES = 4,
  GDC_DATASET_PRIMARY_KEY = 5
} gdc_dataset_kind;

typedef struct gdc_config {
  gdc_encoder encoder;
  uint32_t dev_size; /* 1..30 for GD encoders, 0 otherwise */
} gdc_config;

typedef struct gdc_metrics_row {
  gdc_config config;
  double gain_pct;
  double seq_ns;
  double rand_ns;
  double scan_us;
} gdc_metrics_row;

typedef struct gdc_workload {
  size_t random_offsets;
  size_t queries;
  double range_extension;
  uint32_t repetitions;
  uint32_t warmup;
} gdc_workload;

typedef struct gdc_weights {
  double compression;
  double seq;
  double rand;
  double scan;
} gdc_weights;

typedef struct gdc_usage_stats {
  uint64_t seq_access;
  uint64_t rand_access;
  uint64_t scans[6]; /* indexed by gdc_predicate */
} gdc_usage_stats;

typedef struct gdc_decision {
  gdc_config chosen;
  double score;
  double estimated_gain;
  int reencode;
  gdc_weights weights;
} gdc_decision;

typedef struct gdc_values gdc_values;       /* owned uint32 sequence */
typedef struct gdc_segment gdc_segment;     /* encoded, immutable segment */
typedef struct gdc_table gdc_table;         /* diagnostics table */
typedef struct gdc_cache gdc_cache;         /* metrics cache directory */

/* Errors and names */
GDC_API const char* gdc_last_error(void);
GDC_API const char* gdc_status_name(gdc_status status);
GDC_API const char* gdc_encoder_name(gdc_encoder encoder);
GDC_API gdc_status gdc_encoder_parse(const char* name, gdc_encoder* out);
GDC_API const char* gdc_predicate_name(gdc_predicate predicate);
GDC_API gdc_status gdc_predicate_parse(const char* name, gdc_predicate* out);
GDC_API const char* gdc_dataset_kind_name(gdc_dataset_kind kind);
GDC_API gdc_status gdc_dataset_kind_parse(const char* name, gdc_dataset_kind* out);
GDC_API void gdc_string_free(char* s);

/* Value sequences and dataset files (raw little-endian uint32, no header) */
GDC_API gdc_status gdc_values_create(const uint32_t* data, size_t length, gdc_values** out);
GDC_API gdc_status gdc_generate(gdc_dataset_kind kind, size_t length, uint64_t seed, gdc_values** out);
GDC_API gdc_status gdc_values_read_file(const char* path, gdc_values** out);
GDC_API gdc_status gdc_values_write_file(const gdc_values* values, const char* path);
GDC_API size_t gdc_values_length(const gdc_values* values);
GDC_API const uint32_t* gdc_values_data(const gdc_values* values);
GDC_API void gdc_values_free(gdc_values* values);

/* Segments */
GDC_API gdc_status gdc_segment_encode(gdc_config config, const uint32_t* data, size_t length, gdc_segment** out);
GDC_API void gdc_segment_free(gdc_segment* segment);
GDC_API size_t gdc_segment_length(const gdc_segment* segment);
GDC_API size_t gdc_segment_size_bytes(const gdc_segment* segment);
GDC_API int gdc_segment_random_access(const gdc_segment* segment);
GDC_API gdc_status gdc_segment_get(const gdc_segment* segment, size_t position, uint32_t* out);
/* Counts payload-list reads made by one random access into *lookups. */
GDC_API gdc_status gdc_segment_get_counted(const gdc_segment* segment, size_t position, uint32_t* out,
                                           size_t* lookups);
/* capacity must be >= gdc_segment_length. */
GDC_API gdc_status gdc_segment_decompress(const gdc_segment* segment, uint32_t* out, size_t capacity);
/* Matching positions, ascending; returned as a gdc_values handle. */
GDC_API gdc_status gdc_segment_scan(const gdc_segment* segment, gdc_predicate predicate, uint32_t query,
                                    gdc_values** positions);
GDC_API gdc_status gdc_segment_dump(const gdc_segment* segment, char** text);

/* Profiling */
GDC_API gdc_workload gdc_workload_default(size_t length);
GDC_API double gdc_compression_gain(size_t compressed_bytes, size_t original_bytes);
GDC_API gdc_status gdc_measure(const gdc_segment* segment, const gdc_workload* workload, uint64_t seed,
                               gdc_metrics_row* out);
/* GD encoders: 30 rows (n = 1..30). Others: one row. dataset may be NULL. */
GDC_API gdc_status gdc_sweep(const gdc_values* values, gdc_encoder encoder, const gdc_workload* workload,
                             uint64_t seed, const char* dataset, gdc_table** out);
GDC_API uint64_t gdc_measurement_count(void);
GDC_API uint64_t gdc_decompression_count(void);

/* Tables */
GDC_API gdc_status gdc_table_create(gdc_table** out);
GDC_API void gdc_table_free(gdc_table* table);
GDC_API size_t gdc_table_rows(const gdc_table* table);
GDC_API gdc_status gdc_table_row(const gdc_table* table, size_t index, gdc_metrics_row* out);
/* Appends the rows of src to dst. */
GDC_API gdc_status gdc_table_append(gdc_table* dst, const gdc_table* src);
GDC_API const char* gdc_table_dataset(const gdc_table* table);
GDC_API const char* gdc_table_content_hash(const gdc_table* table);
GDC_API gdc_status gdc_table_to_csv(const gdc_table* const* tables, size_t count, char** csv);
GDC_API gdc_status gdc_table_to_json(const gdc_table* table, char** json);

/* Metrics cache: one JSON document per content hash of (values, encoder) */
GDC_API gdc_status gdc_content_hash(const gdc_values* values, gdc_encoder encoder, char** hash);
GDC_API gdc_status gdc_cache_open(const char* dir, gdc_cache** out);
GDC_API void gdc_cache_free(gdc_cache* cache);
GDC_API gdc_status gdc_cache_store(const gdc_cache* cache, const gdc_table* table);
/* GDC_ERR_CACHE_MISS when absent or stale. */
GDC_API gdc_status gdc_cache_lookup(const gdc_cache* cache, const gdc_values* values, gdc_encoder encoder,
                                    gdc_table** out);
/* Most recently written entry; GDC_ERR_CACHE_MISS when the cache is empty. */
GDC_API gdc_status gdc_cache_latest(const gdc_cache* cache, gdc_table** out);
/* Every entry, in file-name order; *out is an array of *count handles freed with gdc_table_list_free. */
GDC_API gdc_status gdc_cache_all(const gdc_cache* cache, gdc_table*** out, size_t* count);
GDC_API void gdc_table_list_free(gdc_table** tables, size_t count);
/* Direct file access. expected_hash may be NULL. */
GDC_API gdc_status gdc_table_save(const gdc_table* table, const char* path);
GDC_API gdc_status gdc_table_load(const char* path, const char* expected_hash, gdc_table** out);

/* Selection */
GDC_API gdc_status gdc_preset_weights(const char* preset, gdc_weights* out);
GDC_API gdc_status gdc_weights_load_file(const char* path, gdc_weights* out);
GDC_API gdc_status gdc_usage_load_file(const char* path, gdc_usage_stats* out);
GDC_API gdc_status gdc_weights_from_usage(const gdc_usage_stats* stats, double compression_floor, gdc_weights* out);
GDC_API gdc_status gdc_select_best(const gdc_table* table, const gdc_weights* weights, gdc_metrics_row* out);
GDC_API gdc_status gdc_advise(const gdc_metrics_row* current, const gdc_table* candidates,
                              const gdc_usage_stats* stats, double threshold, double compression_floor,
                              gdc_decision* out);

#ifdef __cplusplus
}
#endif

#endif /* GDCOMP_GDCOMP_H */
