#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <thread>

#include "cache.hpp"
#include "error.hpp"

using namespace gdcomp;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    std::random_device rd;
    path = fs::temp_directory_path() / ("gdcomp-cache-test-" + std::to_string(rd()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

DiagnosticsTable sample(std::span<const std::uint32_t> values, Encoder e, std::string name) {
  DiagnosticsTable t;
  t.dataset = std::move(name);
  t.encoder = e;
  t.content_hash = content_hash(values, e);
  const unsigned rows = is_gd(e) ? 30 : 1;
  for (unsigned n = 1; n <= rows; ++n) {
    t.rows.push_back({{e, is_gd(e) ? n : 0}, 100.0 / n, 1.5 * n, 2.25 * n, 0.125 * n});
  }
  return t;
}

}  // namespace

TEST_CASE("json round trip is exact") {
  const std::vector<std::uint32_t> v{1, 2, 3};
  const DiagnosticsTable t = sample(v, Encoder::Gd2, "tiny");
  CHECK(table_from_json(to_json(t)) == t);
  const DiagnosticsTable d = sample(v, Encoder::Heavy, "tiny");
  CHECK(table_from_json(to_json(d)) == d);
}

TEST_CASE("store then lookup") {
  TempDir dir;
  const MetricsCache cache(dir.path / "nested");
  const std::vector<std::uint32_t> a{1, 2, 3};
  const std::vector<std::uint32_t> b{4, 5, 6};
  CHECK_FALSE(cache.lookup(a, Encoder::Gd1).has_value());
  CHECK_FALSE(cache.latest().has_value());
  const DiagnosticsTable ta = sample(a, Encoder::Gd1, "a");
  const DiagnosticsTable tb = sample(b, Encoder::Gd1, "b");
  cache.store(ta);
  cache.store(tb);
  CHECK(cache.lookup(a, Encoder::Gd1) == ta);
  CHECK(cache.lookup(b, Encoder::Gd1) == tb);
  CHECK_FALSE(cache.lookup(a, Encoder::Gd2).has_value());
  CHECK(cache.all().size() == 2);
  CHECK(cache.path_for(ta.content_hash) != cache.path_for(tb.content_hash));
}

TEST_CASE("latest picks the most recently written entry") {
  TempDir dir;
  const MetricsCache cache(dir.path);
  const std::vector<std::uint32_t> a{1};
  const std::vector<std::uint32_t> b{2};
  cache.store(sample(a, Encoder::Gd1, "a"));
  fs::last_write_time(cache.path_for(content_hash(a, Encoder::Gd1)),
                      fs::file_time_type::clock::now() - std::chrono::hours(1));
  cache.store(sample(b, Encoder::Gd1, "b"));
  REQUIRE(cache.latest().has_value());
  CHECK(cache.latest()->dataset == "b");
}

TEST_CASE("stale content hash is a miss") {
  TempDir dir;
  const MetricsCache cache(dir.path);
  const std::vector<std::uint32_t> a{1, 2, 3};
  DiagnosticsTable t = sample(a, Encoder::Gd1, "a");
  const std::string key = t.content_hash;
  t.content_hash = "0000000000000000";
  cache_store(t, cache.path_for(key));
  CHECK_FALSE(cache.lookup(a, Encoder::Gd1).has_value());
  try {
    (void)cache_load(cache.path_for(key), key);
    FAIL("expected rejection");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::HashMismatch);
  }
}

TEST_CASE("missing and malformed entries") {
  TempDir dir;
  try {
    (void)cache_load(dir.path / "absent.json");
    FAIL("expected rejection");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotFound);
  }
  const fs::path bad = dir.path / "bad.json";
  std::ofstream(bad) << "{\"content_hash\": 12";
  try {
    (void)cache_load(bad);
    FAIL("expected rejection");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Malformed);
  }
  std::ofstream(bad, std::ios::trunc) << "{\"content_hash\": \"ab\", \"variant\": \"gd9\", \"rows\": []}";
  CHECK_THROWS_AS((void)cache_load(bad), Error);
  CHECK_THROWS_AS(table_from_json("[]"), Error);
}

TEST_CASE("csv rendering") {
  const std::vector<std::uint32_t> a{1};
  DiagnosticsTable t;
  t.dataset = "m";
  t.encoder = Encoder::Gd1;
  t.content_hash = content_hash(a, Encoder::Gd1);
  t.rows.push_back({{Encoder::Gd1, 3}, 87.5, 1.0, 2.0, 3.0});
  DiagnosticsTable d = t;
  d.encoder = Encoder::Dictionary;
  d.rows = {{{Encoder::Dictionary, 0}, 75.0, 1.0, 2.0, 3.0}};
  const std::vector<DiagnosticsTable> tables{t, d};
  const std::string csv = to_csv(tables);
  CHECK(csv.rfind("dataset,encoder,dev_size,gain_pct,seq_ns,rand_ns,scan_us\n", 0) == 0);
  CHECK(csv.find("m,gd1,3,87.5") != std::string::npos);
  CHECK(csv.find("m,dictionary,0,75") != std::string::npos);
}
