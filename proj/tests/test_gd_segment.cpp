#include <doctest.h>

#include <algorithm>
#include <random>
#include <vector>

#include "datagen.hpp"
#include "error.hpp"
#include "gd_segment.hpp"
#include "oracle.hpp"
#include "segment.hpp"

using namespace gdcomp;

namespace {

const std::vector<std::uint32_t> kSix{5, 13, 7, 64, 8, 66};
const DeviationSize kN3(3);

std::vector<std::uint32_t> random_values(std::mt19937_64& rng, std::size_t len, std::uint32_t lo, std::uint32_t hi) {
  std::uniform_int_distribution<std::uint32_t> d(lo, hi);
  std::vector<std::uint32_t> v(len);
  for (auto& x : v) x = d(rng);
  return v;
}

template <class S>
void check_scans(const S& seg, std::span<const std::uint32_t> values, std::span<const std::uint32_t> queries) {
  for (const std::uint32_t q : queries) {
    for (const Predicate p : kAllPredicates) {
      CAPTURE(q);
      CAPTURE(to_string(p));
      REQUIRE(seg.scan(p, q) == oracle::filter(values, p, q));
    }
  }
}

std::vector<std::uint32_t> probe_queries(std::span<const std::uint32_t> values, std::mt19937_64& rng) {
  std::vector<std::uint32_t> q;
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  for (std::uint32_t d : {0u, 1u, 2u}) {
    q.push_back(*lo >= d ? *lo - d : 0);
    q.push_back(*hi + d >= *hi ? *hi + d : *hi);
  }
  for (int k = 0; k < 10; ++k) q.push_back(values[rng() % values.size()]);
  for (int k = 0; k < 10; ++k) q.push_back(static_cast<std::uint32_t>(rng()));
  q.push_back(0);
  q.push_back(0xFFFFFFFFu);
  return q;
}

}  // namespace

TEST_CASE("variant 1 six-value example") {
  const GdSegment1 s = GdSegment1::encode(kSix, kN3);
  CHECK(s.bases().unpack() == std::vector<std::uint32_t>{0, 1, 8});
  CHECK(s.deviations().unpack() == std::vector<std::uint32_t>{5, 5, 7, 0, 0, 2});
  CHECK(s.base_indexes().unpack() == std::vector<std::uint32_t>{0, 1, 0, 2, 1, 2});
  for (std::size_t i = 0; i < kSix.size(); ++i) {
    CHECK(s.bases()[s.base_indexes()[i]] == oracle::base_of(kSix[i], 3));
    CHECK(s.deviations()[i] == oracle::dev_of(kSix[i], 3));
  }
  CHECK(s.get(3) == 64);
  CHECK(s.decompress() == kSix);
}

TEST_CASE("variant 2 six-value example") {
  const GdSegment2 s = GdSegment2::encode(kSix, kN3);
  CHECK(s.bases().unpack() == std::vector<std::uint32_t>{0, 1, 8});
  CHECK(s.unique_devs().unpack() == std::vector<std::uint32_t>{0, 2, 5, 7});
  const std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs{{0, 2}, {1, 2}, {0, 3}, {2, 0}, {1, 0}, {2, 1}};
  REQUIRE(s.recon().size() == pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const std::uint32_t r = s.recon()[i];
    CHECK((r >> s.dev_index_bits()) == pairs[i].first);
    CHECK((r & ((1u << s.dev_index_bits()) - 1)) == pairs[i].second);
  }
  CHECK(s.decompress() == kSix);
}

TEST_CASE("variant 3 six-value example") {
  const GdSegment3 s = GdSegment3::encode(kSix, kN3);
  CHECK(s.bases().unpack() == std::vector<std::uint32_t>{0, 1, 8});
  REQUIRE(s.local_unique_devs().size() == 3);
  CHECK(s.local_unique_devs()[0].unpack() == std::vector<std::uint32_t>{5, 7});
  CHECK(s.local_unique_devs()[1].unpack() == std::vector<std::uint32_t>{0, 5});
  CHECK(s.local_unique_devs()[2].unpack() == std::vector<std::uint32_t>{0, 2});
  CHECK(s.local_dev_indexes().unpack() == std::vector<std::uint32_t>{0, 1, 1, 0, 0, 1});
  CHECK(s.get(5) == 66);
  CHECK(s.decompress() == kSix);
}

TEST_CASE("variant 4 six-value example") {
  const GdSegment4 s = GdSegment4::encode(kSix, kN3);
  CHECK(s.bases().unpack() == std::vector<std::uint32_t>{0, 1, 8});
  REQUIRE(s.devs().size() == 3);
  CHECK(s.devs()[0].unpack() == std::vector<std::uint32_t>{5, 7});
  CHECK(s.chunk_offsets()[0].unpack() == std::vector<std::uint32_t>{0, 2});
  CHECK(s.devs()[1].unpack() == std::vector<std::uint32_t>{0, 5});
  CHECK(s.chunk_offsets()[1].unpack() == std::vector<std::uint32_t>{4, 1});
  CHECK(s.devs()[2].unpack() == std::vector<std::uint32_t>{0, 2});
  CHECK(s.chunk_offsets()[2].unpack() == std::vector<std::uint32_t>{3, 5});
  CHECK(s.decompress() == kSix);
  static_assert(!RandomAccessSegment<GdSegment4>);
  static_assert(RandomAccessSegment<GdSegment1>);
  static_assert(RandomAccessSegment<GdSegment2>);
  static_assert(RandomAccessSegment<GdSegment3>);
}

TEST_CASE("six-value scan examples") {
  const GdSegment1 s1 = GdSegment1::encode(kSix, kN3);
  const GdSegment2 s2 = GdSegment2::encode(kSix, kN3);
  const GdSegment3 s3 = GdSegment3::encode(kSix, kN3);
  const GdSegment4 s4 = GdSegment4::encode(kSix, kN3);
  const PositionList ge8{1, 3, 4, 5};
  const PositionList eq7{2};
  CHECK(s1.scan(Predicate::GreaterEquals, 8) == ge8);
  CHECK(s2.scan(Predicate::GreaterEquals, 8) == ge8);
  CHECK(s3.scan(Predicate::GreaterEquals, 8) == ge8);
  CHECK(s4.scan(Predicate::GreaterEquals, 8) == ge8);
  CHECK(s1.scan(Predicate::Equals, 7) == eq7);
  CHECK(s2.scan(Predicate::Equals, 7) == eq7);
  CHECK(s3.scan(Predicate::Equals, 7) == eq7);
  CHECK(s4.scan(Predicate::Equals, 7) == eq7);
  std::vector<std::uint32_t> queries(80);
  for (std::uint32_t q = 0; q < queries.size(); ++q) queries[q] = q;
  check_scans(s1, kSix, queries);
  check_scans(s2, kSix, queries);
  check_scans(s3, kSix, queries);
  check_scans(s4, kSix, queries);
}

TEST_CASE("singleton segment") {
  const std::vector<std::uint32_t> one{42};
  CHECK(GdSegment1::encode(one, kN3).get(0) == 42);
  CHECK(GdSegment2::encode(one, kN3).get(0) == 42);
  CHECK(GdSegment3::encode(one, kN3).get(0) == 42);
  CHECK(GdSegment1::encode(one, kN3).decompress() == one);
  CHECK(GdSegment4::encode(one, kN3).decompress() == one);
}

TEST_CASE("empty input is rejected") {
  const std::vector<std::uint32_t> none;
  CHECK_THROWS_AS(GdSegment1::encode(none, kN3), Error);
  CHECK_THROWS_AS(GdSegment2::encode(none, kN3), Error);
  CHECK_THROWS_AS(GdSegment3::encode(none, kN3), Error);
  CHECK_THROWS_AS(GdSegment4::encode(none, kN3), Error);
}

TEST_CASE("get is bounds checked") {
  const GdSegment1 s = GdSegment1::encode(kSix, kN3);
  try {
    (void)s.get(6);
    FAIL("expected rejection");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::OutOfRange);
  }
  CHECK_THROWS_AS((void)GdSegment2::encode(kSix, kN3).get(100), Error);
  CHECK_THROWS_AS((void)GdSegment3::encode(kSix, kN3).get(6), Error);
}

TEST_CASE("random round trips and scans agree with brute force") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t len = 1 + rng() % 700;
    const std::uint32_t hi = trial % 3 == 0 ? 0xFFFFFFFFu : static_cast<std::uint32_t>(rng() % 5000);
    const auto values = random_values(rng, len, 0, hi);
    const DeviationSize n(1 + static_cast<unsigned>(rng() % 30));
    CAPTURE(len);
    CAPTURE(n.bits());
    const auto s1 = GdSegment1::encode(values, n);
    const auto s2 = GdSegment2::encode(values, n);
    const auto s3 = GdSegment3::encode(values, n);
    const auto s4 = GdSegment4::encode(values, n);
    REQUIRE(s1.decompress() == values);
    REQUIRE(s2.decompress() == values);
    REQUIRE(s3.decompress() == values);
    REQUIRE(s4.decompress() == values);
    for (std::size_t i = 0; i < len; ++i) {
      REQUIRE(s1.get(i) == values[i]);
      REQUIRE(s2.get(i) == values[i]);
      REQUIRE(s3.get(i) == values[i]);
    }
    const auto queries = probe_queries(values, rng);
    check_scans(s1, values, queries);
    check_scans(s2, values, queries);
    check_scans(s3, values, queries);
    check_scans(s4, values, queries);
  }
}

TEST_CASE("equals and not-equals partition the positions") {
  std::mt19937_64 rng(5);
  const auto values = random_values(rng, 500, 0, 300);
  const GdSegment2 s = GdSegment2::encode(values, DeviationSize(4));
  for (std::uint32_t q = 0; q < 320; q += 7) {
    const PositionList eq = s.scan(Predicate::Equals, q);
    const PositionList ne = s.scan(Predicate::NotEquals, q);
    PositionList all;
    std::merge(eq.begin(), eq.end(), ne.begin(), ne.end(), std::back_inserter(all));
    REQUIRE(all.size() == values.size());
    for (std::size_t i = 0; i < all.size(); ++i) REQUIRE(all[i] == i);
  }
}

TEST_CASE("all variants agree on the months dataset") {
  const auto values = generate({DatasetKind::Months, 65535, 1});
  for (const unsigned bits : {1u, 3u, 4u, 12u}) {
    const DeviationSize n(bits);
    const auto v1 = GdSegment1::encode(values, n).decompress();
    CHECK(v1 == values);
    CHECK(GdSegment2::encode(values, n).decompress() == v1);
    CHECK(GdSegment3::encode(values, n).decompress() == v1);
    CHECK(GdSegment4::encode(values, n).decompress() == v1);
  }
}

TEST_CASE("scan resolves deviations only for the query base") {
  // Query bases absent from the segment need no deviation reads at all.
  const std::vector<std::uint32_t> values{3, 70, 71, 200, 5, 130};
  const DeviationSize n(4);
  const GdSegment1 s1 = GdSegment1::encode(values, n);
  const GdSegment3 s3 = GdSegment3::encode(values, n);
  for (const Predicate p : kAllPredicates) {
    LookupProbe probe1, probe3;
    CHECK(s1.scan(p, 100, probe1) == oracle::filter(values, p, 100));
    CHECK(s3.scan(p, 100, probe3) == oracle::filter(values, p, 100));
    CHECK(probe1.deviation_reads == 0);
    CHECK(probe3.deviation_reads == 0);
  }
  LookupProbe probe;
  (void)s1.scan(Predicate::Less, 71, probe);
  CHECK(probe.deviation_reads == 2);
}

TEST_CASE("variant 1 footprint matches the bit budget") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 30; ++trial) {
    const auto values = random_values(rng, 1 + rng() % 3000, 0, static_cast<std::uint32_t>(rng()));
    const unsigned n = 1 + static_cast<unsigned>(rng() % 30);
    REQUIRE(GdSegment1::encode(values, DeviationSize(n)).size_bytes() == oracle::gd1_bytes(values, n));
  }
}

TEST_CASE("dump mentions every list") {
  const std::string d1 = GdSegment1::encode(kSix, kN3).dump();
  CHECK(d1.find("bases") != std::string::npos);
  CHECK(d1.find("base_indexes") != std::string::npos);
  CHECK(d1.find("n=3") != std::string::npos);
  CHECK(GdSegment4::encode(kSix, kN3).dump().find("chunk_offsets") != std::string::npos);
}
