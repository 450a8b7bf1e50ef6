#include "segment.hpp"

#include <array>
#include <utility>

#include "baselines.hpp"
#include "error.hpp"
#include "gd_segment.hpp"

namespace gdcomp {

namespace instrument {
namespace {
thread_local std::uint64_t decompression_count = 0;
}
std::uint64_t decompressions() noexcept { return decompression_count; }
void count_decompression() noexcept { ++decompression_count; }
}  // namespace instrument

namespace {

constexpr std::array<std::pair<Predicate, std::string_view>, 6> kPredicateNames = {{
    {Predicate::Equals, "equals"},
    {Predicate::NotEquals, "not-equals"},
    {Predicate::Greater, "greater"},
    {Predicate::GreaterEquals, "greater-equals"},
    {Predicate::Less, "less"},
    {Predicate::LessEquals, "less-equals"},
}};

constexpr std::array<std::pair<Encoder, std::string_view>, 8> kEncoderNames = {{
    {Encoder::Uncompressed, "uncompressed"},
    {Encoder::Dictionary, "dictionary"},
    {Encoder::PFor, "pfor"},
    {Encoder::Heavy, "heavy"},
    {Encoder::Gd1, "gd1"},
    {Encoder::Gd2, "gd2"},
    {Encoder::Gd3, "gd3"},
    {Encoder::Gd4, "gd4"},
}};

template <EncodedSegment S>
class SegmentAdapter final : public Segment {
 public:
  SegmentAdapter(Config config, S segment) : config_(config), segment_(std::move(segment)) {}

  Config config() const override { return config_; }
  std::size_t size() const override { return segment_.size(); }
  std::size_t size_bytes() const override { return segment_.size_bytes(); }
  bool random_access() const override { return RandomAccessSegment<S>; }

  std::uint32_t get(std::size_t i) const override {
    if constexpr (RandomAccessSegment<S>) {
      return segment_.get(i);
    } else {
      unsupported();
    }
  }

  std::uint32_t get(std::size_t i, LookupProbe& probe) const override {
    if constexpr (RandomAccessSegment<S>) {
      return segment_.get(i, probe);
    } else {
      unsupported();
    }
  }

  void gather(std::span<const std::uint32_t> offsets, std::span<std::uint32_t> out) const override {
    if constexpr (RandomAccessSegment<S>) {
      if (out.size() < offsets.size()) fail(ErrorCode::InvalidArgument, "gather output buffer too small");
      for (std::size_t k = 0; k < offsets.size(); ++k) out[k] = segment_.get(offsets[k]);
    } else {
      unsupported();
    }
  }

  std::vector<std::uint32_t> decompress() const override { return segment_.decompress(); }
  PositionList scan(Predicate p, std::uint32_t query) const override { return segment_.scan(p, query); }
  std::string dump() const override { return segment_.dump(); }

  const S& concrete() const noexcept { return segment_; }

 private:
  [[noreturn]] void unsupported() const {
    fail(ErrorCode::Unsupported, std::string(to_string(config_.encoder)) + " segments are not random accessible");
  }

  Config config_;
  S segment_;
};

template <class S>
std::unique_ptr<Segment> wrap(Config c, S seg) {
  return std::make_unique<SegmentAdapter<S>>(c, std::move(seg));
}

}  // namespace

std::string_view to_string(Predicate p) noexcept {
  for (const auto& [pred, name] : kPredicateNames) {
    if (pred == p) return name;
  }
  return "?";
}

std::optional<Predicate> parse_predicate(std::string_view name) noexcept {
  for (const auto& [pred, n] : kPredicateNames) {
    if (n == name) return pred;
  }
  return std::nullopt;
}

std::string_view to_string(Encoder e) noexcept {
  for (const auto& [enc, name] : kEncoderNames) {
    if (enc == e) return name;
  }
  return "?";
}

std::optional<Encoder> parse_encoder(std::string_view name) noexcept {
  for (const auto& [enc, n] : kEncoderNames) {
    if (n == name) return enc;
  }
  return std::nullopt;
}

int encoder_priority(Encoder e) noexcept {
  switch (e) {
    case Encoder::Dictionary: return 0;
    case Encoder::PFor: return 1;
    case Encoder::Gd1: return 2;
    case Encoder::Gd2: return 3;
    case Encoder::Gd3: return 4;
    case Encoder::Gd4: return 5;
    case Encoder::Heavy: return 6;
    case Encoder::Uncompressed: return 7;
  }
  return 8;
}

std::string to_string(const Config& c) {
  std::string s(to_string(c.encoder));
  if (is_gd(c.encoder)) s += ":" + std::to_string(c.dev_size);
  return s;
}

std::unique_ptr<Segment> encode_segment(const Config& c, std::span<const std::uint32_t> values) {
  switch (c.encoder) {
    case Encoder::Uncompressed: return wrap(c, UncompressedSegment::encode(values));
    case Encoder::Dictionary: return wrap(c, DictionarySegment::encode(values));
    case Encoder::PFor: return wrap(c, PForSegment::encode(values));
    case Encoder::Heavy: return wrap(c, HeavySegment::encode(values));
    case Encoder::Gd1: return wrap(c, GdSegment1::encode(values, DeviationSize(c.dev_size)));
    case Encoder::Gd2: return wrap(c, GdSegment2::encode(values, DeviationSize(c.dev_size)));
    case Encoder::Gd3: return wrap(c, GdSegment3::encode(values, DeviationSize(c.dev_size)));
    case Encoder::Gd4: return wrap(c, GdSegment4::encode(values, DeviationSize(c.dev_size)));
  }
  fail(ErrorCode::InvalidArgument, "unknown encoder");
}

}  // namespace gdcomp
