#pragma once

#include <concepts>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "instrument.hpp"
#include "scan.hpp"

namespace gdcomp {

enum class Encoder { Uncompressed, Dictionary, PFor, Heavy, Gd1, Gd2, Gd3, Gd4 };

std::string_view to_string(Encoder e) noexcept;
std::optional<Encoder> parse_encoder(std::string_view name) noexcept;
constexpr bool is_gd(Encoder e) noexcept { return e >= Encoder::Gd1; }
// Tie-break rank; lower is preferred.
int encoder_priority(Encoder e) noexcept;

// An encoder plus its deviation size (0 for the non-GD encoders).
struct Config {
  Encoder encoder = Encoder::Uncompressed;
  unsigned dev_size = 0;

  bool operator==(const Config&) const = default;
};

std::string to_string(const Config& c);

template <class S>
concept RandomAccessSegment = requires(const S& s, std::size_t i, LookupProbe& probe) {
  { s.get(i) } -> std::same_as<std::uint32_t>;
  { s.get(i, probe) } -> std::same_as<std::uint32_t>;
};

template <class S>
concept EncodedSegment = requires(const S& s, Predicate p, std::uint32_t q, LookupProbe& probe) {
  { s.size() } -> std::convertible_to<std::size_t>;
  { s.size_bytes() } -> std::convertible_to<std::size_t>;
  { s.decompress() } -> std::same_as<std::vector<std::uint32_t>>;
  { s.scan(p, q) } -> std::same_as<PositionList>;
  { s.dump() } -> std::convertible_to<std::string>;
};

/**
 * @brief Type-erased view over any encoded segment, used by the profiler.
 *
 * get() and gather() throw Unsupported on segments without random access.
 */
class Segment {
 public:
  virtual ~Segment() = default;

  virtual Config config() const = 0;
  virtual std::size_t size() const = 0;
  virtual std::size_t size_bytes() const = 0;
  virtual bool random_access() const = 0;
  virtual std::uint32_t get(std::size_t i) const = 0;
  virtual std::uint32_t get(std::size_t i, LookupProbe& probe) const = 0;
  // out[k] = value at offsets[k].
  virtual void gather(std::span<const std::uint32_t> offsets, std::span<std::uint32_t> out) const = 0;
  virtual std::vector<std::uint32_t> decompress() const = 0;
  virtual PositionList scan(Predicate p, std::uint32_t query) const = 0;
  virtual std::string dump() const = 0;
};

// Throws InvalidArgument for empty input, or a GD encoder without a valid deviation size.
std::unique_ptr<Segment> encode_segment(const Config& config, std::span<const std::uint32_t> values);

}  // namespace gdcomp
