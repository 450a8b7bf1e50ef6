#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "error.hpp"
#include "instrument.hpp"
#include "scan.hpp"

namespace gdcomp {

namespace detail {
[[noreturn]] void position_out_of_range(std::size_t i, std::size_t size);
}

// Plain 4-byte values; the reference point for compression gain.
class UncompressedSegment {
 public:
  static UncompressedSegment encode(std::span<const std::uint32_t> values);

  std::size_t size() const noexcept { return data_.size(); }
  std::size_t size_bytes() const noexcept { return data_.size() * sizeof(std::uint32_t); }

  std::uint32_t get(std::size_t i) const {
    NullProbe probe;
    return get(i, probe);
  }
  template <class Probe>
  std::uint32_t get(std::size_t i, Probe& probe) const {
    if (i >= size()) detail::position_out_of_range(i, size());
    probe(ListKind::Data);
    return data_[i];
  }

  std::vector<std::uint32_t> decompress() const;
  PositionList scan(Predicate p, std::uint32_t query) const;
  std::string dump() const;

 private:
  std::vector<std::uint32_t> data_;
};

/**
 * Sorted dictionary of distinct values plus a byte-aligned attribute vector
 * of 1, 2 or 4 byte indexes.
 */
class DictionarySegment {
 public:
  static DictionarySegment encode(std::span<const std::uint32_t> values);

  std::size_t size() const noexcept { return size_; }
  std::size_t size_bytes() const noexcept;
  unsigned attribute_width() const noexcept { return width_; }
  const std::vector<std::uint32_t>& dictionary() const noexcept { return dictionary_; }
  std::uint32_t attribute(std::size_t i) const noexcept {
    switch (width_) {
      case 1: return attributes_[i];
      case 2: return attributes_[2 * i] | (std::uint32_t{attributes_[2 * i + 1]} << 8);
      default:
        return attributes_[4 * i] | (std::uint32_t{attributes_[4 * i + 1]} << 8) |
               (std::uint32_t{attributes_[4 * i + 2]} << 16) | (std::uint32_t{attributes_[4 * i + 3]} << 24);
    }
  }

  std::uint32_t get(std::size_t i) const {
    NullProbe probe;
    return get(i, probe);
  }
  template <class Probe>
  std::uint32_t get(std::size_t i, Probe& probe) const {
    if (i >= size()) detail::position_out_of_range(i, size());
    probe(ListKind::AttributeVector);
    const std::uint32_t index = attribute(i);
    probe(ListKind::Dictionary);
    return dictionary_[index];
  }

  std::vector<std::uint32_t> decompress() const;
  // Binary search on the dictionary, then index comparison on the attribute vector.
  PositionList scan(Predicate p, std::uint32_t query) const;
  std::string dump() const;

 private:
  std::size_t size_ = 0;
  unsigned width_ = 1;
  std::vector<std::uint32_t> dictionary_;
  std::vector<std::uint8_t> attributes_;  // little-endian, width_ bytes each
};

/**
 * Frame of reference over blocks of 2048 values. Each block keeps its minimum
 * and the deltas from it at a byte-aligned width of 1, 2 or 4 bytes.
 */
class PForSegment {
 public:
  static constexpr std::size_t kBlockSize = 2048;

  struct Block {
    std::uint32_t reference = 0;
    unsigned delta_width = 1;
    std::vector<std::uint8_t> deltas;

    std::uint32_t delta(std::size_t j) const noexcept {
      switch (delta_width) {
        case 1: return deltas[j];
        case 2: return deltas[2 * j] | (std::uint32_t{deltas[2 * j + 1]} << 8);
        default:
          return deltas[4 * j] | (std::uint32_t{deltas[4 * j + 1]} << 8) | (std::uint32_t{deltas[4 * j + 2]} << 16) |
                 (std::uint32_t{deltas[4 * j + 3]} << 24);
      }
    }
    std::size_t size() const noexcept { return deltas.size() / delta_width; }
    // Serialized image: reference, width byte, deltas.
    std::vector<std::uint8_t> bytes() const;
    bool operator==(const Block&) const = default;
  };

  static PForSegment encode(std::span<const std::uint32_t> values);

  std::size_t size() const noexcept { return size_; }
  std::size_t size_bytes() const noexcept;
  const std::vector<Block>& blocks() const noexcept { return blocks_; }

  std::uint32_t get(std::size_t i) const {
    NullProbe probe;
    return get(i, probe);
  }
  template <class Probe>
  std::uint32_t get(std::size_t i, Probe& probe) const {
    if (i >= size()) detail::position_out_of_range(i, size());
    probe(ListKind::Data);
    const Block& b = blocks_[i / kBlockSize];
    return b.reference + b.delta(i % kBlockSize);
  }

  std::vector<std::uint32_t> decompress() const;
  // Decodes everything, then filters.
  PositionList scan(Predicate p, std::uint32_t query) const;
  std::string dump() const;

 private:
  std::size_t size_ = 0;
  std::vector<Block> blocks_;
};

/**
 * Whole-segment deflate (zlib) over the little-endian byte image of the values.
 * No per-element access; callers decompress once.
 */
class HeavySegment {
 public:
  static HeavySegment encode(std::span<const std::uint32_t> values);
  // Wraps an existing blob; corruption surfaces on decompress().
  static HeavySegment from_blob(std::vector<std::uint8_t> blob, std::size_t length);

  std::size_t size() const noexcept { return size_; }
  std::size_t size_bytes() const noexcept { return blob_.size() + kHeaderBytes; }
  const std::vector<std::uint8_t>& blob() const noexcept { return blob_; }

  // Throws Corrupt if the blob does not inflate to exactly size() values.
  std::vector<std::uint32_t> decompress() const;
  PositionList scan(Predicate p, std::uint32_t query) const;
  std::string dump() const;

 private:
  static constexpr std::size_t kHeaderBytes = 8;
  std::size_t size_ = 0;
  std::vector<std::uint8_t> blob_;
};

}  // namespace gdcomp
