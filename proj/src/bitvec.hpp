#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace gdcomp {

// Smallest w in 1..32 with max_value < 2^w.
constexpr unsigned min_width(std::uint32_t max_value) noexcept {
  unsigned w = 1;
  while (w < 32 && (max_value >> w) != 0) ++w;
  return w;
}

/**
 * @brief Immutable fixed-width bit-packed sequence of unsigned 32-bit values.
 *
 * Elements are stored back to back in 64-bit words and may straddle a word
 * boundary. The payload holds exactly ceil(width * size / 64) words.
 */
class PackedVector {
 public:
  static constexpr unsigned kWordBits = 64;
  // Per-list accounting charge for the width and length descriptors.
  static constexpr std::size_t kHeaderBytes = 8;

  PackedVector() = default;

  // Throws ValueExceedsWidth naming the first offending index.
  static PackedVector pack(std::span<const std::uint32_t> values, unsigned width);

  // Packs with width = min_width(max(values)).
  static PackedVector pack_fit(std::span<const std::uint32_t> values);

  unsigned width() const noexcept { return width_; }
  std::size_t size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }

  // Unchecked.
  std::uint32_t operator[](std::size_t i) const noexcept {
    const std::size_t bit = i * width_;
    const std::size_t word = bit / kWordBits;
    const unsigned offset = bit % kWordBits;
    std::uint64_t v = words_[word] >> offset;
    if (offset + width_ > kWordBits) v |= words_[word + 1] << (kWordBits - offset);
    return static_cast<std::uint32_t>(v & mask_);
  }

  // Checked; throws OutOfRange.
  std::uint32_t read(std::size_t i) const;

  std::vector<std::uint32_t> unpack() const;

  // Index of the first element >= key in a non-decreasing vector, searching [first, last).
  std::size_t lower_bound(std::uint32_t key, std::size_t first, std::size_t last) const noexcept;
  std::size_t lower_bound(std::uint32_t key) const noexcept { return lower_bound(key, 0, size_); }
  // Index of the first element > key in a non-decreasing vector, searching [first, last).
  std::size_t upper_bound(std::uint32_t key, std::size_t first, std::size_t last) const noexcept;
  std::size_t upper_bound(std::uint32_t key) const noexcept { return upper_bound(key, 0, size_); }

  std::size_t size_bits() const noexcept { return words_.size() * kWordBits; }
  std::size_t payload_bytes() const noexcept { return words_.size() * sizeof(std::uint64_t); }
  std::size_t accounted_bytes() const noexcept { return payload_bytes() + kHeaderBytes; }

  std::span<const std::uint64_t> words() const noexcept { return words_; }

  bool operator==(const PackedVector& other) const = default;

 private:
  unsigned width_ = 1;
  std::size_t size_ = 0;
  std::uint64_t mask_ = 1;
  std::vector<std::uint64_t> words_;
};

}  // namespace gdcomp
