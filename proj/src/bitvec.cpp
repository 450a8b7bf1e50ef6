#include "bitvec.hpp"

#include <algorithm>
#include <string>

#include "error.hpp"

namespace gdcomp {

PackedVector PackedVector::pack(std::span<const std::uint32_t> values, unsigned width) {
  if (width < 1 || width > 32) {
    fail(ErrorCode::InvalidArgument, "packed vector width must be in 1..32, got " + std::to_string(width));
  }
  PackedVector pv;
  pv.width_ = width;
  pv.size_ = values.size();
  pv.mask_ = (std::uint64_t{1} << width) - 1;
  pv.words_.assign((values.size() * width + kWordBits - 1) / kWordBits, 0);

  for (std::size_t i = 0; i < values.size(); ++i) {
    const std::uint64_t v = values[i];
    if (v > pv.mask_) {
      fail(ErrorCode::ValueExceedsWidth, "value " + std::to_string(v) + " at index " + std::to_string(i) +
                                             " does not fit in " + std::to_string(width) + " bits");
    }
    const std::size_t bit = i * width;
    const std::size_t word = bit / kWordBits;
    const unsigned offset = bit % kWordBits;
    pv.words_[word] |= v << offset;
    if (offset + width > kWordBits) pv.words_[word + 1] |= v >> (kWordBits - offset);
  }
  return pv;
}

PackedVector PackedVector::pack_fit(std::span<const std::uint32_t> values) {
  const std::uint32_t max = values.empty() ? 0 : *std::max_element(values.begin(), values.end());
  return pack(values, min_width(max));
}

std::uint32_t PackedVector::read(std::size_t i) const {
  if (i >= size_) {
    fail(ErrorCode::OutOfRange,
         "position " + std::to_string(i) + " out of range for packed vector of length " + std::to_string(size_));
  }
  return (*this)[i];
}

std::vector<std::uint32_t> PackedVector::unpack() const {
  std::vector<std::uint32_t> out(size_);
  for (std::size_t i = 0; i < size_; ++i) out[i] = (*this)[i];
  return out;
}

std::size_t PackedVector::lower_bound(std::uint32_t key, std::size_t first, std::size_t last) const noexcept {
  std::size_t count = last - first;
  while (count > 0) {
    const std::size_t step = count / 2;
    if ((*this)[first + step] < key) {
      first += step + 1;
      count -= step + 1;
    } else {
      count = step;
    }
  }
  return first;
}

std::size_t PackedVector::upper_bound(std::uint32_t key, std::size_t first, std::size_t last) const noexcept {
  std::size_t count = last - first;
  while (count > 0) {
    const std::size_t step = count / 2;
    if (!(key < (*this)[first + step])) {
      first += step + 1;
      count -= step + 1;
    } else {
      count = step;
    }
  }
  return first;
}

}  // namespace gdcomp
