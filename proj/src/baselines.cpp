#include "baselines.hpp"

#include <zlib.h>

#include <algorithm>
#include <cstring>
#include <sstream>
#include <utility>

namespace gdcomp {

namespace {

unsigned byte_width(std::uint32_t max_value) noexcept {
  if (max_value <= 0xFF) return 1;
  if (max_value <= 0xFFFF) return 2;
  return 4;
}

void put_le(std::vector<std::uint8_t>& out, std::uint32_t v, unsigned width) {
  for (unsigned k = 0; k < width; ++k) out.push_back(static_cast<std::uint8_t>(v >> (8 * k)));
}

std::vector<std::uint8_t> le_image(std::span<const std::uint32_t> values) {
  std::vector<std::uint8_t> bytes;
  bytes.reserve(values.size() * 4);
  for (const std::uint32_t v : values) put_le(bytes, v, 4);
  return bytes;
}

void require_values(std::span<const std::uint32_t> values) {
  if (values.empty()) fail(ErrorCode::InvalidArgument, "cannot encode an empty segment");
}

}  // namespace

PositionList filter_scan(std::span<const std::uint32_t> values, Predicate p, std::uint32_t query) {
  PositionSink sink(values.size());
  dispatch(p, [&]<Predicate P>() {
    for (std::size_t i = 0; i < values.size(); ++i) sink.add_if(evaluate(P, values[i], query), static_cast<std::uint32_t>(i));
  });
  return std::move(sink).finish();
}

// ---------------------------------------------------------------------------

UncompressedSegment UncompressedSegment::encode(std::span<const std::uint32_t> values) {
  require_values(values);
  UncompressedSegment seg;
  seg.data_.assign(values.begin(), values.end());
  return seg;
}

std::vector<std::uint32_t> UncompressedSegment::decompress() const {
  instrument::count_decompression();
  return data_;
}

PositionList UncompressedSegment::scan(Predicate p, std::uint32_t query) const {
  return filter_scan(data_, p, query);
}

std::string UncompressedSegment::dump() const {
  std::ostringstream os;
  os << "uncompressed length=" << size() << " bytes=" << size_bytes() << '\n';
  os << "  data: first=" << data_.front() << " last=" << data_.back() << '\n';
  return os.str();
}

// ---------------------------------------------------------------------------

DictionarySegment DictionarySegment::encode(std::span<const std::uint32_t> values) {
  require_values(values);
  DictionarySegment seg;
  seg.size_ = values.size();
  seg.dictionary_.assign(values.begin(), values.end());
  std::sort(seg.dictionary_.begin(), seg.dictionary_.end());
  seg.dictionary_.erase(std::unique(seg.dictionary_.begin(), seg.dictionary_.end()), seg.dictionary_.end());
  seg.width_ = byte_width(static_cast<std::uint32_t>(seg.dictionary_.size() - 1));
  seg.attributes_.reserve(values.size() * seg.width_);
  for (const std::uint32_t v : values) {
    const auto index = static_cast<std::uint32_t>(
        std::lower_bound(seg.dictionary_.begin(), seg.dictionary_.end(), v) - seg.dictionary_.begin());
    put_le(seg.attributes_, index, seg.width_);
  }
  return seg;
}

std::size_t DictionarySegment::size_bytes() const noexcept {
  return dictionary_.size() * sizeof(std::uint32_t) + attributes_.size() + 2 * 8;
}

std::vector<std::uint32_t> DictionarySegment::decompress() const {
  instrument::count_decompression();
  std::vector<std::uint32_t> out(size_);
  for (std::size_t i = 0; i < size_; ++i) out[i] = dictionary_[attribute(i)];
  return out;
}

PositionList DictionarySegment::scan(Predicate p, std::uint32_t query) const {
  const auto it = std::lower_bound(dictionary_.begin(), dictionary_.end(), query);
  const auto first = static_cast<std::uint32_t>(it - dictionary_.begin());
  const bool present = it != dictionary_.end() && *it == query;

  // Translate the value predicate into one over dictionary indexes.
  Predicate index_predicate = p;
  std::uint32_t index_query = first;
  PositionList out;
  switch (p) {
    case Predicate::Equals:
      if (!present) return out;
      break;
    case Predicate::NotEquals:
      if (!present) {
        out.resize(size_);
        for (std::size_t i = 0; i < size_; ++i) out[i] = static_cast<std::uint32_t>(i);
        return out;
      }
      break;
    case Predicate::Greater:
      if (!present) index_predicate = Predicate::GreaterEquals;
      break;
    case Predicate::LessEquals:
      if (!present) index_predicate = Predicate::Less;
      break;
    case Predicate::GreaterEquals:
    case Predicate::Less: break;
  }
  PositionSink sink(size_);
  dispatch(index_predicate, [&]<Predicate P>() {
    for (std::size_t i = 0; i < size_; ++i) {
      sink.add_if(evaluate(P, attribute(i), index_query), static_cast<std::uint32_t>(i));
    }
  });
  return std::move(sink).finish();
}

std::string DictionarySegment::dump() const {
  std::ostringstream os;
  os << "dictionary length=" << size_ << " distinct=" << dictionary_.size() << " attribute_width=" << width_
     << " bytes=" << size_bytes() << '\n';
  os << "  dictionary: first=" << dictionary_.front() << " last=" << dictionary_.back() << '\n';
  os << "  attribute_vector: length=" << size_ << " first=" << attribute(0) << " last=" << attribute(size_ - 1)
     << '\n';
  return os.str();
}

// ---------------------------------------------------------------------------

std::vector<std::uint8_t> PForSegment::Block::bytes() const {
  std::vector<std::uint8_t> out;
  put_le(out, reference, 4);
  out.push_back(static_cast<std::uint8_t>(delta_width));
  out.insert(out.end(), deltas.begin(), deltas.end());
  return out;
}

PForSegment PForSegment::encode(std::span<const std::uint32_t> values) {
  require_values(values);
  PForSegment seg;
  seg.size_ = values.size();
  for (std::size_t start = 0; start < values.size(); start += kBlockSize) {
    const auto chunk = values.subspan(start, std::min(kBlockSize, values.size() - start));
    const auto [lo, hi] = std::minmax_element(chunk.begin(), chunk.end());
    Block b;
    b.reference = *lo;
    b.delta_width = byte_width(*hi - *lo);
    b.deltas.reserve(chunk.size() * b.delta_width);
    for (const std::uint32_t v : chunk) put_le(b.deltas, v - b.reference, b.delta_width);
    seg.blocks_.push_back(std::move(b));
  }
  return seg;
}

std::size_t PForSegment::size_bytes() const noexcept {
  std::size_t bytes = 8;
  for (const Block& b : blocks_) bytes += 4 + 1 + b.deltas.size();
  return bytes;
}

std::vector<std::uint32_t> PForSegment::decompress() const {
  instrument::count_decompression();
  std::vector<std::uint32_t> out;
  out.reserve(size_);
  for (const Block& b : blocks_) {
    for (std::size_t j = 0; j < b.size(); ++j) out.push_back(b.reference + b.delta(j));
  }
  return out;
}

PositionList PForSegment::scan(Predicate p, std::uint32_t query) const { return filter_scan(decompress(), p, query); }

std::string PForSegment::dump() const {
  std::ostringstream os;
  std::size_t widths[5] = {};
  for (const Block& b : blocks_) ++widths[b.delta_width];
  os << "pfor length=" << size_ << " blocks=" << blocks_.size() << " bytes=" << size_bytes() << '\n';
  os << "  delta widths: 1B=" << widths[1] << " 2B=" << widths[2] << " 4B=" << widths[4] << '\n';
  os << "  first block: reference=" << blocks_.front().reference << " width=" << blocks_.front().delta_width << '\n';
  os << "  last block: reference=" << blocks_.back().reference << " width=" << blocks_.back().delta_width << '\n';
  return os.str();
}

// ---------------------------------------------------------------------------

HeavySegment HeavySegment::encode(std::span<const std::uint32_t> values) {
  require_values(values);
  const std::vector<std::uint8_t> image = le_image(values);
  uLongf capacity = compressBound(static_cast<uLong>(image.size()));
  std::vector<std::uint8_t> blob(capacity);
  const int rc = compress2(blob.data(), &capacity, image.data(), static_cast<uLong>(image.size()),
                           Z_DEFAULT_COMPRESSION);
  if (rc != Z_OK) fail(ErrorCode::Corrupt, "zlib compression failed with code " + std::to_string(rc));
  blob.resize(capacity);
  return from_blob(std::move(blob), values.size());
}

HeavySegment HeavySegment::from_blob(std::vector<std::uint8_t> blob, std::size_t length) {
  HeavySegment seg;
  seg.size_ = length;
  seg.blob_ = std::move(blob);
  return seg;
}

std::vector<std::uint32_t> HeavySegment::decompress() const {
  instrument::count_decompression();
  std::vector<std::uint8_t> image(size_ * 4);
  uLongf produced = static_cast<uLongf>(image.size());
  const int rc = uncompress(image.data(), &produced, blob_.data(), static_cast<uLong>(blob_.size()));
  if (rc != Z_OK || produced != image.size()) {
    fail(ErrorCode::Corrupt, "heavy segment blob is corrupt (zlib code " + std::to_string(rc) + ", " +
                                 std::to_string(produced) + " of " + std::to_string(image.size()) + " bytes)");
  }
  std::vector<std::uint32_t> out(size_);
  for (std::size_t i = 0; i < size_; ++i) {
    out[i] = std::uint32_t{image[4 * i]} | (std::uint32_t{image[4 * i + 1]} << 8) |
             (std::uint32_t{image[4 * i + 2]} << 16) | (std::uint32_t{image[4 * i + 3]} << 24);
  }
  return out;
}

PositionList HeavySegment::scan(Predicate p, std::uint32_t query) const {
  return filter_scan(decompress(), p, query);
}

std::string HeavySegment::dump() const {
  std::ostringstream os;
  os << "heavy length=" << size_ << " blob=" << blob_.size() << " bytes=" << size_bytes() << '\n';
  return os.str();
}

}  // namespace gdcomp
