#include "gd_segment.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>
#include <type_traits>
#include <utility>

namespace gdcomp {

namespace detail {
void position_out_of_range(std::size_t i, std::size_t size) {
  fail(ErrorCode::OutOfRange, "position " + std::to_string(i) + " out of range for segment of length " +
                                  std::to_string(size));
}
}  // namespace detail

namespace {

struct SplitValues {
  std::vector<std::uint32_t> bases;  // sorted, unique
  std::vector<std::uint32_t> base_index;
  std::vector<std::uint32_t> deviations;
};

SplitValues split_all(std::span<const std::uint32_t> values, DeviationSize n) {
  if (values.empty()) fail(ErrorCode::InvalidArgument, "cannot encode an empty segment");
  SplitValues s;
  s.deviations.reserve(values.size());
  s.base_index.reserve(values.size());
  std::vector<std::uint32_t> raw_bases;
  raw_bases.reserve(values.size());
  for (const std::uint32_t v : values) {
    const BaseDeviation bd = split(v, n);
    raw_bases.push_back(bd.base);
    s.deviations.push_back(bd.deviation);
  }
  s.bases = raw_bases;
  std::sort(s.bases.begin(), s.bases.end());
  s.bases.erase(std::unique(s.bases.begin(), s.bases.end()), s.bases.end());
  for (const std::uint32_t b : raw_bases) {
    s.base_index.push_back(
        static_cast<std::uint32_t>(std::lower_bound(s.bases.begin(), s.bases.end(), b) - s.bases.begin()));
  }
  return s;
}

std::uint32_t last_index(std::size_t count) { return count == 0 ? 0 : static_cast<std::uint32_t>(count - 1); }

BaseRangeClassifier locate(const PackedVector& bases, Predicate p, std::uint32_t query_base) {
  const std::size_t first = bases.lower_bound(query_base);
  return {p, first, first < bases.size() && bases[first] == query_base};
}

// Deviation-side matching for the query base, expressed as index ranges over a
// sorted deviation list: [0, lo) are < qd, [lo, hi) are == qd, [hi, size) are > qd.
struct DevRange {
  std::size_t lo;
  std::size_t hi;
};

template <class Probe>
DevRange dev_range(const PackedVector& sorted, std::uint32_t qd, Probe& probe) {
  probe(ListKind::Deviations);
  return {sorted.lower_bound(qd), sorted.upper_bound(qd)};
}

// Is sorted-deviation index `j` a match for predicate `p` given the query deviation range?
constexpr bool index_matches(Predicate p, std::size_t j, DevRange r) noexcept {
  switch (p) {
    case Predicate::Equals: return j >= r.lo && j < r.hi;
    case Predicate::NotEquals: return j < r.lo || j >= r.hi;
    case Predicate::Greater: return j >= r.hi;
    case Predicate::GreaterEquals: return j >= r.lo;
    case Predicate::Less: return j < r.lo;
    case Predicate::LessEquals: return j < r.hi;
  }
  return false;
}

void dump_list(std::ostringstream& os, const std::string& name, const PackedVector& pv) {
  os << "  " << name << ": length=" << pv.size() << " width=" << pv.width() << " bytes=" << pv.accounted_bytes();
  if (!pv.empty()) {
    os << " first=" << pv[0] << " last=" << pv[pv.size() - 1];
  }
  os << '\n';
}

void dump_groups(std::ostringstream& os, const std::string& name, const std::vector<PackedVector>& lists) {
  std::size_t total = 0;
  std::size_t bytes = 0;
  std::size_t longest = 0;
  for (const auto& l : lists) {
    total += l.size();
    bytes += l.accounted_bytes();
    longest = std::max(longest, l.size());
  }
  os << "  " << name << ": lists=" << lists.size() << " elements=" << total << " longest=" << longest
     << " bytes=" << bytes;
  if (!lists.empty() && !lists.front().empty()) {
    os << " first_list=[" << lists.front()[0] << ".." << lists.front()[lists.front().size() - 1] << "]";
  }
  os << '\n';
}

template <class Lists>
std::size_t accounted(const Lists& lists) {
  std::size_t bytes = 0;
  for (const auto& l : lists) bytes += l.accounted_bytes();
  return bytes;
}

}  // namespace

// ---------------------------------------------------------------------------
// GD Segment 1

GdSegment1 GdSegment1::encode(std::span<const std::uint32_t> values, DeviationSize n) {
  SplitValues s = split_all(values, n);
  GdSegment1 seg(n);
  seg.bases_ = PackedVector::pack(s.bases, n.base_bits());
  seg.deviations_ = PackedVector::pack(s.deviations, n.bits());
  seg.base_indexes_ = PackedVector::pack(s.base_index, min_width(last_index(s.bases.size())));
  return seg;
}

std::size_t GdSegment1::size_bytes() const noexcept {
  return bases_.accounted_bytes() + deviations_.accounted_bytes() + base_indexes_.accounted_bytes();
}

std::vector<std::uint32_t> GdSegment1::decompress() const {
  instrument::count_decompression();
  std::vector<std::uint32_t> out(size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = merge(bases_[base_indexes_[i]], deviations_[i], n_);
  return out;
}

template <class Probe>
PositionList GdSegment1::scan_impl(Predicate p, std::uint32_t query, Probe& probe) const {
  const BaseDeviation q = split(query, n_);
  const BaseRangeClassifier cls = locate(bases_, p, q.base);
  PositionList out;
  if (p == Predicate::Equals && !cls.present) return out;

  const std::size_t count = size();
  PositionSink sink(count);
  dispatch(p, [&]<Predicate P>() {
    const BaseRangeClassifier c{P, cls.first, cls.present};
    for (std::size_t i = 0; i < count; ++i) {
      probe(ListKind::BaseIndexes);
      const std::uint32_t b = base_indexes_[i];
      bool match;
      if constexpr (std::is_same_v<Probe, NullProbe>) {
        const bool dev_match = evaluate(P, deviations_[i], q.deviation);
        match = c.is_query_base(b) ? dev_match : c.fully_in(b);
      } else if (c.is_query_base(b)) {
        probe(ListKind::Deviations);
        match = evaluate(P, deviations_[i], q.deviation);
      } else {
        match = c.fully_in(b);
      }
      sink.add_if(match, static_cast<std::uint32_t>(i));
    }
  });
  return std::move(sink).finish();
}

PositionList GdSegment1::scan(Predicate p, std::uint32_t query) const {
  NullProbe probe;
  return scan_impl(p, query, probe);
}

PositionList GdSegment1::scan(Predicate p, std::uint32_t query, LookupProbe& probe) const {
  return scan_impl(p, query, probe);
}

std::string GdSegment1::dump() const {
  std::ostringstream os;
  os << "gd1 n=" << n_.bits() << " length=" << size() << " bases=" << bases_.size() << " bytes=" << size_bytes()
     << '\n';
  dump_list(os, "bases", bases_);
  dump_list(os, "deviations", deviations_);
  dump_list(os, "base_indexes", base_indexes_);
  return os.str();
}

// ---------------------------------------------------------------------------
// GD Segment 2

GdSegment2 GdSegment2::encode(std::span<const std::uint32_t> values, DeviationSize n) {
  SplitValues s = split_all(values, n);
  std::vector<std::uint32_t> unique = s.deviations;
  std::sort(unique.begin(), unique.end());
  unique.erase(std::unique(unique.begin(), unique.end()), unique.end());

  GdSegment2 seg(n);
  const unsigned base_bits = min_width(last_index(s.bases.size()));
  seg.dev_index_bits_ = min_width(last_index(unique.size()));

  std::vector<std::uint32_t> recon(values.size());
  for (std::size_t i = 0; i < recon.size(); ++i) {
    const auto di =
        static_cast<std::uint32_t>(std::lower_bound(unique.begin(), unique.end(), s.deviations[i]) - unique.begin());
    recon[i] = (s.base_index[i] << seg.dev_index_bits_) | di;
  }
  seg.bases_ = PackedVector::pack(s.bases, n.base_bits());
  seg.unique_devs_ = PackedVector::pack(unique, n.bits());
  seg.recon_ = PackedVector::pack(recon, base_bits + seg.dev_index_bits_);
  return seg;
}

std::size_t GdSegment2::size_bytes() const noexcept {
  return bases_.accounted_bytes() + unique_devs_.accounted_bytes() + recon_.accounted_bytes();
}

std::vector<std::uint32_t> GdSegment2::decompress() const {
  instrument::count_decompression();
  std::vector<std::uint32_t> out(size());
  const std::uint32_t mask = dev_index_mask();
  for (std::size_t i = 0; i < out.size(); ++i) {
    const std::uint32_t pair = recon_[i];
    out[i] = merge(bases_[pair >> dev_index_bits_], unique_devs_[pair & mask], n_);
  }
  return out;
}

// Base and deviation indexes are both order preserving, so the packed pair
// (base index high, deviation index low) orders like the values themselves and
// every predicate reduces to one comparison against a threshold pair.
template <class Probe>
PositionList GdSegment2::scan_impl(Predicate p, std::uint32_t query, Probe& probe) const {
  const BaseDeviation q = split(query, n_);
  const BaseRangeClassifier cls = locate(bases_, p, q.base);
  DevRange r{0, 0};
  if (cls.present) r = dev_range(unique_devs_, q.deviation, probe);

  const auto key = [this](std::size_t base_index, std::size_t dev_index) {
    return (static_cast<std::uint64_t>(base_index) << dev_index_bits_) + dev_index;
  };
  const std::uint64_t below = key(cls.first, cls.present ? r.lo : 0);  // first pair not < query
  const std::uint64_t above = key(cls.first, cls.present ? r.hi : 0);  // first pair > query
  const bool has_equal = cls.present && r.lo < r.hi;

  PositionList out;
  if (p == Predicate::Equals && !has_equal) return out;

  const std::size_t count = size();
  PositionSink sink(count);
  dispatch(p, [&]<Predicate P>() {
    for (std::size_t i = 0; i < count; ++i) {
      probe(ListKind::Recon);
      const std::uint64_t pair = recon_[i];
      bool match = false;
      if constexpr (P == Predicate::Less) match = pair < below;
      if constexpr (P == Predicate::LessEquals) match = pair < above;
      if constexpr (P == Predicate::Greater) match = pair >= above;
      if constexpr (P == Predicate::GreaterEquals) match = pair >= below;
      if constexpr (P == Predicate::Equals) match = pair == below;
      if constexpr (P == Predicate::NotEquals) match = !has_equal || pair != below;
      sink.add_if(match, static_cast<std::uint32_t>(i));
    }
  });
  return std::move(sink).finish();
}

PositionList GdSegment2::scan(Predicate p, std::uint32_t query) const {
  NullProbe probe;
  return scan_impl(p, query, probe);
}

PositionList GdSegment2::scan(Predicate p, std::uint32_t query, LookupProbe& probe) const {
  return scan_impl(p, query, probe);
}

std::string GdSegment2::dump() const {
  std::ostringstream os;
  os << "gd2 n=" << n_.bits() << " length=" << size() << " bases=" << bases_.size()
     << " unique_devs=" << unique_devs_.size() << " base_index_bits=" << base_index_bits()
     << " dev_index_bits=" << dev_index_bits_ << " bytes=" << size_bytes() << '\n';
  dump_list(os, "bases", bases_);
  dump_list(os, "unique_devs", unique_devs_);
  dump_list(os, "recon", recon_);
  return os.str();
}

// ---------------------------------------------------------------------------
// GD Segment 3

GdSegment3 GdSegment3::encode(std::span<const std::uint32_t> values, DeviationSize n) {
  SplitValues s = split_all(values, n);
  std::vector<std::vector<std::uint32_t>> groups(s.bases.size());
  for (std::size_t i = 0; i < values.size(); ++i) groups[s.base_index[i]].push_back(s.deviations[i]);

  std::size_t longest = 0;
  for (auto& g : groups) {
    std::sort(g.begin(), g.end());
    g.erase(std::unique(g.begin(), g.end()), g.end());
    assert(!g.empty() && "every base originates from at least one value");
    longest = std::max(longest, g.size());
  }

  std::vector<std::uint32_t> local(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const auto& g = groups[s.base_index[i]];
    local[i] = static_cast<std::uint32_t>(std::lower_bound(g.begin(), g.end(), s.deviations[i]) - g.begin());
  }

  GdSegment3 seg(n);
  seg.bases_ = PackedVector::pack(s.bases, n.base_bits());
  seg.local_devs_.reserve(groups.size());
  for (const auto& g : groups) seg.local_devs_.push_back(PackedVector::pack(g, n.bits()));
  seg.base_indexes_ = PackedVector::pack(s.base_index, min_width(last_index(s.bases.size())));
  seg.local_dev_indexes_ = PackedVector::pack(local, min_width(last_index(longest)));
  return seg;
}

std::size_t GdSegment3::size_bytes() const noexcept {
  return bases_.accounted_bytes() + accounted(local_devs_) + base_indexes_.accounted_bytes() +
         local_dev_indexes_.accounted_bytes();
}

std::vector<std::uint32_t> GdSegment3::decompress() const {
  instrument::count_decompression();
  std::vector<std::uint32_t> out(size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const std::uint32_t b = base_indexes_[i];
    out[i] = merge(bases_[b], local_devs_[b][local_dev_indexes_[i]], n_);
  }
  return out;
}

template <class Probe>
PositionList GdSegment3::scan_impl(Predicate p, std::uint32_t query, Probe& probe) const {
  const BaseDeviation q = split(query, n_);
  const BaseRangeClassifier cls = locate(bases_, p, q.base);
  PositionList out;
  if (p == Predicate::Equals && !cls.present) return out;
  DevRange r{0, 0};
  if (cls.present) r = dev_range(local_devs_[cls.first], q.deviation, probe);
  if (p == Predicate::Equals && r.lo == r.hi) return out;

  const std::size_t count = size();
  PositionSink sink(count);
  dispatch(p, [&]<Predicate P>() {
    const BaseRangeClassifier c{P, cls.first, cls.present};
    for (std::size_t i = 0; i < count; ++i) {
      probe(ListKind::BaseIndexes);
      const std::uint32_t b = base_indexes_[i];
      bool match;
      if constexpr (std::is_same_v<Probe, NullProbe>) {
        const bool dev_match = index_matches(P, local_dev_indexes_[i], r);
        match = c.is_query_base(b) ? dev_match : c.fully_in(b);
      } else if (c.is_query_base(b)) {
        probe(ListKind::DeviationIndexes);
        match = index_matches(P, local_dev_indexes_[i], r);
      } else {
        match = c.fully_in(b);
      }
      sink.add_if(match, static_cast<std::uint32_t>(i));
    }
  });
  return std::move(sink).finish();
}

PositionList GdSegment3::scan(Predicate p, std::uint32_t query) const {
  NullProbe probe;
  return scan_impl(p, query, probe);
}

PositionList GdSegment3::scan(Predicate p, std::uint32_t query, LookupProbe& probe) const {
  return scan_impl(p, query, probe);
}

std::string GdSegment3::dump() const {
  std::ostringstream os;
  os << "gd3 n=" << n_.bits() << " length=" << size() << " bases=" << bases_.size() << " bytes=" << size_bytes()
     << '\n';
  dump_list(os, "bases", bases_);
  dump_groups(os, "local_unique_devs", local_devs_);
  dump_list(os, "base_indexes", base_indexes_);
  dump_list(os, "local_dev_indexes", local_dev_indexes_);
  return os.str();
}

// ---------------------------------------------------------------------------
// GD Segment 4

GdSegment4 GdSegment4::encode(std::span<const std::uint32_t> values, DeviationSize n) {
  SplitValues s = split_all(values, n);
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> groups(s.bases.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    groups[s.base_index[i]].emplace_back(s.deviations[i], static_cast<std::uint32_t>(i));
  }

  GdSegment4 seg(n);
  seg.size_ = values.size();
  seg.bases_ = PackedVector::pack(s.bases, n.base_bits());
  const unsigned offset_bits = min_width(last_index(values.size()));
  seg.devs_.reserve(groups.size());
  seg.chunk_offsets_.reserve(groups.size());
  std::vector<std::uint32_t> devs;
  std::vector<std::uint32_t> offsets;
  for (auto& g : groups) {
    std::sort(g.begin(), g.end());
    devs.clear();
    offsets.clear();
    for (const auto& [d, off] : g) {
      devs.push_back(d);
      offsets.push_back(off);
    }
    seg.devs_.push_back(PackedVector::pack(devs, n.bits()));
    seg.chunk_offsets_.push_back(PackedVector::pack(offsets, offset_bits));
  }
  return seg;
}

std::size_t GdSegment4::size_bytes() const noexcept {
  return bases_.accounted_bytes() + accounted(devs_) + accounted(chunk_offsets_);
}

std::vector<std::uint32_t> GdSegment4::decompress() const {
  instrument::count_decompression();
  std::vector<std::uint32_t> out(size_);
  for (std::size_t b = 0; b < devs_.size(); ++b) {
    const std::uint32_t base = bases_[b];
    const PackedVector& devs = devs_[b];
    const PackedVector& offsets = chunk_offsets_[b];
    for (std::size_t j = 0; j < devs.size(); ++j) out[offsets[j]] = merge(base, devs[j], n_);
  }
  return out;
}

// Matches are collected in a bitmap so the result comes out in offset order.
template <class Probe>
PositionList GdSegment4::scan_impl(Predicate p, std::uint32_t query, Probe& probe) const {
  const BaseDeviation q = split(query, n_);
  const BaseRangeClassifier cls = locate(bases_, p, q.base);
  PositionList out;
  if (p == Predicate::Equals && !cls.present) return out;

  std::vector<std::uint64_t> bitmap((size_ + 63) / 64, 0);
  std::size_t matches = 0;
  const auto mark = [&](const PackedVector& offsets, std::size_t from, std::size_t to) {
    for (std::size_t j = from; j < to; ++j) {
      probe(ListKind::ChunkOffsets);
      const std::uint32_t off = offsets[j];
      bitmap[off / 64] |= std::uint64_t{1} << (off % 64);
    }
    matches += to - from;
  };

  for (std::size_t b = 0; b < bases_.size(); ++b) {
    const PackedVector& offsets = chunk_offsets_[b];
    if (cls.is_query_base(b)) {
      const DevRange r = dev_range(devs_[b], q.deviation, probe);
      switch (p) {
        case Predicate::Equals: mark(offsets, r.lo, r.hi); break;
        case Predicate::NotEquals:
          mark(offsets, 0, r.lo);
          mark(offsets, r.hi, offsets.size());
          break;
        case Predicate::Greater: mark(offsets, r.hi, offsets.size()); break;
        case Predicate::GreaterEquals: mark(offsets, r.lo, offsets.size()); break;
        case Predicate::Less: mark(offsets, 0, r.lo); break;
        case Predicate::LessEquals: mark(offsets, 0, r.hi); break;
      }
    } else if (cls.fully_in(b)) {
      mark(offsets, 0, offsets.size());
    }
  }

  out.reserve(matches);
  for (std::size_t w = 0; w < bitmap.size(); ++w) {
    std::uint64_t bits = bitmap[w];
    while (bits != 0) {
      const int bit = __builtin_ctzll(bits);
      out.push_back(static_cast<std::uint32_t>(w * 64 + static_cast<std::size_t>(bit)));
      bits &= bits - 1;
    }
  }
  return out;
}

PositionList GdSegment4::scan(Predicate p, std::uint32_t query) const {
  NullProbe probe;
  return scan_impl(p, query, probe);
}

PositionList GdSegment4::scan(Predicate p, std::uint32_t query, LookupProbe& probe) const {
  return scan_impl(p, query, probe);
}

std::string GdSegment4::dump() const {
  std::ostringstream os;
  os << "gd4 n=" << n_.bits() << " length=" << size_ << " bases=" << bases_.size() << " bytes=" << size_bytes()
     << '\n';
  dump_list(os, "bases", bases_);
  dump_groups(os, "devs", devs_);
  dump_groups(os, "chunk_offsets", chunk_offsets_);
  return os.str();
}

}  // namespace gdcomp
