#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "bitvec.hpp"
#include "error.hpp"
#include "instrument.hpp"
#include "lastbit.hpp"
#include "scan.hpp"

namespace gdcomp {

namespace detail {
[[noreturn]] void position_out_of_range(std::size_t i, std::size_t size);
}

/**
 * GD segment with one deviation per value.
 * - bases: sorted, deduplicated, 32-n bits each
 * - deviations: n bits each, original order
 * - base_indexes: one per value, width fits the largest base index
 */
class GdSegment1 {
 public:
  static GdSegment1 encode(std::span<const std::uint32_t> values, DeviationSize n);

  DeviationSize dev_size() const noexcept { return n_; }
  std::size_t size() const noexcept { return base_indexes_.size(); }
  std::size_t size_bytes() const noexcept;

  std::uint32_t get(std::size_t i) const {
    NullProbe probe;
    return get(i, probe);
  }
  template <class Probe>
  std::uint32_t get(std::size_t i, Probe& probe) const {
    if (i >= size()) detail::position_out_of_range(i, size());
    probe(ListKind::BaseIndexes);
    const std::uint32_t b = base_indexes_[i];
    probe(ListKind::Bases);
    probe(ListKind::Deviations);
    return merge(bases_[b], deviations_[i], n_);
  }

  std::vector<std::uint32_t> decompress() const;
  PositionList scan(Predicate p, std::uint32_t query) const;
  PositionList scan(Predicate p, std::uint32_t query, LookupProbe& probe) const;
  std::string dump() const;

  const PackedVector& bases() const noexcept { return bases_; }
  const PackedVector& deviations() const noexcept { return deviations_; }
  const PackedVector& base_indexes() const noexcept { return base_indexes_; }

 private:
  explicit GdSegment1(DeviationSize n) : n_(n) {}
  template <class Probe>
  PositionList scan_impl(Predicate p, std::uint32_t query, Probe& probe) const;

  DeviationSize n_;
  PackedVector bases_;
  PackedVector deviations_;
  PackedVector base_indexes_;
};

/**
 * GD segment with deduplicated deviations. Each value stores one packed
 * (base index, deviation index) pair with the base index in the high bits.
 */
class GdSegment2 {
 public:
  static GdSegment2 encode(std::span<const std::uint32_t> values, DeviationSize n);

  DeviationSize dev_size() const noexcept { return n_; }
  std::size_t size() const noexcept { return recon_.size(); }
  std::size_t size_bytes() const noexcept;
  unsigned base_index_bits() const noexcept { return recon_.width() - dev_index_bits_; }
  unsigned dev_index_bits() const noexcept { return dev_index_bits_; }

  std::uint32_t get(std::size_t i) const {
    NullProbe probe;
    return get(i, probe);
  }
  template <class Probe>
  std::uint32_t get(std::size_t i, Probe& probe) const {
    if (i >= size()) detail::position_out_of_range(i, size());
    probe(ListKind::Recon);
    const std::uint32_t pair = recon_[i];
    probe(ListKind::Bases);
    probe(ListKind::Deviations);
    return merge(bases_[pair >> dev_index_bits_], unique_devs_[pair & dev_index_mask()], n_);
  }

  std::vector<std::uint32_t> decompress() const;
  PositionList scan(Predicate p, std::uint32_t query) const;
  PositionList scan(Predicate p, std::uint32_t query, LookupProbe& probe) const;
  std::string dump() const;

  const PackedVector& bases() const noexcept { return bases_; }
  const PackedVector& unique_devs() const noexcept { return unique_devs_; }
  const PackedVector& recon() const noexcept { return recon_; }

 private:
  explicit GdSegment2(DeviationSize n) : n_(n) {}
  std::uint32_t dev_index_mask() const noexcept { return (std::uint32_t{1} << dev_index_bits_) - 1; }
  template <class Probe>
  PositionList scan_impl(Predicate p, std::uint32_t query, Probe& probe) const;

  DeviationSize n_;
  unsigned dev_index_bits_ = 1;
  PackedVector bases_;
  PackedVector unique_devs_;
  PackedVector recon_;
};

/**
 * GD segment with deviations grouped, deduplicated and sorted per base.
 */
class GdSegment3 {
 public:
  static GdSegment3 encode(std::span<const std::uint32_t> values, DeviationSize n);

  DeviationSize dev_size() const noexcept { return n_; }
  std::size_t size() const noexcept { return base_indexes_.size(); }
  std::size_t size_bytes() const noexcept;

  std::uint32_t get(std::size_t i) const {
    NullProbe probe;
    return get(i, probe);
  }
  template <class Probe>
  std::uint32_t get(std::size_t i, Probe& probe) const {
    if (i >= size()) detail::position_out_of_range(i, size());
    probe(ListKind::BaseIndexes);
    const std::uint32_t b = base_indexes_[i];
    probe(ListKind::DeviationIndexes);
    const std::uint32_t local = local_dev_indexes_[i];
    probe(ListKind::Deviations);
    const std::uint32_t dev = local_devs_[b][local];
    probe(ListKind::Bases);
    return merge(bases_[b], dev, n_);
  }

  std::vector<std::uint32_t> decompress() const;
  PositionList scan(Predicate p, std::uint32_t query) const;
  PositionList scan(Predicate p, std::uint32_t query, LookupProbe& probe) const;
  std::string dump() const;

  const PackedVector& bases() const noexcept { return bases_; }
  const std::vector<PackedVector>& local_unique_devs() const noexcept { return local_devs_; }
  const PackedVector& base_indexes() const noexcept { return base_indexes_; }
  const PackedVector& local_dev_indexes() const noexcept { return local_dev_indexes_; }

 private:
  explicit GdSegment3(DeviationSize n) : n_(n) {}
  template <class Probe>
  PositionList scan_impl(Predicate p, std::uint32_t query, Probe& probe) const;

  DeviationSize n_;
  PackedVector bases_;
  std::vector<PackedVector> local_devs_;
  PackedVector base_indexes_;
  PackedVector local_dev_indexes_;
};

/**
 * Scan-oriented GD segment: per base, the sorted deviations (duplicates kept)
 * and the original offset of each. Offers no random access.
 */
class GdSegment4 {
 public:
  static GdSegment4 encode(std::span<const std::uint32_t> values, DeviationSize n);

  DeviationSize dev_size() const noexcept { return n_; }
  std::size_t size() const noexcept { return size_; }
  std::size_t size_bytes() const noexcept;

  std::vector<std::uint32_t> decompress() const;
  PositionList scan(Predicate p, std::uint32_t query) const;
  PositionList scan(Predicate p, std::uint32_t query, LookupProbe& probe) const;
  std::string dump() const;

  const PackedVector& bases() const noexcept { return bases_; }
  const std::vector<PackedVector>& devs() const noexcept { return devs_; }
  const std::vector<PackedVector>& chunk_offsets() const noexcept { return chunk_offsets_; }

 private:
  explicit GdSegment4(DeviationSize n) : n_(n) {}
  template <class Probe>
  PositionList scan_impl(Predicate p, std::uint32_t query, Probe& probe) const;

  DeviationSize n_;
  std::size_t size_ = 0;
  PackedVector bases_;
  std::vector<PackedVector> devs_;
  std::vector<PackedVector> chunk_offsets_;
};

}  // namespace gdcomp
