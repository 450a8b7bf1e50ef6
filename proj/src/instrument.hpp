#pragma once

#include <cstddef>
#include <cstdint>

namespace gdcomp {

// Payload lists a segment may read.
enum class ListKind { Data, Bases, Deviations, BaseIndexes, Recon, DeviationIndexes, ChunkOffsets, Dictionary, AttributeVector };

struct NullProbe {
  constexpr void operator()(ListKind) const noexcept {}
};

// Counts payload-list reads; width/length metadata reads are not counted.
struct LookupProbe {
  std::size_t reads = 0;
  std::size_t deviation_reads = 0;

  void operator()(ListKind kind) noexcept {
    ++reads;
    if (kind == ListKind::Deviations) ++deviation_reads;
  }
};

namespace instrument {

// Full-segment decompressions performed on the calling thread.
std::uint64_t decompressions() noexcept;
void count_decompression() noexcept;

}  // namespace instrument
}  // namespace gdcomp
