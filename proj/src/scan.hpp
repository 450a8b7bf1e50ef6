#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace gdcomp {

enum class Predicate { Equals, NotEquals, Greater, GreaterEquals, Less, LessEquals };

inline constexpr std::array<Predicate, 6> kAllPredicates = {Predicate::Equals,        Predicate::NotEquals,
                                                            Predicate::Greater,       Predicate::GreaterEquals,
                                                            Predicate::Less,          Predicate::LessEquals};

// Strictly increasing segment offsets.
using PositionList = std::vector<std::uint32_t>;

constexpr bool evaluate(Predicate p, std::uint32_t value, std::uint32_t query) noexcept {
  switch (p) {
    case Predicate::Equals: return value == query;
    case Predicate::NotEquals: return value != query;
    case Predicate::Greater: return value > query;
    case Predicate::GreaterEquals: return value >= query;
    case Predicate::Less: return value < query;
    case Predicate::LessEquals: return value <= query;
  }
  return false;
}

// Calls f.template operator()<P>() with the predicate as a compile-time constant.
template <class F>
decltype(auto) dispatch(Predicate p, F&& f) {
  switch (p) {
    case Predicate::Equals: return f.template operator()<Predicate::Equals>();
    case Predicate::NotEquals: return f.template operator()<Predicate::NotEquals>();
    case Predicate::Greater: return f.template operator()<Predicate::Greater>();
    case Predicate::GreaterEquals: return f.template operator()<Predicate::GreaterEquals>();
    case Predicate::Less: return f.template operator()<Predicate::Less>();
    case Predicate::LessEquals: return f.template operator()<Predicate::LessEquals>();
  }
  return f.template operator()<Predicate::Equals>();
}

std::string_view to_string(Predicate p) noexcept;
std::optional<Predicate> parse_predicate(std::string_view name) noexcept;

// Appends positions without a data-dependent branch; sized for the worst case up front.
class PositionSink {
 public:
  explicit PositionSink(std::size_t capacity) : out_(capacity) {}

  void add_if(bool match, std::uint32_t position) noexcept {
    out_[count_] = position;
    count_ += match ? 1 : 0;
  }

  PositionList finish() && {
    out_.resize(count_);
    out_.shrink_to_fit();
    return std::move(out_);
  }

 private:
  PositionList out_;
  std::size_t count_ = 0;
};

// Filter over materialized values; used by the decoding baselines.
PositionList filter_scan(std::span<const std::uint32_t> values, Predicate p, std::uint32_t query);

/**
 * @brief Per-base classification of a scan once the query base has been located.
 *
 * With order-preserving bases, every base other than the query's own is either
 * entirely inside or entirely outside the result. `first` is the index of the
 * first stored base >= query base and `present` tells whether it equals it.
 */
struct BaseRangeClassifier {
  Predicate predicate;
  std::size_t first;
  bool present;

  // True if every value of base index `b` (b != query base) matches.
  constexpr bool fully_in(std::size_t b) const noexcept {
    switch (predicate) {
      case Predicate::Equals: return false;
      case Predicate::NotEquals: return true;
      case Predicate::Less:
      case Predicate::LessEquals: return b < first;
      case Predicate::Greater:
      case Predicate::GreaterEquals: return b >= first + (present ? 1 : 0);
    }
    return false;
  }

  constexpr bool is_query_base(std::size_t b) const noexcept { return present && b == first; }
};

}  // namespace gdcomp
