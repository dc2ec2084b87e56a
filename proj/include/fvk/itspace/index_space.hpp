#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <span>

namespace fvk::itspace {

inline constexpr int kMaxRank = 6;

/// Half-open integer range [lo, hi).
struct Range {
  int lo = 0;
  int hi = 0;
  int extent() const { return hi - lo; }
};

/// One point of an index space; entries past rank() are zero.
using Index = std::array<int, kMaxRank>;

/// Cartesian product of up to kMaxRank ranges.
///
/// By default the last range varies fastest, like the equivalent nest of
/// for-loops. `with_order` picks another visit order; the visited set is the
/// same for every order. IndexSpace is a small immutable value.
class IndexSpace {
 public:
  IndexSpace() = default;
  explicit IndexSpace(std::span<const Range> ranges);
  IndexSpace(std::initializer_list<Range> ranges) : IndexSpace(std::span<const Range>(ranges.begin(), ranges.size())) {}

  /// Copy of this space visited with `fastestFirst[0]` varying fastest.
  /// `fastestFirst` must be a permutation of 0..rank()-1.
  IndexSpace with_order(std::span<const int> fastestFirst) const;
  IndexSpace with_order(std::initializer_list<int> fastestFirst) const {
    return with_order(std::span<const int>(fastestFirst.begin(), fastestFirst.size()));
  }

  int rank() const { return rank_; }
  const Range& range(int i) const { return ranges_[static_cast<std::size_t>(i)]; }
  std::span<const int> order() const { return std::span<const int>(order_.data(), static_cast<std::size_t>(rank_)); }

  std::int64_t size() const { return size_; }
  bool empty() const { return size_ == 0; }

  /// Index visited at position `linear` of the sequential enumeration.
  Index at(std::int64_t linear) const {
    Index idx{};
    for (int i = 0; i < rank_; ++i) {
      const Range& r = ranges_[static_cast<std::size_t>(order_[static_cast<std::size_t>(i)])];
      const std::int64_t extent = r.hi - r.lo;
      idx[static_cast<std::size_t>(order_[static_cast<std::size_t>(i)])] = r.lo + static_cast<int>(linear % extent);
      linear /= extent;
    }
    return idx;
  }

  /// Steps `idx` to the next index of the sequential enumeration (odometer).
  void advance(Index& idx) const {
    for (int i = 0; i < rank_; ++i) {
      const auto axis = static_cast<std::size_t>(order_[static_cast<std::size_t>(i)]);
      if (++idx[axis] < ranges_[axis].hi) return;
      idx[axis] = ranges_[axis].lo;
    }
  }

 private:
  std::array<Range, kMaxRank> ranges_{};
  std::array<int, kMaxRank> order_{};
  int rank_ = 0;
  std::int64_t size_ = 0;
};

/// Builds the product space; throws std::invalid_argument if any lo > hi or
/// more than kMaxRank ranges are given.
inline IndexSpace cartesian(std::initializer_list<Range> ranges) { return IndexSpace(ranges); }
inline IndexSpace cartesian(std::span<const Range> ranges) { return IndexSpace(ranges); }

}  // namespace fvk::itspace
