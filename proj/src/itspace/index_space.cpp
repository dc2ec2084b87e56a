#include "fvk/itspace/index_space.hpp"

#include <stdexcept>
#include <string>

namespace fvk::itspace {

IndexSpace::IndexSpace(std::span<const Range> ranges) {
  if (ranges.size() > static_cast<std::size_t>(kMaxRank)) {
    throw std::invalid_argument("index space rank exceeds " + std::to_string(kMaxRank));
  }
  rank_ = static_cast<int>(ranges.size());
  size_ = rank_ == 0 ? 0 : 1;
  for (int i = 0; i < rank_; ++i) {
    const Range& r = ranges[static_cast<std::size_t>(i)];
    if (r.lo > r.hi) {
      throw std::invalid_argument("range " + std::to_string(i) + " has lo > hi");
    }
    ranges_[static_cast<std::size_t>(i)] = r;
    order_[static_cast<std::size_t>(i)] = rank_ - 1 - i;
    size_ *= r.hi - r.lo;
  }
}

IndexSpace IndexSpace::with_order(std::span<const int> fastestFirst) const {
  if (static_cast<int>(fastestFirst.size()) != rank_) {
    throw std::invalid_argument("visit order must name every range exactly once");
  }
  std::array<bool, kMaxRank> seen{};
  IndexSpace copy = *this;
  for (int i = 0; i < rank_; ++i) {
    const int axis = fastestFirst[static_cast<std::size_t>(i)];
    if (axis < 0 || axis >= rank_ || seen[static_cast<std::size_t>(axis)]) {
      throw std::invalid_argument("visit order is not a permutation");
    }
    seen[static_cast<std::size_t>(axis)] = true;
    copy.order_[static_cast<std::size_t>(i)] = axis;
  }
  return copy;
}

}  // namespace fvk::itspace
