#pragma once

#include <cstddef>
#include <string_view>

#include "fvk/mesh/patch_spec.hpp"

namespace fvk {

enum class Layout { AoS, SoA, AoSoA };

std::string_view to_string(Layout layout);
/// Accepts "aos", "soa", "aosoa" (case-sensitive). Throws std::invalid_argument.
Layout parse_layout(std::string_view text);

inline constexpr int kDefaultAosoaBlock = 8;

/// Maps (patch, volume, unknown) onto a flat offset in [0, patches*volumes*unknowns).
///
/// Volumes are linearised x fastest within a box of `volumesPerAxis` per axis.
///  - AoS:   unknown fastest, then volume, then patch.
///  - SoA:   volume fastest, then patch, then unknown.
///  - AoSoA: per patch, volumes are cut into blocks of `aosoaBlock`; inside a
///           block the volume varies fastest, then the unknown. The trailing
///           block of a patch may be shorter, so the map stays dense.
class LayoutEnumerator {
 public:
  LayoutEnumerator() = default;
  LayoutEnumerator(Layout kind, int dimensions, int volumesPerAxis, int unknowns, int patches,
                   int aosoaBlock = kDefaultAosoaBlock);
  /// Enumerator over the interior volumes of `spec`.
  LayoutEnumerator(Layout kind, const PatchSpec& spec, int patches, int aosoaBlock = kDefaultAosoaBlock);

  Layout kind() const { return kind_; }
  int dimensions() const { return dimensions_; }
  int volumesPerAxis() const { return volumesPerAxis_; }
  int unknowns() const { return unknowns_; }
  int patches() const { return patches_; }
  int aosoaBlock() const { return block_; }
  std::size_t volumes() const { return volumes_; }
  std::size_t size() const { return volumes_ * static_cast<std::size_t>(unknowns_) * static_cast<std::size_t>(patches_); }

  /// Bounds-checked offset; throws std::out_of_range.
  std::size_t index(int patch, const VolumeIndex& volume, int unknown) const;

  /// Unchecked offset for inner loops.
  std::size_t operator()(int patch, const VolumeIndex& volume, int unknown) const noexcept {
    switch (kind_) {
      case Layout::AoS:
        return offset<Layout::AoS>(patch, volume, unknown);
      case Layout::SoA:
        return offset<Layout::SoA>(patch, volume, unknown);
      case Layout::AoSoA:
        break;
    }
    return offset<Layout::AoSoA>(patch, volume, unknown);
  }

  /// Offset with the layout fixed at compile time.
  template <Layout K>
  std::size_t offset(int patch, const VolumeIndex& volume, int unknown) const noexcept {
    const std::size_t v = linearize(volume, volumesPerAxis_);
    const auto s = static_cast<std::size_t>(unknowns_);
    const auto pi = static_cast<std::size_t>(patch);
    const auto u = static_cast<std::size_t>(unknown);
    if constexpr (K == Layout::AoS) {
      return (pi * volumes_ + v) * s + u;
    } else if constexpr (K == Layout::SoA) {
      return (u * static_cast<std::size_t>(patches_) + pi) * volumes_ + v;
    } else {
      const auto b = static_cast<std::size_t>(block_);
      const std::size_t blockStart = v / b * b;
      const std::size_t width = volumes_ - blockStart < b ? volumes_ - blockStart : b;
      return pi * volumes_ * s + blockStart * s + u * width + (v - blockStart);
    }
  }

 private:
  Layout kind_ = Layout::AoS;
  int dimensions_ = 2;
  int volumesPerAxis_ = 1;
  int unknowns_ = 1;
  int patches_ = 0;
  int block_ = kDefaultAosoaBlock;
  std::size_t volumes_ = 1;
};

}  // namespace fvk
