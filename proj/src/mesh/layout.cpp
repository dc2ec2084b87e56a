#include "fvk/mesh/layout.hpp"

#include <stdexcept>
#include <string>

namespace fvk {

std::string_view to_string(Layout layout) {
  switch (layout) {
    case Layout::AoS:
      return "aos";
    case Layout::SoA:
      return "soa";
    case Layout::AoSoA:
      return "aosoa";
  }
  return "unknown";
}

Layout parse_layout(std::string_view text) {
  if (text == "aos") return Layout::AoS;
  if (text == "soa") return Layout::SoA;
  if (text == "aosoa") return Layout::AoSoA;
  throw std::invalid_argument("unknown layout '" + std::string(text) + "'");
}

LayoutEnumerator::LayoutEnumerator(Layout kind, int dimensions, int volumesPerAxis, int unknowns, int patches,
                                   int aosoaBlock)
    : kind_(kind),
      dimensions_(dimensions),
      volumesPerAxis_(volumesPerAxis),
      unknowns_(unknowns),
      patches_(patches),
      block_(aosoaBlock) {
  if (dimensions != 2 && dimensions != 3) throw std::invalid_argument("enumerator dimensions must be 2 or 3");
  if (volumesPerAxis < 1 || unknowns < 1 || patches < 0) {
    throw std::invalid_argument("enumerator extents must be positive");
  }
  if (aosoaBlock < 1) throw std::invalid_argument("AoSoA block length must be >= 1");
  volumes_ = 1;
  for (int a = 0; a < dimensions; ++a) volumes_ *= static_cast<std::size_t>(volumesPerAxis);
}

LayoutEnumerator::LayoutEnumerator(Layout kind, const PatchSpec& spec, int patches, int aosoaBlock)
    : LayoutEnumerator(kind, spec.dimensions, spec.volumesPerAxis, spec.unknowns, patches, aosoaBlock) {}

std::size_t LayoutEnumerator::index(int patch, const VolumeIndex& volume, int unknown) const {
  const auto fail = [&](const char* what) {
    throw std::out_of_range(std::string("layout index out of range: ") + what);
  };
  if (patch < 0 || patch >= patches_) fail("patch");
  if (unknown < 0 || unknown >= unknowns_) fail("unknown");
  for (int a = 0; a < 3; ++a) {
    const int extent = a < dimensions_ ? volumesPerAxis_ : 1;
    if (volume[a] < 0 || volume[a] >= extent) fail("volume");
  }
  return (*this)(patch, volume, unknown);
}

}  // namespace fvk
