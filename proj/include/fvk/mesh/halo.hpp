#pragma once

#include "fvk/mesh/patch_batch.hpp"

namespace fvk {

/// AoS offset of unknown `k` of the volume at haloed coordinate `h` in a QIn slice.
inline std::size_t qin_offset(const PatchSpec& spec, const VolumeIndex& h, int k) {
  return linearize(h, spec.haloedPerAxis()) * static_cast<std::size_t>(spec.unknowns) + static_cast<std::size_t>(k);
}

/// AoS offset of unknown `k` of interior volume `v` in a QOut slice.
inline std::size_t qout_offset(const PatchSpec& spec, const VolumeIndex& v, int k) {
  return linearize(v, spec.volumesPerAxis) * static_cast<std::size_t>(spec.unknowns) + static_cast<std::size_t>(k);
}

/// Rebuilds every patch's QIn from the QOut of the batch.
///
/// The interior of QIn is copied from the patch's own QOut. Each face halo
/// layer is copied from the adjacent interior layer of the neighbouring patch
/// in `gridShape` (x fastest). Without periodicity, faces on the domain
/// boundary copy the patch's own boundary layer (zero-gradient outflow).
/// Edge and corner halo volumes are left untouched.
///
/// Throws std::invalid_argument if the grid does not hold exactly
/// numberOfCells patches.
void halo_project(PatchBatch& batch, const GridShape& gridShape, bool periodic);

}  // namespace fvk
