#include "fvk/mesh/halo.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace fvk {

namespace {

// Copies interior layer `sourceLayer` of `source` QOut along `axis` into the
// halo layer `haloLayer` of `target` QIn.
void copy_face(const PatchSpec& spec, std::span<const double> source, std::span<double> target, int axis,
               int sourceLayer, int haloLayer) {
  const int p = spec.volumesPerAxis;
  const auto s = static_cast<std::size_t>(spec.unknowns);

  // The two tangential axes; inactive ones collapse to a single layer.
  const int t0 = (axis + 1) % 3;
  const int t1 = (axis + 2) % 3;
  const int n0 = t0 < spec.dimensions ? p : 1;
  const int n1 = t1 < spec.dimensions ? p : 1;
  const int shift0 = t0 < spec.dimensions ? 1 : 0;
  const int shift1 = t1 < spec.dimensions ? 1 : 0;

  for (int j = 0; j < n1; ++j) {
    for (int i = 0; i < n0; ++i) {
      VolumeIndex src{};
      VolumeIndex dst{};
      src[axis] = sourceLayer;
      dst[axis] = haloLayer;
      src[t0] = i;
      src[t1] = j;
      dst[t0] = i + shift0;
      dst[t1] = j + shift1;
      const auto from = source.subspan(qout_offset(spec, src, 0), s);
      std::copy(from.begin(), from.end(), target.begin() + static_cast<std::ptrdiff_t>(qin_offset(spec, dst, 0)));
    }
  }
}

}  // namespace

void halo_project(PatchBatch& batch, const GridShape& gridShape, bool periodic) {
  const PatchSpec& spec = batch.spec();
  if (grid_cells(gridShape) != batch.numberOfCells()) {
    throw std::invalid_argument("halo_project: grid shape does not match the number of patches");
  }
  for (int a = spec.dimensions; a < 3; ++a) {
    if (gridShape[a] != 1) throw std::invalid_argument("halo_project: grid extends along an inactive axis");
  }

  const int p = spec.volumesPerAxis;
  const int s = spec.unknowns;
  const int pz = spec.dimensions == 3 ? p : 1;
  const int hz = spec.dimensions == 3 ? 1 : 0;

  for (int patch = 0; patch < batch.numberOfCells(); ++patch) {
    auto out = batch.qOut(patch);
    auto in = batch.qIn(patch);
    for (int z = 0; z < pz; ++z) {
      for (int y = 0; y < p; ++y) {
        for (int x = 0; x < p; ++x) {
          const auto from = out.subspan(qout_offset(spec, {x, y, z}, 0), static_cast<std::size_t>(s));
          std::copy(from.begin(), from.end(),
                    in.begin() + static_cast<std::ptrdiff_t>(qin_offset(spec, {x + 1, y + 1, z + hz}, 0)));
        }
      }
    }
  }

  for (int patch = 0; patch < batch.numberOfCells(); ++patch) {
    const auto position = grid_position(patch, gridShape);
    for (int axis = 0; axis < spec.dimensions; ++axis) {
      for (const bool upper : {false, true}) {
        auto neighbour = position;
        neighbour[axis] += upper ? 1 : -1;
        int sourcePatch = patch;
        int sourceLayer = upper ? 0 : p - 1;
        if (neighbour[axis] < 0 || neighbour[axis] >= gridShape[axis]) {
          if (periodic) {
            neighbour[axis] = (neighbour[axis] + gridShape[axis]) % gridShape[axis];
            sourcePatch = grid_id(neighbour, gridShape);
          } else {
            // Zero-gradient: mirror the patch's own boundary layer outwards.
            sourceLayer = upper ? p - 1 : 0;
          }
        } else {
          sourcePatch = grid_id(neighbour, gridShape);
        }
        copy_face(spec, std::as_const(batch).qOut(sourcePatch), batch.qIn(patch), axis, sourceLayer,
                  upper ? p + 1 : 0);
      }
    }
  }
}

}  // namespace fvk
