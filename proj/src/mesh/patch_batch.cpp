#include "fvk/mesh/patch_batch.hpp"

#include <stdexcept>
#include <string>

namespace fvk {

PatchBatch::PatchBatch(const PatchSpec& spec, int numberOfCells) : spec_(spec), numberOfCells_(numberOfCells) {
  spec_.validate();
  if (numberOfCells < 0) throw std::invalid_argument("number of patches must be non-negative");
  const auto n = static_cast<std::size_t>(numberOfCells);
  qIn_.assign(n * spec_.qInSize(), 0.0);
  qOut_.assign(n * spec_.qOutSize(), 0.0);
  cellCentre_.assign(n, Coord{});
  cellSize_.assign(n, Coord{});
  t_.assign(n, 0.0);
  dt_.assign(n, 0.0);
  maxEigenvalue_.assign(n, 0.0);
}

std::span<double> PatchBatch::qIn(int patch) {
  return std::span<double>(qIn_).subspan(static_cast<std::size_t>(patch) * spec_.qInSize(), spec_.qInSize());
}

std::span<const double> PatchBatch::qIn(int patch) const {
  return std::span<const double>(qIn_).subspan(static_cast<std::size_t>(patch) * spec_.qInSize(), spec_.qInSize());
}

std::span<double> PatchBatch::qOut(int patch) {
  return std::span<double>(qOut_).subspan(static_cast<std::size_t>(patch) * spec_.qOutSize(), spec_.qOutSize());
}

std::span<const double> PatchBatch::qOut(int patch) const {
  return std::span<const double>(qOut_).subspan(static_cast<std::size_t>(patch) * spec_.qOutSize(),
                                                spec_.qOutSize());
}

Coord PatchBatch::haloedVolumeCentre(int patch, const VolumeIndex& h) const {
  const double dx = volumeSize(patch);
  const Coord& centre = cellCentre(patch);
  const Coord& size = cellSize(patch);
  Coord x{};
  for (int a = 0; a < spec_.dimensions; ++a) {
    x[a] = centre[a] - 0.5 * size[a] + (h[a] - PatchSpec::halo + 0.5) * dx;
  }
  return x;
}

void PatchBatch::validate() const {
  for (int i = 0; i < numberOfCells_; ++i) {
    const Coord& size = cellSize(i);
    for (int a = 0; a < spec_.dimensions; ++a) {
      if (!(size[a] > 0.0) || size[a] != size[0]) {
        throw std::invalid_argument("patch " + std::to_string(i) + ": cell size must be positive and cubic");
      }
    }
    if (!(dt(i) >= 0.0)) throw std::invalid_argument("patch " + std::to_string(i) + ": dt must be >= 0");
  }
}

PatchBatch make_patch_batch(const PatchSpec& spec, int numberOfCells, const Coord& origin, double patchExtent,
                            std::optional<GridShape> gridShape) {
  spec.validate();
  if (numberOfCells < 1) throw std::invalid_argument("a batch needs at least one patch");
  if (!(patchExtent > 0.0)) throw std::invalid_argument("patch extent must be positive");
  const GridShape shape = gridShape.value_or(GridShape{numberOfCells, 1, 1});
  if (grid_cells(shape) != numberOfCells) {
    throw std::invalid_argument("grid shape does not match the number of patches");
  }

  PatchBatch batch(spec, numberOfCells);
  for (int i = 0; i < numberOfCells; ++i) {
    const auto g = grid_position(i, shape);
    Coord& centre = batch.cellCentre(i);
    Coord& size = batch.cellSize(i);
    for (int a = 0; a < spec.dimensions; ++a) {
      centre[a] = origin[a] + (g[a] + 0.5) * patchExtent;
      size[a] = patchExtent;
    }
  }
  return batch;
}

std::array<int, 3> grid_position(int id, const GridShape& shape) {
  return {id % shape[0], (id / shape[0]) % shape[1], id / (shape[0] * shape[1])};
}

int grid_id(const std::array<int, 3>& position, const GridShape& shape) {
  return position[0] + shape[0] * (position[1] + shape[1] * position[2]);
}

int grid_cells(const GridShape& shape) {
  for (int n : shape) {
    if (n < 1) throw std::invalid_argument("grid shape entries must be >= 1");
  }
  return shape[0] * shape[1] * shape[2];
}

}  // namespace fvk
