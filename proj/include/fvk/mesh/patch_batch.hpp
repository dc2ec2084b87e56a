#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "fvk/mesh/patch_spec.hpp"

namespace fvk {

/// Number of patches along each axis of a logical patch grid. Unused axes are 1.
using GridShape = std::array<int, 3>;

/// Input and output data of N patches handed to one kernel invocation.
///
/// QIn holds (p+2)^d volumes per patch (interior plus halo), QOut holds the
/// p^d interior volumes. Both are AoS: the unknown index varies fastest, then
/// x, then y, then z. Each patch owns a contiguous slice of the backing store.
class PatchBatch {
 public:
  PatchBatch() = default;
  PatchBatch(const PatchSpec& spec, int numberOfCells);

  const PatchSpec& spec() const { return spec_; }
  int numberOfCells() const { return numberOfCells_; }
  bool empty() const { return numberOfCells_ == 0; }

  std::span<double> qIn(int patch);
  std::span<const double> qIn(int patch) const;
  std::span<double> qOut(int patch);
  std::span<const double> qOut(int patch) const;

  std::span<double> qInData() { return qIn_; }
  std::span<const double> qInData() const { return qIn_; }
  std::span<double> qOutData() { return qOut_; }
  std::span<const double> qOutData() const { return qOut_; }

  Coord& cellCentre(int patch) { return cellCentre_[static_cast<std::size_t>(patch)]; }
  const Coord& cellCentre(int patch) const { return cellCentre_[static_cast<std::size_t>(patch)]; }
  Coord& cellSize(int patch) { return cellSize_[static_cast<std::size_t>(patch)]; }
  const Coord& cellSize(int patch) const { return cellSize_[static_cast<std::size_t>(patch)]; }
  double& t(int patch) { return t_[static_cast<std::size_t>(patch)]; }
  double t(int patch) const { return t_[static_cast<std::size_t>(patch)]; }
  double& dt(int patch) { return dt_[static_cast<std::size_t>(patch)]; }
  double dt(int patch) const { return dt_[static_cast<std::size_t>(patch)]; }
  double& maxEigenvalue(int patch) { return maxEigenvalue_[static_cast<std::size_t>(patch)]; }
  double maxEigenvalue(int patch) const { return maxEigenvalue_[static_cast<std::size_t>(patch)]; }

  /// Edge length of one volume of `patch`.
  double volumeSize(int patch) const { return cellSize(patch)[0] / spec_.volumesPerAxis; }

  /// Centre of the volume at haloed coordinate `h` (interior starts at 1 on
  /// active axes).
  Coord haloedVolumeCentre(int patch, const VolumeIndex& h) const;

  /// Throws std::invalid_argument if any geometry or timestep field breaks the
  /// batch invariants (positive equal cellSize components, dt >= 0).
  void validate() const;

 private:
  PatchSpec spec_{};
  int numberOfCells_ = 0;
  std::vector<double> qIn_;
  std::vector<double> qOut_;
  std::vector<Coord> cellCentre_;
  std::vector<Coord> cellSize_;
  std::vector<double> t_;
  std::vector<double> dt_;
  std::vector<double> maxEigenvalue_;
};

/// Allocates a zero-initialised batch of N patches of edge `patchExtent`.
/// Patches are laid out as a grid of `gridShape` (x fastest) starting at
/// `origin`; without a shape they form a row along x.
PatchBatch make_patch_batch(const PatchSpec& spec, int numberOfCells, const Coord& origin, double patchExtent,
                            std::optional<GridShape> gridShape = std::nullopt);

/// Grid coordinate of patch `id` in a grid of `shape`.
std::array<int, 3> grid_position(int id, const GridShape& shape);
int grid_id(const std::array<int, 3>& position, const GridShape& shape);
int grid_cells(const GridShape& shape);

}  // namespace fvk
