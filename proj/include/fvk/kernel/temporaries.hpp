#pragma once

#include <vector>

#include "fvk/mesh/layout.hpp"
#include "fvk/mesh/patch_batch.hpp"

namespace fvk::kernel {

/// Intermediate values of one kernel invocation.
///
/// eigenvalues: per (patch, haloed volume, direction) max |lambda|.
/// fluxValues:  per (patch, haloed volume, direction * s + unknown) f(Q).
/// updates:     per (patch, interior volume, unknown) accumulated increment
///              that step 9 adds onto QOut.
///
/// Haloed arrays span interior plus the one-volume shell; only volumes that
/// touch a face of the interior are ever written or read. All three share
/// the variant's layout kind.
struct KernelTemporaries {
  LayoutEnumerator eigenEnumerator;
  LayoutEnumerator fluxEnumerator;
  LayoutEnumerator updateEnumerator;
  std::vector<double> eigenvalues;
  std::vector<double> fluxValues;
  std::vector<double> updates;

  KernelTemporaries(const PatchSpec& spec, int patches, Layout layout)
      : eigenEnumerator(layout, spec.dimensions, spec.haloedPerAxis(), spec.dimensions, patches),
        fluxEnumerator(layout, spec.dimensions, spec.haloedPerAxis(), spec.dimensions * spec.unknowns, patches),
        updateEnumerator(layout, spec, patches),
        eigenvalues(eigenEnumerator.size(), 0.0),
        fluxValues(fluxEnumerator.size(), 0.0),
        updates(updateEnumerator.size(), 0.0) {}
};

/// Raw pointers into a PatchBatch, captured by value into loop bodies.
struct BatchView {
  int dimensions;
  int p;
  int s;
  int haloedPerAxis;
  std::size_t qInPerPatch;
  std::size_t qOutPerPatch;
  const double* qIn;
  double* qOut;
  const Coord* cellCentre;
  const Coord* cellSize;
  const double* t;
  const double* dt;
  double* maxEigenvalue;

  explicit BatchView(PatchBatch& batch)
      : dimensions(batch.spec().dimensions),
        p(batch.spec().volumesPerAxis),
        s(batch.spec().unknowns),
        haloedPerAxis(batch.spec().haloedPerAxis()),
        qInPerPatch(batch.spec().qInSize()),
        qOutPerPatch(batch.spec().qOutSize()),
        qIn(batch.qInData().data()),
        qOut(batch.qOutData().data()),
        cellCentre(&batch.cellCentre(0)),
        cellSize(&batch.cellSize(0)),
        t(&batch.t(0)),
        dt(&batch.dt(0)),
        maxEigenvalue(&batch.maxEigenvalue(0)) {}

  /// Haloed coordinate of interior volume `v`.
  VolumeIndex haloed(const VolumeIndex& v) const {
    return {v[0] + 1, v[1] + 1, dimensions == 3 ? v[2] + 1 : 0};
  }

  const double* qInVolume(int patch, const VolumeIndex& h) const {
    return qIn + static_cast<std::size_t>(patch) * qInPerPatch +
           linearize(h, haloedPerAxis) * static_cast<std::size_t>(s);
  }

  double* qOutVolume(int patch, const VolumeIndex& v) const {
    return qOut + static_cast<std::size_t>(patch) * qOutPerPatch + linearize(v, p) * static_cast<std::size_t>(s);
  }

  double volumeSize(int patch) const { return cellSize[patch][0] / p; }

  Coord volumeCentre(int patch, const VolumeIndex& h) const {
    const double dx = volumeSize(patch);
    Coord x{};
    for (int a = 0; a < dimensions; ++a) {
      x[a] = cellCentre[patch][a] - 0.5 * cellSize[patch][a] + (h[a] - 0.5) * dx;
    }
    return x;
  }

  /// True if haloed volume `h` is read along `direction`: interior volumes
  /// for every direction, face halo volumes only across their face.
  bool readAlong(const VolumeIndex& h, int direction) const {
    for (int a = 0; a < dimensions; ++a) {
      const bool inHalo = h[a] == 0 || h[a] == haloedPerAxis - 1;
      if (inHalo && a != direction) return false;
    }
    return true;
  }
};

}  // namespace fvk::kernel
