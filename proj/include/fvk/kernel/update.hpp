#pragma once

#include <stdexcept>

#include "fvk/itspace/execution.hpp"
#include "fvk/kernel/loop_bodies.hpp"
#include "fvk/kernel/temporaries.hpp"
#include "fvk/kernel/variant.hpp"
#include "fvk/mesh/patch_batch.hpp"
#include "fvk/pde/pde.hpp"

namespace fvk::kernel {

using itspace::ExecutionStrategy;
using itspace::Index;
using itspace::IndexSpace;
using itspace::Range;

/// Step 10 for one patch: max over the interior volumes and directions of
/// the eigenvalue temporaries. Scans sequentially.
template <Layout K>
double patch_max_eigenvalue(const BatchView& view, const KernelTemporaries& temps, int patch) {
  const int p = view.p;
  const int pz = view.dimensions == 3 ? p : 1;
  const IndexSpace volumes{{0, pz}, {0, p}, {0, p}, {0, view.dimensions}};
  return itspace::reduce_max(volumes, ExecutionStrategy::sequential(), [&](const Index& i) {
    const VolumeIndex h = view.haloed({i[2], i[1], i[0]});
    return temps.eigenvalues[temps.eigenEnumerator.offset<K>(patch, h, i[3])];
  });
}

/// Runs steps 1-10 for patches [first, last), one loop over the whole
/// (patches x volumes [x unknowns]) space per step.
template <Pde P, Layout K>
void run_steps(const BatchView& view, const P& pde, KernelTemporaries& temps, int first, int last,
               const ExecutionStrategy& strategy) {
  const int p = view.p;
  const int n = view.haloedPerAxis;
  const bool is3d = view.dimensions == 3;
  const Range patches{first, last};
  const Range z{0, is3d ? p : 1};
  const Range hz{0, is3d ? n : 1};
  const Range unknowns{0, view.s};

  const IndexSpace interiorUnknowns{patches, z, {0, p}, {0, p}, unknowns};
  const IndexSpace interior{patches, z, {0, p}, {0, p}};
  const IndexSpace haloed{patches, hz, {0, n}, {0, n}};

  // 1
  itspace::for_each(interiorUnknowns, strategy, [view](const Index& i) {
    copy_solution(view, i[0], {i[3], i[2], i[1]}, i[4]);
  });
  // 2
  itspace::for_each(haloed, strategy, [view, &pde, &temps](const Index& i) {
    compute_eigenvalues<P, K>(view, pde, temps, i[0], {i[3], i[2], i[1]});
  });
  // 3-4
  itspace::for_each(interiorUnknowns, strategy, [view, &temps](const Index& i) {
    accumulate_dissipation<K>(view, temps, i[0], {i[3], i[2], i[1]}, i[4]);
  });
  // 5
  itspace::for_each(haloed, strategy, [view, &pde, &temps](const Index& i) {
    compute_fluxes<P, K>(view, pde, temps, i[0], {i[3], i[2], i[1]});
  });
  // 6-7
  itspace::for_each(interiorUnknowns, strategy, [view, &temps](const Index& i) {
    accumulate_flux<K>(view, temps, i[0], {i[3], i[2], i[1]}, i[4]);
  });
  // 8-9
  itspace::for_each(interior, strategy, [view, &pde, &temps](const Index& i) {
    ncp_and_finalize<P, K>(view, pde, temps, i[0], {i[3], i[2], i[1]});
  });
  // 10
  itspace::for_each(IndexSpace{patches}, strategy, [view, &temps](const Index& i) {
    view.maxEigenvalue[i[0]] = patch_max_eigenvalue<K>(view, temps, i[0]);
  });
}

template <Pde P, Layout K>
void update_with_layout(PatchBatch& batch, const P& pde, Ordering ordering, const ExecutionStrategy& strategy) {
  const int patches = batch.numberOfCells();
  KernelTemporaries temps(batch.spec(), patches, K);
  const BatchView view(batch);

  if (ordering == Ordering::Batched) {
    run_steps<P, K>(view, pde, temps, 0, patches, strategy);
    return;
  }
  itspace::for_each(IndexSpace{Range{0, patches}}, strategy, [&](const Index& i) {
    run_steps<P, K>(view, pde, temps, i[0], i[0] + 1, ExecutionStrategy::sequential());
  });
}

/// Advances every patch of `batch` by its own dt: QOut receives Q^{n+1}
/// and maxEigenvalue the largest directional wave speed of the patch.
///
/// QIn must be halo-consistent. All orderings, layouts and strategies give
/// bitwise identical results. Throws KernelError on a state the PDE rejects
/// and std::invalid_argument if the batch does not match the PDE.
template <Pde P>
void update_patch_batch(PatchBatch& batch, const P& pde, const KernelVariant& variant) {
  if (batch.empty()) return;
  const PatchSpec& spec = batch.spec();
  if (spec.dimensions != P::dimensions || spec.unknowns != P::unknowns) {
    throw std::invalid_argument("patch batch shape does not match the PDE");
  }
  if (spec.unknowns > kMaxUnknowns) throw std::invalid_argument("too many unknowns for the kernel");
  batch.validate();

  switch (variant.layout) {
    case Layout::AoS:
      update_with_layout<P, Layout::AoS>(batch, pde, variant.ordering, variant.strategy);
      return;
    case Layout::SoA:
      update_with_layout<P, Layout::SoA>(batch, pde, variant.ordering, variant.strategy);
      return;
    case Layout::AoSoA:
      update_with_layout<P, Layout::AoSoA>(batch, pde, variant.ordering, variant.strategy);
      return;
  }
}

}  // namespace fvk::kernel
