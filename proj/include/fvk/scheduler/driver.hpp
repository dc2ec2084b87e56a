#pragma once

#include <algorithm>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "fvk/kernel/update.hpp"
#include "fvk/mesh/halo.hpp"
#include "fvk/mesh/patch_batch.hpp"
#include "fvk/pde/pde.hpp"
#include "fvk/scheduler/enclave.hpp"

namespace fvk::scheduler {

struct DriverConfig {
  GridShape gridShape{1, 1, 1};
  int volumesPerAxis = 1;
  bool periodic = true;
  double cflFactor = 0.4;
  int steps = 0;
  /// Enclave buffer threshold N.
  int threshold = 1;
  Coord origin{};
  /// Edge length of one patch; the domain spans gridShape[a] * patchExtent.
  double patchExtent = 1.0;
  /// If set, the run stops once t reaches endTime (the last dt is clipped);
  /// `steps` then only caps the number of steps.
  std::optional<double> endTime;
  /// Patches forced to Urgent, indexed by patch id. Empty means none.
  std::vector<bool> amrFlags;

  /// Throws std::invalid_argument on cflFactor outside (0,1], steps < 0,
  /// threshold < 1, non-positive extent, or a grid along an inactive axis.
  void validate(int dimensions) const;
};

struct StepRecord {
  int step = 0;
  double t = 0.0;
  double dt = 0.0;
  double globalMaxEigenvalue = 0.0;
  /// Integral of every unknown over the domain (mass, momentum..., energy).
  std::vector<double> totals;
};

struct SimulationResult {
  GridShape gridShape{};
  /// QOut holds the final interior solution; QIn is halo-consistent with it.
  PatchBatch field;
  /// Row 0 is the initial condition; row k follows step k.
  std::vector<StepRecord> records;
  /// One trace per executed step.
  std::vector<DispatchTrace> traces;
};

class SimulationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Integral of each unknown over the interior of all patches.
std::vector<double> conserved_totals(const PatchBatch& batch);

namespace detail {

/// Copies QIn, geometry and timestep of `tasks` into a fresh batch.
PatchBatch stage(const PatchBatch& global, std::span<const PatchTask> tasks);
/// Copies QOut and maxEigenvalue of `staged` back to the patches of `tasks`.
void unstage(const PatchBatch& staged, std::span<const PatchTask> tasks, PatchBatch& global);

}  // namespace detail

/// Max |lambda| over all interior volumes and directions of QOut.
template <Pde P>
double eigenvalue_prepass(const PatchBatch& batch, const P& pde) {
  const PatchSpec& spec = batch.spec();
  const int p = spec.volumesPerAxis;
  const int pz = spec.dimensions == 3 ? p : 1;
  double best = 0.0;
  for (int patch = 0; patch < batch.numberOfCells(); ++patch) {
    const auto out = batch.qOut(patch);
    for (int z = 0; z < pz; ++z) {
      for (int y = 0; y < p; ++y) {
        for (int x = 0; x < p; ++x) {
          const VolumeIndex v{x, y, z};
          const auto q = out.subspan(qout_offset(spec, v, 0), static_cast<std::size_t>(spec.unknowns));
          const VolumeIndex h{x + 1, y + 1, spec.dimensions == 3 ? z + 1 : 0};
          const Coord centre = batch.haloedVolumeCentre(patch, h);
          for (int dir = 0; dir < spec.dimensions; ++dir) {
            const double lambda = pde.maxEigenvalue(q, centre, batch.t(patch), dir);
            best = best < lambda ? lambda : best;
          }
        }
      }
    }
  }
  return best;
}

/// Throws SimulationError naming the first inadmissible volume of QOut.
template <Pde P>
void validate_states(const PatchBatch& batch, const P& pde, int step) {
  if constexpr (HasAdmissibilityCheck<P>) {
    const PatchSpec& spec = batch.spec();
    const auto s = static_cast<std::size_t>(spec.unknowns);
    for (int patch = 0; patch < batch.numberOfCells(); ++patch) {
      const auto out = batch.qOut(patch);
      for (std::size_t v = 0; v < spec.interiorVolumes(); ++v) {
        if (!pde.admissible(out.subspan(v * s, s))) {
          throw SimulationError("step " + std::to_string(step) + ": non-physical state in patch " +
                                std::to_string(patch) + ", volume " + std::to_string(v));
        }
      }
    }
  }
}

/// Runs the enclave-tasking timestep loop.
///
/// Per step: dt = cflFactor * dx / (largest eigenvalue seen so far, from an
/// initial pre-pass or the previous step's kernels), every patch is
/// dispatched once through traverse_and_dispatch, then halos are rebuilt.
/// Batches go through `variant` with a parallel strategy; inline and
/// trailing patches use the same kernel sequentially.
///
/// `initialCondition(const Coord& x, std::span<double> q)` fills the state at
/// volume centre x.
template <Pde P, class InitialCondition>
SimulationResult run_simulation(const DriverConfig& config, const P& pde, const kernel::KernelVariant& variant,
                                InitialCondition&& initialCondition) {
  config.validate(P::dimensions);
  const PatchSpec spec{P::dimensions, config.volumesPerAxis, P::unknowns};
  const int cells = grid_cells(config.gridShape);

  SimulationResult result;
  result.gridShape = config.gridShape;
  result.field = make_patch_batch(spec, cells, config.origin, config.patchExtent, config.gridShape);
  PatchBatch& field = result.field;

  const int p = spec.volumesPerAxis;
  const int pz = spec.dimensions == 3 ? p : 1;
  for (int patch = 0; patch < cells; ++patch) {
    auto out = field.qOut(patch);
    for (int z = 0; z < pz; ++z) {
      for (int y = 0; y < p; ++y) {
        for (int x = 0; x < p; ++x) {
          const VolumeIndex h{x + 1, y + 1, spec.dimensions == 3 ? z + 1 : 0};
          initialCondition(field.haloedVolumeCentre(patch, h),
                           out.subspan(qout_offset(spec, {x, y, z}, 0), static_cast<std::size_t>(spec.unknowns)));
        }
      }
    }
  }
  validate_states(field, pde, 0);
  halo_project(field, config.gridShape, config.periodic);

  double lambda = eigenvalue_prepass(field, pde);
  double t = 0.0;
  result.records.push_back({0, t, 0.0, lambda, conserved_totals(field)});

  const std::vector<PatchTask> tasks =
      classify(config.gridShape, spec.dimensions, config.periodic, config.amrFlags);

  kernel::KernelVariant batchVariant = variant;
  batchVariant.strategy = itspace::ExecutionStrategy::parallel(variant.strategy.workerHint);
  kernel::KernelVariant inlineVariant = variant;
  inlineVariant.strategy = itspace::ExecutionStrategy::sequential();

  const auto runStaged = [&](std::span<const PatchTask> group, const kernel::KernelVariant& how) {
    PatchBatch staged = detail::stage(field, group);
    kernel::update_patch_batch(staged, pde, how);
    detail::unstage(staged, group, field);
  };

  const double dx = config.patchExtent / p;
  for (int step = 1; step <= config.steps; ++step) {
    if (config.endTime && t >= *config.endTime) break;
    if (!(lambda > 0.0)) {
      throw SimulationError("step " + std::to_string(step) + ": maximum eigenvalue " + std::to_string(lambda) +
                            " leaves the time step undefined");
    }
    double dt = config.cflFactor * dx / lambda;
    if (config.endTime) dt = std::min(dt, *config.endTime - t);
    for (int patch = 0; patch < cells; ++patch) {
      field.t(patch) = t;
      field.dt(patch) = dt;
    }

    EnclaveBuffer buffer(config.threshold);
    try {
      result.traces.push_back(traverse_and_dispatch(
          tasks, buffer, [&](const PatchTask& task) { runStaged(std::span(&task, 1), inlineVariant); },
          [&](std::span<const PatchTask> group) { runStaged(group, batchVariant); }));
    } catch (const std::exception& e) {
      std::throw_with_nested(SimulationError("step " + std::to_string(step) + ": " + e.what()));
    }

    lambda = 0.0;
    for (int patch = 0; patch < cells; ++patch) {
      lambda = lambda < field.maxEigenvalue(patch) ? field.maxEigenvalue(patch) : lambda;
    }
    t += dt;
    halo_project(field, config.gridShape, config.periodic);
    validate_states(field, pde, step);
    result.records.push_back({step, t, dt, lambda, conserved_totals(field)});
  }
  return result;
}

}  // namespace fvk::scheduler
