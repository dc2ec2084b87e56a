#pragma once

#include <cstdint>

#include "fvk/mesh/patch_batch.hpp"
#include "fvk/pde/euler.hpp"

namespace fvk::bench {

/// Fills every QIn volume (halo included) of a Euler batch with a random
/// admissible state: rho in [0.5, 2], velocity components in [-1, 1],
/// pressure in [0.5, 2]. Deterministic in `seed`.
void fill_random_euler(PatchBatch& batch, std::uint64_t seed, const EulerParameters& params = {});

/// Sets every patch's dt to cfl * dx / (max wave speed over its QIn).
void set_cfl_timestep(PatchBatch& batch, double cfl, const EulerParameters& params = {});

/// A d-dimensional Euler batch of N patches with random states and CFL 0.4
/// timesteps, arranged as a row of unit patches.
PatchBatch random_euler_batch(int dimensions, int volumesPerAxis, int patches, std::uint64_t seed,
                              const EulerParameters& params = {});

/// Sum of all QOut entries in storage order.
double checksum(const PatchBatch& batch);

}  // namespace fvk::bench
