#pragma once

#include <filesystem>
#include <iosfwd>

#include "fvk/scheduler/driver.hpp"

namespace fvk::scheduler {

/// One row per record: step,t,dt,global_max_eigenvalue,total_mass,
/// total_momentum_x,total_momentum_y[,total_momentum_z],total_energy.
/// Reals are written with 17 significant digits.
void write_simulation_csv(std::ostream& out, const SimulationResult& result);
/// Throws std::runtime_error naming `path` if it cannot be written.
void write_simulation_csv(const std::filesystem::path& path, const SimulationResult& result);

}  // namespace fvk::scheduler
