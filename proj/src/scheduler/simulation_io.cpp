#include "fvk/scheduler/simulation_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

namespace fvk::scheduler {

void DriverConfig::validate(int dimensions) const {
  if (!(cflFactor > 0.0 && cflFactor <= 1.0)) throw std::invalid_argument("cflFactor must lie in (0,1]");
  if (steps < 0) throw std::invalid_argument("steps must be >= 0");
  if (threshold < 1) throw std::invalid_argument("threshold must be >= 1");
  if (volumesPerAxis < 1) throw std::invalid_argument("volumesPerAxis must be >= 1");
  if (!(patchExtent > 0.0)) throw std::invalid_argument("patchExtent must be positive");
  grid_cells(gridShape);
  for (int a = dimensions; a < 3; ++a) {
    if (gridShape[a] != 1) throw std::invalid_argument("grid extends along an inactive axis");
  }
}

std::vector<double> conserved_totals(const PatchBatch& batch) {
  const PatchSpec& spec = batch.spec();
  const auto s = static_cast<std::size_t>(spec.unknowns);
  std::vector<double> totals(s, 0.0);
  for (int patch = 0; patch < batch.numberOfCells(); ++patch) {
    const double volume = std::pow(batch.volumeSize(patch), spec.dimensions);
    std::vector<double> local(s, 0.0);
    const auto out = batch.qOut(patch);
    for (std::size_t i = 0; i < out.size(); ++i) local[i % s] += out[i];
    for (std::size_t k = 0; k < s; ++k) totals[k] += local[k] * volume;
  }
  return totals;
}

namespace detail {

PatchBatch stage(const PatchBatch& global, std::span<const PatchTask> tasks) {
  PatchBatch staged(global.spec(), static_cast<int>(tasks.size()));
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    const int local = static_cast<int>(i);
    const int id = tasks[i].patchId;
    const auto from = global.qIn(id);
    std::copy(from.begin(), from.end(), staged.qIn(local).begin());
    staged.cellCentre(local) = global.cellCentre(id);
    staged.cellSize(local) = global.cellSize(id);
    staged.t(local) = global.t(id);
    staged.dt(local) = global.dt(id);
  }
  return staged;
}

void unstage(const PatchBatch& staged, std::span<const PatchTask> tasks, PatchBatch& global) {
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    const int local = static_cast<int>(i);
    const int id = tasks[i].patchId;
    const auto from = staged.qOut(local);
    std::copy(from.begin(), from.end(), global.qOut(id).begin());
    global.maxEigenvalue(id) = staged.maxEigenvalue(local);
  }
}

}  // namespace detail

namespace {

void put(std::ostream& out, double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.16e", value);
  out << buffer;
}

}  // namespace

void write_simulation_csv(std::ostream& out, const SimulationResult& result) {
  const int d = result.field.spec().dimensions;
  const int s = result.field.spec().unknowns;
  static constexpr const char* axes[] = {"x", "y", "z"};
  out << "step,t,dt,global_max_eigenvalue,total_mass";
  for (int a = 0; a < d; ++a) out << ",total_momentum_" << axes[a];
  out << ",total_energy\n";
  for (const StepRecord& r : result.records) {
    out << r.step << ',';
    put(out, r.t);
    out << ',';
    put(out, r.dt);
    out << ',';
    put(out, r.globalMaxEigenvalue);
    for (int k = 0; k < s; ++k) {
      out << ',';
      put(out, r.totals[static_cast<std::size_t>(k)]);
    }
    out << '\n';
  }
}

void write_simulation_csv(const std::filesystem::path& path, const SimulationResult& result) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  write_simulation_csv(out, result);
  if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

}  // namespace fvk::scheduler
