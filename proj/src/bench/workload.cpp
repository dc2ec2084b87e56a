#include "fvk/bench/workload.hpp"

#include <array>
#include <random>

namespace fvk::bench {

void fill_random_euler(PatchBatch& batch, std::uint64_t seed, const EulerParameters& params) {
  const PatchSpec& spec = batch.spec();
  const int d = spec.dimensions;
  if (spec.unknowns != d + 2) throw std::invalid_argument("Euler needs d + 2 unknowns");

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> density(0.5, 2.0);
  std::uniform_real_distribution<double> velocity(-1.0, 1.0);
  std::uniform_real_distribution<double> pressure(0.5, 2.0);

  auto data = batch.qInData();
  const auto s = static_cast<std::size_t>(spec.unknowns);
  std::array<double, 3> u{};
  for (std::size_t offset = 0; offset < data.size(); offset += s) {
    const double rho = density(rng);
    for (int a = 0; a < d; ++a) u[static_cast<std::size_t>(a)] = velocity(rng);
    const double p = pressure(rng);
    euler_from_primitive(rho, std::span<const double>(u.data(), static_cast<std::size_t>(d)), p, params,
                         data.subspan(offset, s));
  }
}

void set_cfl_timestep(PatchBatch& batch, double cfl, const EulerParameters& params) {
  const PatchSpec& spec = batch.spec();
  const auto s = static_cast<std::size_t>(spec.unknowns);
  for (int patch = 0; patch < batch.numberOfCells(); ++patch) {
    const auto in = batch.qIn(patch);
    double lambda = 0.0;
    for (std::size_t offset = 0; offset < in.size(); offset += s) {
      for (int dir = 0; dir < spec.dimensions; ++dir) {
        const double l = euler_max_eigenvalue(in.subspan(offset, s), dir, params);
        lambda = lambda < l ? l : lambda;
      }
    }
    batch.dt(patch) = cfl * batch.volumeSize(patch) / lambda;
  }
}

PatchBatch random_euler_batch(int dimensions, int volumesPerAxis, int patches, std::uint64_t seed,
                              const EulerParameters& params) {
  const PatchSpec spec{dimensions, volumesPerAxis, dimensions + 2};
  PatchBatch batch = make_patch_batch(spec, patches, Coord{}, 1.0);
  fill_random_euler(batch, seed, params);
  set_cfl_timestep(batch, 0.4, params);
  for (int i = 0; i < patches; ++i) batch.t(i) = 0.25 * i;
  return batch;
}

double checksum(const PatchBatch& batch) {
  double sum = 0.0;
  for (double v : batch.qOutData()) sum += v;
  return sum;
}

}  // namespace fvk::bench
