#include "fvk/bench/benchmark.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>

#include "fvk/bench/workload.hpp"
#include "fvk/kernel/update.hpp"
#include "fvk/pde/euler.hpp"

namespace fvk::bench {

void BenchConfig::validate() const {
  if (dimensions != 2 && dimensions != 3) throw std::invalid_argument("--dim must be 2 or 3");
  if (patchSize < 1) throw std::invalid_argument("--patch-size must be >= 1");
  if (unknowns != dimensions + 2) {
    throw std::invalid_argument("the Euler kernels need d + 2 = " + std::to_string(dimensions + 2) + " unknowns");
  }
  if (repetitions < 1) throw std::invalid_argument("--reps must be >= 1");
  if (warmupRepetitions < 0) throw std::invalid_argument("--warmup must be >= 0");
  if (batchSizes.empty() || orderings.empty() || layouts.empty() || strategies.empty()) {
    throw std::invalid_argument("benchmark grid is empty");
  }
  for (int n : batchSizes) {
    if (n < 1) throw std::invalid_argument("batch sizes must be >= 1");
  }
}

namespace {

double median(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  return values.size() % 2 == 1 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

template <class P>
void time_variant(const BenchConfig& config, const P& pde, const PatchBatch& master,
                  const kernel::KernelVariant& variant, double& wallTime, double& sum) {
  const auto invoke = [&] {
    PatchBatch work = master;
    kernel::update_patch_batch(work, pde, variant);
    if (config.afterUpdate) config.afterUpdate(variant, work);
    return work;
  };

  for (int i = 0; i < config.warmupRepetitions; ++i) invoke();

  std::vector<double> times;
  times.reserve(static_cast<std::size_t>(config.repetitions));
  for (int i = 0; i < config.repetitions; ++i) {
    const auto start = std::chrono::steady_clock::now();
    const PatchBatch work = invoke();
    const auto stop = std::chrono::steady_clock::now();
    times.push_back(std::chrono::duration<double>(stop - start).count());
    sum = checksum(work);
  }
  wallTime = median(std::move(times));
}

template <class P>
std::vector<BenchRecord> run_with(const BenchConfig& config, const P& pde) {
  std::vector<BenchRecord> records;
  const double volumesPerPatch = std::pow(static_cast<double>(config.patchSize), config.dimensions);

  for (int n : config.batchSizes) {
    const std::uint64_t seed = config.seed * 0x9E3779B97F4A7C15ull + static_cast<std::uint64_t>(n);
    const PatchBatch master = random_euler_batch(config.dimensions, config.patchSize, n, seed, pde.parameters());

    std::vector<BenchRecord> group;
    for (kernel::Ordering ordering : config.orderings) {
      for (Layout layout : config.layouts) {
        for (const auto& strategy : config.strategies) {
          const kernel::KernelVariant variant{ordering, layout, strategy};
          BenchRecord r;
          r.variant = std::string(kernel::to_string(ordering));
          r.layout = std::string(to_string(layout));
          r.strategy = std::string(itspace::to_string(strategy.kind));
          r.nPatches = n;
          time_variant(config, pde, master, variant, r.wallTime, r.checksum);
          r.timePerVolumeUpdate = r.wallTime / (n * volumesPerPatch);
          group.push_back(std::move(r));
        }
      }
    }

    for (const BenchRecord& r : group) {
      if (r.checksum != group.front().checksum) {
        char message[256];
        std::snprintf(message, sizeof message, "checksum mismatch for N=%d: %s/%s/%s gives %.17g, %s/%s/%s gives %.17g",
                      n, group.front().variant.c_str(), group.front().layout.c_str(),
                      group.front().strategy.c_str(), group.front().checksum, r.variant.c_str(), r.layout.c_str(),
                      r.strategy.c_str(), r.checksum);
        throw ChecksumMismatchError(message);
      }
    }
    records.insert(records.end(), group.begin(), group.end());
  }
  return records;
}

}  // namespace

std::vector<BenchRecord> run_benchmark(const BenchConfig& config) {
  config.validate();
  if (config.dimensions == 2) return run_with(config, Euler<2>{});
  return run_with(config, Euler<3>{});
}

}  // namespace fvk::bench
