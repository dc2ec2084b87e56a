#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "fvk/kernel/variant.hpp"
#include "fvk/mesh/patch_batch.hpp"

namespace fvk::bench {

struct BenchConfig {
  int dimensions = 2;
  int patchSize = 17;
  int unknowns = 4;
  std::vector<int> batchSizes{1, 2, 4, 8, 16, 32};
  std::vector<kernel::Ordering> orderings{kernel::Ordering::PatchWise, kernel::Ordering::Batched};
  std::vector<Layout> layouts{Layout::AoS, Layout::SoA, Layout::AoSoA};
  std::vector<itspace::ExecutionStrategy> strategies{itspace::ExecutionStrategy::sequential(),
                                                     itspace::ExecutionStrategy::parallel()};
  int repetitions = 20;
  int warmupRepetitions = 3;
  std::uint64_t seed = 42;

  /// Runs after every kernel invocation, inside the timed region. Only used
  /// to inject faults when testing checksum verification.
  std::function<void(const kernel::KernelVariant&, PatchBatch&)> afterUpdate;

  /// Throws std::invalid_argument on an inconsistent configuration.
  void validate() const;
};

struct BenchRecord {
  std::string variant;
  std::string layout;
  std::string strategy;
  int nPatches = 0;
  /// Median wall time of one kernel invocation, seconds.
  double wallTime = 0.0;
  /// wallTime / (nPatches * p^d), seconds.
  double timePerVolumeUpdate = 0.0;
  /// Sum of QOut.
  double checksum = 0.0;

  friend bool operator==(const BenchRecord&, const BenchRecord&) = default;
};

class ChecksumMismatchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Times every (N, ordering, layout, strategy) combination.
///
/// Each N gets a random admissible Euler batch seeded from (seed, N). The
/// timed region covers staging a copy of that batch and one
/// update_patch_batch call (temporaries included). Throws
/// ChecksumMismatchError if any two variants disagree for the same N.
std::vector<BenchRecord> run_benchmark(const BenchConfig& config);

inline constexpr const char* kCsvHeader =
    "variant,layout,strategy,n_patches,wall_time_s,time_per_volume_update_s,checksum";

/// Throws std::invalid_argument on empty input (nothing is written) and
/// std::runtime_error naming the path if it cannot be written.
void emit_csv(const std::vector<BenchRecord>& records, const std::filesystem::path& path);
void write_csv(std::ostream& out, const std::vector<BenchRecord>& records);
std::vector<BenchRecord> parse_csv(std::istream& in);
std::vector<BenchRecord> parse_csv(const std::filesystem::path& path);

/// Writes one "<variant>_<layout>_<strategy>.dat" file per series into
/// directory `dir` (created if missing): "n_patches time_per_volume_update_s"
/// rows sorted by n_patches. Returns the files written.
std::vector<std::filesystem::path> emit_plotdata(const std::vector<BenchRecord>& records,
                                                 const std::filesystem::path& dir);

/// Fraction of consecutive-N pairs within a series whose wall time drops.
double monotonicity_inversion_rate(const std::vector<BenchRecord>& records);

}  // namespace fvk::bench
