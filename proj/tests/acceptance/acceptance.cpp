// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>
#include <sys/wait.h>

#include "batch_helpers.hpp"
#include "fvk/bench/benchmark.hpp"
#include "fvk/bench/workload.hpp"
#include "fvk/kernel/update.hpp"
#include "fvk/mesh/halo.hpp"
#include "fvk/pde/euler.hpp"
#include "fvk/scheduler/driver.hpp"
#include "fvk/scheduler/scenarios.hpp"
#include "scalar_rusanov.hpp"

using namespace fvk;
using kernel::KernelVariant;
using kernel::Ordering;
using itspace::ExecutionStrategy;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* format, double a, double b = 0.0, double c = 0.0) {
  char buffer[256];
  std::snprintf(buffer, sizeof buffer, format, a, b, c);
  return buffer;
}

const KernelVariant kDriverVariant{Ordering::Batched, Layout::AoS, ExecutionStrategy::parallel()};

// 1
Outcome constant_state() {
  const auto start = Clock::now();
  scheduler::DriverConfig config;
  config.gridShape = {3, 3, 1};
  config.volumesPerAxis = 17;
  config.steps = 10;
  config.threshold = 4;
  config.patchExtent = 1.0 / 3.0;
  const scheduler::ConstantState state{1.0, {0.0, 0.0, 0.0}, 1.0, 2, {}};
  const auto result = scheduler::run_simulation(config, Euler<2>{}, kDriverVariant, state);
  std::vector<double> q(4);
  state({0, 0, 0}, q);
  std::size_t mismatches = 0;
  const auto out = result.field.qOutData();
  for (std::size_t i = 0; i < out.size(); ++i) mismatches += out[i] != q[i % 4];
  const double elapsed = seconds_since(start);
  const bool steps = result.records.size() == 11;
  return {mismatches == 0 && steps && elapsed < 5.0,
          fmt("%.0f differing entries after 10 steps, %.2f s", static_cast<double>(mismatches), elapsed)};
}

// 2
Outcome variant_equivalence() {
  const auto start = Clock::now();
  const int sizes[] = {3, 5, 17};
  const int counts[] = {1, 4, 16};
  double worst = 0.0;
  std::size_t eigenMismatches = 0;
  const auto variants = testing_support::all_variants();
  for (int seed = 0; seed < 50; ++seed) {
    const int p = sizes[seed % 3];
    const int n = counts[(seed / 3) % 3];
    const auto input = bench::random_euler_batch(2, p, n, 1000 + static_cast<std::uint64_t>(seed));
    auto reference = input;
    kernel::update_patch_batch(reference, Euler<2>{}, variants.front());
    const double scale = testing_support::max_abs(reference.qOutData());
    for (const auto& variant : variants) {
      auto batch = input;
      kernel::update_patch_batch(batch, Euler<2>{}, variant);
      worst = std::max(worst, testing_support::max_abs_diff(batch.qOutData(), reference.qOutData()) / scale);
      for (int i = 0; i < n; ++i) eigenMismatches += batch.maxEigenvalue(i) != reference.maxEigenvalue(i);
    }
  }
  const double elapsed = seconds_since(start);
  return {worst <= 1e-13 && eigenMismatches == 0 && elapsed < 60.0,
          fmt("50 batches x 12 variants: max relative difference %.3g, %.0f eigenvalue mismatches, %.2f s", worst,
              static_cast<double>(eigenMismatches), elapsed)};
}

// 3
Outcome scalar_oracle() {
  std::mt19937_64 rng(2024);
  double worst = 0.0;
  double worstEigen = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const int d = trial < 12 ? 2 : 3;
    const int p = d == 2 ? 3 + trial % 6 : 2 + trial % 3;
    const auto patch = testing_support::random_patch(rng, d, p);
    const auto ref = oracle::step(d, p, patch.field, patch.dx, patch.dt);
    for (const auto& variant : testing_support::all_variants()) {
      auto batch = testing_support::single_patch(d, p, patch.field, patch.dt);
      if (d == 2) {
        kernel::update_patch_batch(batch, Euler<2>{}, variant);
      } else {
        kernel::update_patch_batch(batch, Euler<3>{}, variant);
      }
      worst = std::max(worst, testing_support::max_abs_diff(batch.qOutData(), ref.qOut));
      worstEigen = std::max(worstEigen, std::abs(batch.maxEigenvalue(0) - ref.maxEigenvalue));
    }
  }
  return {worst <= 1e-15 && worstEigen <= 1e-15,
          fmt("20 patches: max |Q - Q_ref| = %.3g, max eigenvalue difference %.3g", worst, worstEigen)};
}

scheduler::DriverConfig conservation_config(int threshold) {
  scheduler::DriverConfig config;
  config.gridShape = {4, 4, 1};
  config.volumesPerAxis = 10;
  config.cflFactor = 0.4;
  config.steps = 100;
  config.threshold = threshold;
  config.patchExtent = 0.25;
  return config;
}

scheduler::MovingDensityBump conservation_bump() {
  scheduler::MovingDensityBump bump;
  bump.velocity = {0.5, 0.3, 0.0};
  return bump;
}

// 4
Outcome conservation() {
  const auto start = Clock::now();
  const auto result =
      scheduler::run_simulation(conservation_config(4), Euler<2>{}, kDriverVariant, conservation_bump());
  const auto& first = result.records.front().totals;
  double worst = 0.0;
  for (const auto& record : result.records) {
    for (std::size_t k = 0; k < first.size(); ++k) {
      worst = std::max(worst, std::abs(record.totals[k] - first[k]) / std::abs(first[k]));
    }
  }
  const double elapsed = seconds_since(start);
  return {worst <= 1e-12 && result.records.size() == 101 && elapsed < 30.0,
          fmt("max relative drift of mass/momentum/energy over 100 steps %.3g, %.2f s", worst, elapsed)};
}

double contact_l1_error(int volumesPerPatch, double endTime) {
  const int grid = 3;
  scheduler::DriverConfig config;
  config.gridShape = {grid, grid, 1};
  config.volumesPerAxis = volumesPerPatch;
  config.steps = 1 << 20;
  config.endTime = endTime;
  config.threshold = 4;
  config.patchExtent = 1.0 / grid;
  scheduler::MovingDensityBump bump;
  bump.velocity = {1.0, 0.5, 0.0};
  bump.width = 0.1;
  const auto result = scheduler::run_simulation(config, Euler<2>{}, kDriverVariant, bump);
  const auto& field = result.field;
  const PatchSpec& spec = field.spec();
  const double t = result.records.back().t;
  double error = 0.0;
  for (int patch = 0; patch < field.numberOfCells(); ++patch) {
    const double dx = field.volumeSize(patch);
    for (int y = 0; y < volumesPerPatch; ++y) {
      for (int x = 0; x < volumesPerPatch; ++x) {
        const double rho = field.qOut(patch)[qout_offset(spec, {x, y, 0}, 0)];
        const Coord centre = field.haloedVolumeCentre(patch, {x + 1, y + 1, 0});
        error += std::abs(rho - bump.density(centre, t)) * dx * dx;
      }
    }
  }
  return error;
}

// 5
Outcome convergence() {
  const auto start = Clock::now();
  const double endTime = 0.2;
  const double e30 = contact_l1_error(10, endTime);
  const double e90 = contact_l1_error(30, endTime);
  const double e270 = contact_l1_error(90, endTime);
  const double order1 = std::log(e30 / e90) / std::log(3.0);
  const double order2 = std::log(e90 / e270) / std::log(3.0);
  const double elapsed = seconds_since(start);
  std::ostringstream detail;
  detail << "L1 errors " << e30 << ", " << e90 << ", " << e270 << "; orders " << order1 << ", " << order2 << "; "
         << elapsed << " s";
  return {order1 >= 0.7 && order2 >= 0.7 && elapsed < 180.0, detail.str()};
}

// 6
Outcome eigenvalue_reduction() {
  const auto variants = testing_support::all_variants();
  std::size_t mismatches = 0;
  for (int seed = 0; seed < 100; ++seed) {
    const int d = seed % 4 == 3 ? 3 : 2;
    const int p = 2 + seed % 7;
    auto batch = bench::random_euler_batch(d, p, 1, 500 + static_cast<std::uint64_t>(seed));
    const auto input = batch;
    const auto& variant = variants[static_cast<std::size_t>(seed) % variants.size()];
    if (d == 2) {
      kernel::update_patch_batch(batch, Euler<2>{}, variant);
    } else {
      kernel::update_patch_batch(batch, Euler<3>{}, variant);
    }
    const PatchSpec& spec = input.spec();
    double brute = 0.0;
    for (int z = 0; z < (d == 3 ? p : 1); ++z)
      for (int y = 0; y < p; ++y)
        for (int x = 0; x < p; ++x)
          for (int dir = 0; dir < d; ++dir) {
            const auto q = input.qIn(0).subspan(qin_offset(spec, {x + 1, y + 1, d == 3 ? z + 1 : 0}, 0),
                                                static_cast<std::size_t>(spec.unknowns));
            brute = std::max(brute, euler_max_eigenvalue(q, dir, {}));
          }
    mismatches += batch.maxEigenvalue(0) != brute;
  }
  return {mismatches == 0, fmt("100 patches, %.0f mismatches", static_cast<double>(mismatches))};
}

// 7
Outcome dispatch_law() {
  using namespace scheduler;
  const auto start = Clock::now();
  std::size_t violations = 0;
  std::size_t cases = 0;
  for (int enclaves = 0; enclaves <= 64; ++enclaves) {
    for (int threshold = 1; threshold <= 16; ++threshold) {
      ++cases;
      const int urgent = enclaves % 7;
      std::vector<PatchTask> tasks;
      for (int i = 0, e = 0, u = 0; e < enclaves || u < urgent; ++i) {
        const bool takeUrgent = u < urgent && (e >= enclaves || i % 3 == 1);
        tasks.push_back({i, takeUrgent ? Classification::Urgent : Classification::Enclave});
        (takeUrgent ? u : e) += 1;
      }
      std::vector<int> inlineOrder;
      std::size_t batchCalls = 0;
      EnclaveBuffer buffer(threshold);
      const DispatchTrace trace = traverse_and_dispatch(
          tasks, buffer, [&](const PatchTask& t) { inlineOrder.push_back(t.patchId); },
          [&](std::span<const PatchTask> group) {
            ++batchCalls;
            for (const auto& t : group) violations += t.classification != Classification::Enclave;
          });

      const auto batches = trace.count(DispatchKind::EnclaveBatch);
      const auto trailing = trace.count(DispatchKind::EnclaveTrailing);
      violations += batches != static_cast<std::size_t>(enclaves / threshold);
      violations += trailing != static_cast<std::size_t>(enclaves % threshold);
      violations += trace.count(DispatchKind::UrgentInline) != static_cast<std::size_t>(urgent);
      violations += batchCalls != batches;
      bool trailingPhase = false;
      std::set<int> seen;
      for (const auto& event : trace.events) {
        for (int id : event.patchIds) violations += !seen.insert(id).second;
        switch (event.kind) {
          case DispatchKind::EnclaveBatch:
            violations += event.patchIds.size() != static_cast<std::size_t>(threshold) || trailingPhase;
            break;
          case DispatchKind::EnclaveTrailing:
            violations += event.patchIds.size() != 1;
            trailingPhase = true;
            break;
          case DispatchKind::UrgentInline:
            violations += event.patchIds.size() != 1 || trailingPhase ||
                          tasks[static_cast<std::size_t>(event.patchIds[0])].classification != Classification::Urgent;
            break;
        }
      }
      violations += seen.size() != tasks.size();
      // urgent tasks reach the inline executor in traversal order, before any leftovers
      std::vector<int> expectedInline;
      for (const auto& t : tasks)
        if (t.classification == Classification::Urgent) expectedInline.push_back(t.patchId);
      violations += !std::equal(expectedInline.begin(), expectedInline.end(), inlineOrder.begin());
    }
  }
  const double elapsed = seconds_since(start);
  return {violations == 0 && elapsed < 5.0,
          fmt("%.0f (E, N) cases, %.0f violations, %.3f s", static_cast<double>(cases),
              static_cast<double>(violations), elapsed)};
}

// 8
Outcome schedule_independence() {
  std::vector<std::vector<double>> fields;
  for (int threshold : {1, 4, 16}) {
    const auto result =
        scheduler::run_simulation(conservation_config(threshold), Euler<2>{}, kDriverVariant, conservation_bump());
    fields.emplace_back(result.field.qOutData().begin(), result.field.qOutData().end());
  }
  const bool same = fields[0] == fields[1] && fields[1] == fields[2];
  return {same, same ? "N = 1, 4, 16 give bitwise identical fields" : "fields differ between thresholds"};
}

// 9
Outcome concurrent_batches() {
  std::size_t mismatches = 0;
  std::size_t failures = 0;
  std::string failure;
  for (const auto& variant : testing_support::all_variants()) {
    const auto inputA = bench::random_euler_batch(2, 17, 8, 71);
    const auto inputB = bench::random_euler_batch(2, 17, 5, 72);
    auto seqA = inputA;
    auto seqB = inputB;
    kernel::update_patch_batch(seqA, Euler<2>{}, variant);
    kernel::update_patch_batch(seqB, Euler<2>{}, variant);

    for (int round = 0; round < 3; ++round) {
      auto a = inputA;
      auto b = inputB;
      std::exception_ptr errorA, errorB;
      std::thread ta([&] {
        try {
          kernel::update_patch_batch(a, Euler<2>{}, variant);
        } catch (...) {
          errorA = std::current_exception();
        }
      });
      std::thread tb([&] {
        try {
          kernel::update_patch_batch(b, Euler<2>{}, variant);
        } catch (...) {
          errorB = std::current_exception();
        }
      });
      ta.join();
      tb.join();
      for (const auto& error : {errorA, errorB}) {
        if (!error) continue;
        ++failures;
        try {
          std::rethrow_exception(error);
        } catch (const std::exception& e) {
          failure = e.what();
        }
      }
      mismatches += !std::equal(a.qOutData().begin(), a.qOutData().end(), seqA.qOutData().begin());
      mismatches += !std::equal(b.qOutData().begin(), b.qOutData().end(), seqB.qOutData().begin());
      for (int i = 0; i < a.numberOfCells(); ++i) mismatches += a.maxEigenvalue(i) != seqA.maxEigenvalue(i);
      for (int i = 0; i < b.numberOfCells(); ++i) mismatches += b.maxEigenvalue(i) != seqB.maxEigenvalue(i);
    }
  }
  return {mismatches == 0 && failures == 0,
          fmt("12 variants x 3 rounds of two concurrent calls: %.0f errors, %.0f mismatches",
              static_cast<double>(failures), static_cast<double>(mismatches)) +
              (failure.empty() ? "" : " (" + failure + ")")};
}

int run_command(const std::string& command) {
  const int status = std::system(command.c_str());
  if (status == -1) return -1;
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

// 10
Outcome benchmark_integrity() {
  const auto dir = std::filesystem::temp_directory_path() / "fvk_acceptance_bench";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  const auto csv = dir / "bench.csv";
  const std::string base = std::string("\"") + FVK_BENCH_EXE +
                           "\" --dim 2 --patch-size 17 --batch-sizes 1,2,4,8,16,32 --variants patchwise,batched"
                           " --layouts aos,soa,aosoa --strategies par --reps 3 --warmup 1 --seed 7";
  const int ok = run_command(base + " --out \"" + csv.string() + "\" --plot-out \"" + (dir / "plots").string() +
                             "\" > \"" + (dir / "log.txt").string() + "\" 2>&1");
  std::vector<bench::BenchRecord> records;
  std::string parseError;
  try {
    records = bench::parse_csv(csv);
  } catch (const std::exception& e) {
    parseError = e.what();
  }
  std::set<int> ns;
  bool checksumsAgree = true;
  for (const auto& r : records) {
    ns.insert(r.nPatches);
    for (const auto& other : records) checksumsAgree = checksumsAgree && (other.nPatches != r.nPatches || other.checksum == r.checksum);
  }
  const auto faultyCsv = dir / "faulty.csv";
  const int faulty = run_command(base + " --inject-fault batched --out \"" + faultyCsv.string() + "\" > \"" +
                                 (dir / "faulty_log.txt").string() + "\" 2>&1");
  const bool pass = ok == 0 && parseError.empty() && records.size() == 36 && ns.size() == 6 && checksumsAgree &&
                    faulty != 0 && !std::filesystem::exists(faultyCsv);
  std::ostringstream detail;
  detail << "clean run exit " << ok << ", " << records.size() << " parsed records"
         << (parseError.empty() ? "" : " (" + parseError + ")") << ", checksums "
         << (checksumsAgree ? "equal" : "differ") << "; injected fault exit " << faulty;
  return {pass, detail.str()};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"constant-state preservation", constant_state},
      {"variant equivalence", variant_equivalence},
      {"scalar oracle", scalar_oracle},
      {"conservation", conservation},
      {"convergence", convergence},
      {"eigenvalue reduction", eigenvalue_reduction},
      {"scheduler dispatch law", dispatch_law},
      {"schedule independence", schedule_independence},
      {"concurrent batches", concurrent_batches},
      {"benchmark integrity", benchmark_integrity},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome outcome;
    try {
      outcome = criteria[i].second();
    } catch (const std::exception& e) {
      outcome = {false, std::string("threw: ") + e.what()};
    }
    failed += !outcome.pass;
    std::printf("%s  %2zu %-28s %s\n", outcome.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                outcome.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - static_cast<std::size_t>(failed), criteria.size());
  return failed == 0 ? 0 : 1;
}
