#include <doctest.h>

#include <algorithm>
#include <exception>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fvk/pde/euler.hpp"
#include "fvk/scheduler/driver.hpp"
#include "fvk/scheduler/enclave.hpp"
#include "fvk/scheduler/scenarios.hpp"
#include "fvk/scheduler/simulation_io.hpp"

using namespace fvk;
using namespace fvk::scheduler;

namespace {

std::size_t count(const std::vector<PatchTask>& tasks, Classification c) {
  return static_cast<std::size_t>(
      std::count_if(tasks.begin(), tasks.end(), [&](const PatchTask& t) { return t.classification == c; }));
}

std::vector<PatchTask> enclave_tasks(int n, int firstId = 0) {
  std::vector<PatchTask> out;
  for (int i = 0; i < n; ++i) out.push_back({firstId + i, Classification::Enclave});
  return out;
}

struct Recorder {
  std::vector<int> inlineIds;
  std::vector<std::vector<int>> batches;
  InlineExecutor inlineExec() {
    return [this](const PatchTask& t) { inlineIds.push_back(t.patchId); };
  }
  BatchExecutor batchExec() {
    return [this](std::span<const PatchTask> ts) {
      batches.emplace_back();
      for (const auto& t : ts) batches.back().push_back(t.patchId);
    };
  }
};

DriverConfig small_config() {
  DriverConfig config;
  config.gridShape = {3, 3, 1};
  config.volumesPerAxis = 4;
  config.steps = 5;
  config.threshold = 2;
  config.patchExtent = 1.0 / 3.0;
  return config;
}

const kernel::KernelVariant kBatched{kernel::Ordering::Batched, Layout::AoS, itspace::ExecutionStrategy::parallel()};

}  // namespace

TEST_CASE("classify a 4x4 grid without periodicity") {
  const auto tasks = classify({4, 4, 1}, 2, false);
  REQUIRE(tasks.size() == 16);
  CHECK(count(tasks, Classification::Urgent) == 12);
  CHECK(count(tasks, Classification::Enclave) == 4);
  for (int id : {5, 6, 9, 10}) CHECK(tasks[static_cast<std::size_t>(id)].classification == Classification::Enclave);
  for (std::size_t i = 0; i < tasks.size(); ++i) CHECK(tasks[i].patchId == static_cast<int>(i));
}

TEST_CASE("classify under periodicity and flags") {
  CHECK(count(classify({3, 3, 1}, 2, true), Classification::Enclave) == 9);
  const std::vector<bool> all(9, true);
  CHECK(count(classify({3, 3, 1}, 2, true, all), Classification::Urgent) == 9);
  std::vector<bool> one(9, false);
  one[4] = true;
  const auto tasks = classify({3, 3, 1}, 2, false, one);
  CHECK(count(tasks, Classification::Urgent) == 9);
  CHECK(count(classify({3, 3, 3}, 3, false), Classification::Enclave) == 1);
  CHECK(count(classify({1, 1, 1}, 2, false), Classification::Urgent) == 1);
  CHECK_THROWS_AS(classify({3, 3, 1}, 2, true, std::vector<bool>(4, false)), std::invalid_argument);
}

TEST_CASE("ten enclave tasks with threshold four") {
  EnclaveBuffer buffer(4);
  Recorder rec;
  const auto tasks = enclave_tasks(10);
  const auto trace = traverse_and_dispatch(tasks, buffer, rec.inlineExec(), rec.batchExec());
  CHECK(trace.count(DispatchKind::EnclaveBatch) == 2);
  CHECK(trace.count(DispatchKind::EnclaveTrailing) == 2);
  CHECK(rec.batches == std::vector<std::vector<int>>{{0, 1, 2, 3}, {4, 5, 6, 7}});
  CHECK(rec.inlineIds == std::vector<int>{8, 9});
  CHECK(trace.events.back().kind == DispatchKind::EnclaveTrailing);
  CHECK(buffer.pending().empty());
}

TEST_CASE("urgent tasks run inline in traversal order") {
  for (int n = 1; n <= 6; ++n) {
    EnclaveBuffer buffer(n);
    Recorder rec;
    std::vector<PatchTask> tasks;
    for (int i = 0; i < 5; ++i) tasks.push_back({i, Classification::Urgent});
    const auto trace = traverse_and_dispatch(tasks, buffer, rec.inlineExec(), rec.batchExec());
    CHECK(trace.count(DispatchKind::UrgentInline) == 5);
    CHECK(trace.count(DispatchKind::EnclaveBatch) == 0);
    CHECK(rec.inlineIds == std::vector<int>{0, 1, 2, 3, 4});
  }
}

TEST_CASE("threshold one turns every enclave task into a batch") {
  EnclaveBuffer buffer(1);
  Recorder rec;
  const auto trace = traverse_and_dispatch(enclave_tasks(7), buffer, rec.inlineExec(), rec.batchExec());
  CHECK(trace.count(DispatchKind::EnclaveBatch) == 7);
  CHECK(trace.count(DispatchKind::EnclaveTrailing) == 0);
}

TEST_CASE("interleaved urgent tasks are not delayed by the buffer") {
  EnclaveBuffer buffer(3);
  std::vector<std::string> log;
  std::vector<PatchTask> tasks{{0, Classification::Enclave}, {1, Classification::Urgent},
                               {2, Classification::Enclave}, {3, Classification::Enclave},
                               {4, Classification::Urgent},  {5, Classification::Enclave}};
  traverse_and_dispatch(
      tasks, buffer, [&](const PatchTask& t) { log.push_back("i" + std::to_string(t.patchId)); },
      [&](std::span<const PatchTask> ts) { log.push_back("b" + std::to_string(ts.size())); });
  CHECK(log == std::vector<std::string>{"i1", "b3", "i4", "i5"});
}

TEST_CASE("buffer flushes exactly at the threshold") {
  EnclaveBuffer buffer(3);
  CHECK_FALSE(buffer.push({0, Classification::Enclave}));
  CHECK_FALSE(buffer.push({1, Classification::Enclave}));
  CHECK(buffer.push({2, Classification::Enclave}));
  CHECK(buffer.take().size() == 3);
  CHECK(buffer.pending().empty());
  CHECK_THROWS_AS(EnclaveBuffer(0), std::invalid_argument);
}

TEST_CASE("executor failures name the failing patches") {
  EnclaveBuffer buffer(2);
  const auto tasks = enclave_tasks(5, 10);
  try {
    traverse_and_dispatch(
        tasks, buffer, [](const PatchTask&) {},
        [](std::span<const PatchTask> ts) {
          if (ts.front().patchId == 12) throw std::runtime_error("device lost");
        });
    FAIL("expected DispatchError");
  } catch (const DispatchError& e) {
    CHECK(e.kind() == DispatchKind::EnclaveBatch);
    CHECK(e.patchIds() == std::vector<int>{12, 13});
    CHECK(std::string(e.what()).find("[12,13]") != std::string::npos);
    CHECK_THROWS_WITH(std::rethrow_if_nested(e), "device lost");
  }

  EnclaveBuffer other(4);
  CHECK_THROWS_AS(traverse_and_dispatch(
                      enclave_tasks(2), other, [](const PatchTask&) { throw std::logic_error("bad"); },
                      [](std::span<const PatchTask>) {}),
                  DispatchError);
}

TEST_CASE("steps = 0 samples the initial condition without dispatching") {
  auto config = small_config();
  config.steps = 0;
  const MovingDensityBump bump;
  const auto result = run_simulation(config, Euler<2>{}, kBatched, bump);
  CHECK(result.traces.empty());
  REQUIRE(result.records.size() == 1);
  CHECK(result.records[0].dt == 0.0);
  const auto& field = result.field;
  const Coord x = field.haloedVolumeCentre(4, {2, 3, 0});
  CHECK(field.qOut(4)[qout_offset(field.spec(), {1, 2, 0}, 0)] == doctest::Approx(bump.density(x, 0.0)));
}

TEST_CASE("constant state survives the driver bitwise with constant dt") {
  auto config = small_config();
  config.periodic = false;
  config.steps = 6;
  const ConstantState state{1.0, {0.3, 0.1, 0.0}, 1.0, 2, {}};
  const auto result = run_simulation(config, Euler<2>{}, kBatched, state);
  std::vector<double> q(4);
  state({0, 0, 0}, q);
  for (std::size_t i = 0; i < result.field.qOutData().size(); ++i) REQUIRE(result.field.qOutData()[i] == q[i % 4]);
  for (std::size_t r = 2; r < result.records.size(); ++r) CHECK(result.records[r].dt == result.records[1].dt);
}

TEST_CASE("every patch is dispatched exactly once per step") {
  for (bool periodic : {true, false}) {
    for (int threshold : {1, 2, 4, 9, 20}) {
      auto config = small_config();
      config.periodic = periodic;
      config.threshold = threshold;
      config.steps = 2;
      const auto result = run_simulation(config, Euler<2>{}, kBatched, MovingDensityBump{});
      REQUIRE(result.traces.size() == 2);
      for (const auto& trace : result.traces) {
        std::multiset<int> ids;
        for (const auto& e : trace.events) ids.insert(e.patchIds.begin(), e.patchIds.end());
        CHECK(ids.size() == 9);
        CHECK(std::set<int>(ids.begin(), ids.end()).size() == 9);
        CHECK(trace.count(DispatchKind::UrgentInline) == (periodic ? 0u : 8u));
      }
    }
  }
}

TEST_CASE("endTime clips the final step") {
  auto config = small_config();
  config.steps = 1000;
  config.endTime = 0.05;
  const auto result = run_simulation(config, Euler<2>{}, kBatched, MovingDensityBump{});
  CHECK(result.records.back().t == doctest::Approx(0.05).epsilon(1e-14));
  CHECK(result.records.size() < 1000);
}

TEST_CASE("results do not depend on the kernel variant the driver uses") {
  auto config = small_config();
  config.periodic = false;
  const auto reference = run_simulation(config, Euler<2>{}, kBatched, MovingDensityBump{});
  for (auto ordering : {kernel::Ordering::PatchWise, kernel::Ordering::Batched}) {
    for (auto layout : {Layout::SoA, Layout::AoSoA}) {
      const auto result = run_simulation(config, Euler<2>{},
                                         {ordering, layout, itspace::ExecutionStrategy::sequential()},
                                         MovingDensityBump{});
      CHECK(std::equal(result.field.qOutData().begin(), result.field.qOutData().end(),
                       reference.field.qOutData().begin()));
    }
  }
}

TEST_CASE("a 3D run conserves mass") {
  DriverConfig config;
  config.gridShape = {2, 2, 2};
  config.volumesPerAxis = 4;
  config.steps = 5;
  config.threshold = 3;
  config.patchExtent = 0.5;
  config.cflFactor = 0.3;
  MovingDensityBump bump;
  bump.dimensions = 3;
  bump.velocity = {0.4, -0.2, 0.3};
  const auto result = run_simulation(config, Euler<3>{}, kBatched, bump);
  const double m0 = result.records.front().totals[0];
  CHECK(std::abs(result.records.back().totals[0] - m0) <= 1e-12 * m0);
}

TEST_CASE("non-physical initial data is rejected") {
  auto config = small_config();
  const auto bad = [](const Coord&, std::span<double> q) {
    std::fill(q.begin(), q.end(), 0.0);
    q[0] = -1.0;
  };
  CHECK_THROWS_AS(run_simulation(config, Euler<2>{}, kBatched, bad), SimulationError);
}

TEST_CASE("driver configuration is validated") {
  auto config = small_config();
  config.cflFactor = 1.5;
  CHECK_THROWS_AS(config.validate(2), std::invalid_argument);
  config = small_config();
  config.steps = -1;
  CHECK_THROWS_AS(config.validate(2), std::invalid_argument);
  config = small_config();
  config.threshold = 0;
  CHECK_THROWS_AS(config.validate(2), std::invalid_argument);
  config = small_config();
  config.gridShape = {3, 3, 2};
  CHECK_THROWS_AS(config.validate(2), std::invalid_argument);
}

TEST_CASE("simulation CSV has one row per record") {
  auto config = small_config();
  config.steps = 3;
  const auto result = run_simulation(config, Euler<2>{}, kBatched, MovingDensityBump{});
  std::ostringstream out;
  write_simulation_csv(out, result);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "step,t,dt,global_max_eigenvalue,total_mass,total_momentum_x,total_momentum_y,total_energy");
  int rows = 0;
  while (std::getline(in, line)) {
    CHECK(std::count(line.begin(), line.end(), ',') == 7);
    ++rows;
  }
  CHECK(rows == 4);
}

TEST_CASE("moving bump exact solution is periodic") {
  MovingDensityBump bump;
  bump.velocity = {1.0, 0.0, 0.0};
  CHECK(bump.density({0.3, 0.6, 0}, 1.0) == doctest::Approx(bump.density({0.3, 0.6, 0}, 0.0)));
  CHECK(bump.density({0.5, 0.5, 0}, 0.0) == doctest::Approx(1.5).epsilon(1e-6));
}
