#include "fvk/itspace/execution.hpp"

#include <string>

namespace fvk::itspace {

int ExecutionStrategy::workers() const {
  if (kind == Execution::Sequential) return 1;
  if (workerHint && *workerHint > 0) return *workerHint;
  return omp_get_max_threads();
}

std::string_view to_string(Execution kind) {
  return kind == Execution::Sequential ? "seq" : "par";
}

Execution parse_execution(std::string_view text) {
  if (text == "seq") return Execution::Sequential;
  if (text == "par") return Execution::ParallelUnordered;
  throw std::invalid_argument("unknown execution strategy '" + std::string(text) + "'");
}

}  // namespace fvk::itspace
