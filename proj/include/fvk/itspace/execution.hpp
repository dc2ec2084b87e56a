#pragma once

#include <omp.h>

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "fvk/itspace/index_space.hpp"

namespace fvk::itspace {

enum class Execution { Sequential, ParallelUnordered };

/// How a loop over an IndexSpace runs.
///
/// Sequential visits indices in the space's declared order on the calling
/// thread. ParallelUnordered splits the enumeration into one contiguous chunk
/// per worker and runs the chunks on an OpenMP team; `workerHint` overrides
/// the team size (otherwise OMP_NUM_THREADS / the OpenMP default applies).
struct ExecutionStrategy {
  Execution kind = Execution::Sequential;
  std::optional<int> workerHint;

  static ExecutionStrategy sequential() { return {}; }
  static ExecutionStrategy parallel(std::optional<int> workers = std::nullopt) {
    return {Execution::ParallelUnordered, workers};
  }

  int workers() const;
};

std::string_view to_string(Execution kind);
/// Accepts "seq" and "par". Throws std::invalid_argument.
Execution parse_execution(std::string_view text);

class EmptyReductionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

namespace detail {

struct Chunk {
  std::int64_t begin;
  std::int64_t end;
};

inline Chunk chunk_of(std::int64_t total, int worker, int workers) {
  const std::int64_t base = total / workers;
  const std::int64_t extra = total % workers;
  const std::int64_t begin = worker * base + (worker < extra ? worker : extra);
  return {begin, begin + base + (worker < extra ? 1 : 0)};
}

}  // namespace detail

/// Invokes `body(const Index&)` exactly once per index of `space` and returns
/// once every invocation has finished.
///
/// Under ParallelUnordered the body must be race-free across distinct
/// indices. If a body throws, remaining work is abandoned and the first
/// exception is rethrown on the calling thread.
template <class Body>
void for_each(const IndexSpace& space, const ExecutionStrategy& strategy, Body&& body) {
  const std::int64_t total = space.size();
  if (total == 0) return;

  if (strategy.kind == Execution::Sequential) {
    Index idx = space.at(0);
    for (std::int64_t i = 0; i < total; ++i) {
      body(static_cast<const Index&>(idx));
      space.advance(idx);
    }
    return;
  }

  const int workers = static_cast<int>(std::min<std::int64_t>(strategy.workers(), total));
  std::exception_ptr failure;
  std::atomic<bool> abort{false};

#pragma omp parallel num_threads(workers)
  {
    const detail::Chunk chunk = detail::chunk_of(total, omp_get_thread_num(), omp_get_num_threads());
    try {
      if (chunk.begin < chunk.end) {
        Index idx = space.at(chunk.begin);
        for (std::int64_t i = chunk.begin; i < chunk.end; ++i) {
          if (abort.load(std::memory_order_relaxed)) break;
          body(static_cast<const Index&>(idx));
          space.advance(idx);
        }
      }
    } catch (...) {
#pragma omp critical(fvk_itspace_failure)
      {
        if (!failure) failure = std::current_exception();
      }
      abort.store(true, std::memory_order_relaxed);
    }
  }

  if (failure) std::rethrow_exception(failure);
}

/// Maximum of `value(const Index&)` over `space`; values must be NaN-free.
/// Throws EmptyReductionError on an empty space.
template <class Value>
double reduce_max(const IndexSpace& space, const ExecutionStrategy& strategy, Value&& value) {
  const std::int64_t total = space.size();
  if (total == 0) throw EmptyReductionError("reduce_max over an empty index space");

  const auto scan = [&](std::int64_t begin, std::int64_t end) {
    Index idx = space.at(begin);
    double best = value(static_cast<const Index&>(idx));
    for (std::int64_t i = begin + 1; i < end; ++i) {
      space.advance(idx);
      const double v = value(static_cast<const Index&>(idx));
      best = best < v ? v : best;
    }
    return best;
  };

  if (strategy.kind == Execution::Sequential) return scan(0, total);

  const int workers = static_cast<int>(std::min<std::int64_t>(strategy.workers(), total));
  std::vector<double> partial(static_cast<std::size_t>(workers));
  std::vector<char> filled(static_cast<std::size_t>(workers), 0);
  std::exception_ptr failure;

#pragma omp parallel num_threads(workers)
  {
    const int worker = omp_get_thread_num();
    const detail::Chunk chunk = detail::chunk_of(total, worker, omp_get_num_threads());
    try {
      if (chunk.begin < chunk.end) {
        partial[static_cast<std::size_t>(worker)] = scan(chunk.begin, chunk.end);
        filled[static_cast<std::size_t>(worker)] = 1;
      }
    } catch (...) {
#pragma omp critical(fvk_itspace_failure)
      {
        if (!failure) failure = std::current_exception();
      }
    }
  }

  if (failure) std::rethrow_exception(failure);
  std::optional<double> best;
  for (std::size_t w = 0; w < partial.size(); ++w) {
    if (!filled[w]) continue;
    best = !best || *best < partial[w] ? partial[w] : *best;
  }
  return *best;
}

}  // namespace fvk::itspace
