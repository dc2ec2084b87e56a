#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "fvk/mesh/patch_batch.hpp"

namespace fvk::scheduler {

enum class Classification { Urgent, Enclave };

struct PatchTask {
  int patchId = 0;
  Classification classification = Classification::Enclave;

  friend bool operator==(const PatchTask&, const PatchTask&) = default;
};

/// Urgent: patches on the domain skirt (only without periodicity) or flagged
/// in `amrFlags` (indexed by patch id; empty means no flags). Everything else
/// is Enclave. Tasks come back in patch-id order.
std::vector<PatchTask> classify(const GridShape& gridShape, int dimensions, bool periodic,
                                const std::vector<bool>& amrFlags = {});

/// Holding area for deferred enclave tasks. `push` reports when the buffer
/// has reached its threshold; `take` empties it.
class EnclaveBuffer {
 public:
  explicit EnclaveBuffer(int threshold);

  int threshold() const { return threshold_; }
  const std::vector<PatchTask>& pending() const { return pending_; }

  /// Appends `task`; true once exactly `threshold` tasks are pending.
  bool push(const PatchTask& task);
  std::vector<PatchTask> take();

 private:
  int threshold_;
  std::vector<PatchTask> pending_;
};

enum class DispatchKind {
  UrgentInline,    // urgent patch updated immediately during the traversal
  EnclaveBatch,    // N buffered enclave patches handed to the batch executor
  EnclaveTrailing  // leftover enclave patch run as a normal task at the end
};

std::string_view to_string(DispatchKind kind);

struct DispatchEvent {
  DispatchKind kind;
  std::vector<int> patchIds;
};

struct DispatchTrace {
  std::vector<DispatchEvent> events;

  std::size_t count(DispatchKind kind) const;
  /// Number of patch updates across all events.
  std::size_t patchUpdates() const;
};

using InlineExecutor = std::function<void(const PatchTask&)>;
using BatchExecutor = std::function<void(std::span<const PatchTask>)>;

/// An executor threw while handling the listed patches. The original
/// exception is nested.
class DispatchError : public std::runtime_error {
 public:
  DispatchError(DispatchKind kind, std::vector<int> patchIds, const std::string& reason);

  DispatchKind kind() const { return kind_; }
  const std::vector<int>& patchIds() const { return patchIds_; }

 private:
  DispatchKind kind_;
  std::vector<int> patchIds_;
};

/// One traversal over `tasks`.
///
/// Urgent tasks run inline at once. Enclave tasks go to `buffer`; whenever it
/// holds `threshold` tasks they are handed to `batchExecutor` as one batch.
/// After the traversal every leftover enclave task runs on its own through
/// `inlineExecutor`. Returns every dispatch in order.
DispatchTrace traverse_and_dispatch(std::span<const PatchTask> tasks, EnclaveBuffer& buffer,
                                    const InlineExecutor& inlineExecutor, const BatchExecutor& batchExecutor);

}  // namespace fvk::scheduler
