#include "fvk/scheduler/enclave.hpp"

#include <exception>
#include <string>
#include <utility>

namespace fvk::scheduler {

std::vector<PatchTask> classify(const GridShape& gridShape, int dimensions, bool periodic,
                                const std::vector<bool>& amrFlags) {
  const int cells = grid_cells(gridShape);
  if (!amrFlags.empty() && static_cast<int>(amrFlags.size()) != cells) {
    throw std::invalid_argument("classify: one AMR flag per patch expected");
  }
  std::vector<PatchTask> tasks;
  tasks.reserve(static_cast<std::size_t>(cells));
  for (int id = 0; id < cells; ++id) {
    bool urgent = !amrFlags.empty() && amrFlags[static_cast<std::size_t>(id)];
    if (!periodic) {
      const auto position = grid_position(id, gridShape);
      for (int a = 0; a < dimensions; ++a) {
        urgent = urgent || position[a] == 0 || position[a] == gridShape[a] - 1;
      }
    }
    tasks.push_back({id, urgent ? Classification::Urgent : Classification::Enclave});
  }
  return tasks;
}

EnclaveBuffer::EnclaveBuffer(int threshold) : threshold_(threshold) {
  if (threshold < 1) throw std::invalid_argument("enclave threshold must be >= 1");
  pending_.reserve(static_cast<std::size_t>(threshold));
}

bool EnclaveBuffer::push(const PatchTask& task) {
  pending_.push_back(task);
  return static_cast<int>(pending_.size()) == threshold_;
}

std::vector<PatchTask> EnclaveBuffer::take() {
  std::vector<PatchTask> out;
  out.swap(pending_);
  pending_.reserve(static_cast<std::size_t>(threshold_));
  return out;
}

std::string_view to_string(DispatchKind kind) {
  switch (kind) {
    case DispatchKind::UrgentInline:
      return "urgent";
    case DispatchKind::EnclaveBatch:
      return "batch";
    case DispatchKind::EnclaveTrailing:
      return "trailing";
  }
  return "unknown";
}

std::size_t DispatchTrace::count(DispatchKind kind) const {
  std::size_t n = 0;
  for (const auto& e : events) n += e.kind == kind ? 1 : 0;
  return n;
}

std::size_t DispatchTrace::patchUpdates() const {
  std::size_t n = 0;
  for (const auto& e : events) n += e.patchIds.size();
  return n;
}

namespace {

std::string describe(DispatchKind kind, const std::vector<int>& ids, const std::string& reason) {
  std::string out = std::string(to_string(kind)) + " dispatch of patches [";
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(ids[i]);
  }
  return out + "] failed: " + reason;
}

std::vector<int> ids_of(std::span<const PatchTask> tasks) {
  std::vector<int> ids;
  ids.reserve(tasks.size());
  for (const auto& t : tasks) ids.push_back(t.patchId);
  return ids;
}

template <class Fn>
void guarded(DispatchKind kind, std::span<const PatchTask> tasks, Fn&& fn) {
  try {
    fn();
  } catch (const std::exception& e) {
    std::throw_with_nested(DispatchError(kind, ids_of(tasks), e.what()));
  }
}

}  // namespace

DispatchError::DispatchError(DispatchKind kind, std::vector<int> patchIds, const std::string& reason)
    : std::runtime_error(describe(kind, patchIds, reason)), kind_(kind), patchIds_(std::move(patchIds)) {}

DispatchTrace traverse_and_dispatch(std::span<const PatchTask> tasks, EnclaveBuffer& buffer,
                                    const InlineExecutor& inlineExecutor, const BatchExecutor& batchExecutor) {
  DispatchTrace trace;
  for (const PatchTask& task : tasks) {
    if (task.classification == Classification::Urgent) {
      guarded(DispatchKind::UrgentInline, std::span(&task, 1), [&] { inlineExecutor(task); });
      trace.events.push_back({DispatchKind::UrgentInline, {task.patchId}});
      continue;
    }
    if (buffer.push(task)) {
      const std::vector<PatchTask> batch = buffer.take();
      guarded(DispatchKind::EnclaveBatch, batch, [&] { batchExecutor(batch); });
      trace.events.push_back({DispatchKind::EnclaveBatch, ids_of(batch)});
    }
  }
  for (const PatchTask& task : buffer.take()) {
    guarded(DispatchKind::EnclaveTrailing, std::span(&task, 1), [&] { inlineExecutor(task); });
    trace.events.push_back({DispatchKind::EnclaveTrailing, {task.patchId}});
  }
  return trace;
}

}  // namespace fvk::scheduler
