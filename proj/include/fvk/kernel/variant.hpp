#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "fvk/itspace/execution.hpp"
#include "fvk/mesh/layout.hpp"
#include "fvk/mesh/patch_spec.hpp"

namespace fvk::kernel {

/// PatchWise: the patch loop is outermost and each patch runs every step
/// before the next patch starts. Batched: each step runs over all patches
/// before the next step starts.
enum class Ordering { PatchWise, Batched };

std::string_view to_string(Ordering ordering);
/// Accepts "patchwise" and "batched". Throws std::invalid_argument.
Ordering parse_ordering(std::string_view text);

struct KernelVariant {
  Ordering ordering = Ordering::Batched;
  Layout layout = Layout::AoS;
  itspace::ExecutionStrategy strategy{};

  /// e.g. "batched/soa/par"
  std::string label() const;
};

/// A kernel step hit a state the PDE rejects. Carries the patch and the
/// haloed volume coordinate (interior starts at 1 on active axes).
class KernelError : public std::runtime_error {
 public:
  KernelError(int patch, const VolumeIndex& volume, const std::string& reason);

  int patch() const { return patch_; }
  const VolumeIndex& volume() const { return volume_; }

 private:
  int patch_;
  VolumeIndex volume_;
};

}  // namespace fvk::kernel
