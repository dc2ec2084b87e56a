#include "fvk/kernel/variant.hpp"

namespace fvk::kernel {

std::string_view to_string(Ordering ordering) {
  return ordering == Ordering::PatchWise ? "patchwise" : "batched";
}

Ordering parse_ordering(std::string_view text) {
  if (text == "patchwise") return Ordering::PatchWise;
  if (text == "batched") return Ordering::Batched;
  throw std::invalid_argument("unknown kernel ordering '" + std::string(text) + "'");
}

std::string KernelVariant::label() const {
  std::string out(to_string(ordering));
  out += '/';
  out += to_string(layout);
  out += '/';
  out += itspace::to_string(strategy.kind);
  return out;
}

namespace {

std::string describe(int patch, const VolumeIndex& volume, const std::string& reason) {
  return "patch " + std::to_string(patch) + ", volume (" + std::to_string(volume[0]) + "," +
         std::to_string(volume[1]) + "," + std::to_string(volume[2]) + "): " + reason;
}

}  // namespace

KernelError::KernelError(int patch, const VolumeIndex& volume, const std::string& reason)
    : std::runtime_error(describe(patch, volume, reason)), patch_(patch), volume_(volume) {}

}  // namespace fvk::kernel
