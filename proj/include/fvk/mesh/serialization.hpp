#pragma once

#include <filesystem>
#include <iosfwd>

#include "fvk/mesh/patch_batch.hpp"

namespace fvk {

// Flat binary dump of a batch, used for test fixtures.
//
// Layout: four little-endian 64-bit signed integers (d, p, s, N) followed by
// little-endian IEEE-754 doubles in this order: QIn, QOut, cellCentre (d per
// patch), cellSize (d per patch), t, dt, maxEigenvalue.

void write_batch(std::ostream& out, const PatchBatch& batch);
PatchBatch read_batch(std::istream& in);

void write_batch(const std::filesystem::path& path, const PatchBatch& batch);
PatchBatch read_batch(const std::filesystem::path& path);

}  // namespace fvk
