#include "fvk/mesh/serialization.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <fstream>
#include <stdexcept>

namespace fvk {

namespace {

void put_word(std::ostream& out, std::uint64_t word) {
  std::array<char, 8> bytes{};
  for (int i = 0; i < 8; ++i) bytes[i] = static_cast<char>((word >> (8 * i)) & 0xffu);
  out.write(bytes.data(), bytes.size());
}

std::uint64_t get_word(std::istream& in) {
  std::array<unsigned char, 8> bytes{};
  in.read(reinterpret_cast<char*>(bytes.data()), bytes.size());
  if (!in) throw std::runtime_error("read_batch: truncated input");
  std::uint64_t word = 0;
  for (int i = 0; i < 8; ++i) word |= static_cast<std::uint64_t>(bytes[i]) << (8 * i);
  return word;
}

void put_real(std::ostream& out, double value) { put_word(out, std::bit_cast<std::uint64_t>(value)); }
double get_real(std::istream& in) { return std::bit_cast<double>(get_word(in)); }

}  // namespace

void write_batch(std::ostream& out, const PatchBatch& batch) {
  const PatchSpec& spec = batch.spec();
  put_word(out, static_cast<std::uint64_t>(spec.dimensions));
  put_word(out, static_cast<std::uint64_t>(spec.volumesPerAxis));
  put_word(out, static_cast<std::uint64_t>(spec.unknowns));
  put_word(out, static_cast<std::uint64_t>(batch.numberOfCells()));
  for (double v : batch.qInData()) put_real(out, v);
  for (double v : batch.qOutData()) put_real(out, v);
  for (int i = 0; i < batch.numberOfCells(); ++i) {
    for (int a = 0; a < spec.dimensions; ++a) put_real(out, batch.cellCentre(i)[a]);
  }
  for (int i = 0; i < batch.numberOfCells(); ++i) {
    for (int a = 0; a < spec.dimensions; ++a) put_real(out, batch.cellSize(i)[a]);
  }
  for (int i = 0; i < batch.numberOfCells(); ++i) put_real(out, batch.t(i));
  for (int i = 0; i < batch.numberOfCells(); ++i) put_real(out, batch.dt(i));
  for (int i = 0; i < batch.numberOfCells(); ++i) put_real(out, batch.maxEigenvalue(i));
}

PatchBatch read_batch(std::istream& in) {
  PatchSpec spec;
  spec.dimensions = static_cast<int>(get_word(in));
  spec.volumesPerAxis = static_cast<int>(get_word(in));
  spec.unknowns = static_cast<int>(get_word(in));
  const auto n = static_cast<std::int64_t>(get_word(in));
  if (n < 0 || n > (1 << 24)) throw std::runtime_error("read_batch: implausible patch count");

  PatchBatch batch(spec, static_cast<int>(n));
  for (double& v : batch.qInData()) v = get_real(in);
  for (double& v : batch.qOutData()) v = get_real(in);
  for (int i = 0; i < batch.numberOfCells(); ++i) {
    for (int a = 0; a < spec.dimensions; ++a) batch.cellCentre(i)[a] = get_real(in);
  }
  for (int i = 0; i < batch.numberOfCells(); ++i) {
    for (int a = 0; a < spec.dimensions; ++a) batch.cellSize(i)[a] = get_real(in);
  }
  for (int i = 0; i < batch.numberOfCells(); ++i) batch.t(i) = get_real(in);
  for (int i = 0; i < batch.numberOfCells(); ++i) batch.dt(i) = get_real(in);
  for (int i = 0; i < batch.numberOfCells(); ++i) batch.maxEigenvalue(i) = get_real(in);
  return batch;
}

void write_batch(const std::filesystem::path& path, const PatchBatch& batch) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  write_batch(out, batch);
  if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

PatchBatch read_batch(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "' for reading");
  return read_batch(in);
}

}  // namespace fvk
