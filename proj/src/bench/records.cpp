#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <tuple>

#include "fvk/bench/benchmark.hpp"

namespace fvk::bench {

namespace {

std::string real(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.16e", value);
  return buffer;
}

std::ofstream open_for_writing(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  return out;
}

}  // namespace

void write_csv(std::ostream& out, const std::vector<BenchRecord>& records) {
  out << kCsvHeader << '\n';
  for (const BenchRecord& r : records) {
    out << r.variant << ',' << r.layout << ',' << r.strategy << ',' << r.nPatches << ',' << real(r.wallTime) << ','
        << real(r.timePerVolumeUpdate) << ',' << real(r.checksum) << '\n';
  }
}

void emit_csv(const std::vector<BenchRecord>& records, const std::filesystem::path& path) {
  if (records.empty()) throw std::invalid_argument("emit_csv: no records");
  auto out = open_for_writing(path);
  write_csv(out, records);
  if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

std::vector<BenchRecord> parse_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) throw std::runtime_error("parse_csv: unexpected header");
  std::vector<BenchRecord> records;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream row(line);
    for (std::string field; std::getline(row, field, ',');) fields.push_back(field);
    if (fields.size() != 7) throw std::runtime_error("parse_csv: malformed row '" + line + "'");
    BenchRecord r;
    r.variant = fields[0];
    r.layout = fields[1];
    r.strategy = fields[2];
    r.nPatches = std::stoi(fields[3]);
    r.wallTime = std::stod(fields[4]);
    r.timePerVolumeUpdate = std::stod(fields[5]);
    r.checksum = std::stod(fields[6]);
    records.push_back(std::move(r));
  }
  return records;
}

std::vector<BenchRecord> parse_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "' for reading");
  return parse_csv(in);
}

namespace {

using SeriesKey = std::tuple<std::string, std::string, std::string>;

std::map<SeriesKey, std::vector<const BenchRecord*>> series_of(const std::vector<BenchRecord>& records) {
  std::map<SeriesKey, std::vector<const BenchRecord*>> series;
  for (const BenchRecord& r : records) series[{r.variant, r.layout, r.strategy}].push_back(&r);
  for (auto& [key, points] : series) {
    std::stable_sort(points.begin(), points.end(),
                     [](const BenchRecord* a, const BenchRecord* b) { return a->nPatches < b->nPatches; });
  }
  return series;
}

}  // namespace

std::vector<std::filesystem::path> emit_plotdata(const std::vector<BenchRecord>& records,
                                                 const std::filesystem::path& dir) {
  if (records.empty()) throw std::invalid_argument("emit_plotdata: no records");
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create '" + dir.string() + "': " + ec.message());

  std::vector<std::filesystem::path> written;
  for (const auto& [key, points] : series_of(records)) {
    const auto& [variant, layout, strategy] = key;
    const auto path = dir / (variant + "_" + layout + "_" + strategy + ".dat");
    auto out = open_for_writing(path);
    out << "# n_patches time_per_volume_update_s\n";
    for (const BenchRecord* r : points) out << r->nPatches << ' ' << real(r->timePerVolumeUpdate) << '\n';
    if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
    written.push_back(path);
  }
  return written;
}

double monotonicity_inversion_rate(const std::vector<BenchRecord>& records) {
  std::size_t pairs = 0;
  std::size_t inversions = 0;
  for (const auto& [key, points] : series_of(records)) {
    for (std::size_t i = 1; i < points.size(); ++i) {
      ++pairs;
      if (points[i]->wallTime < points[i - 1]->wallTime) ++inversions;
    }
  }
  return pairs == 0 ? 0.0 : static_cast<double>(inversions) / static_cast<double>(pairs);
}

}  // namespace fvk::bench
