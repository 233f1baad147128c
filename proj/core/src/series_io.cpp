#include "spindec/series_io.hpp"

#include <cstring>
#include <fstream>
#include <stdexcept>

namespace spindec {

namespace {
constexpr char kMagic[4] = {'S', 'D', 'T', 'S'};
constexpr std::uint32_t kVersion = 1;
}  // namespace

void write_time_series(const std::string& path, const TimeSeries& ts) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_time_series: cannot open " + path);
  out.write(kMagic, 4);
  out.write(reinterpret_cast<const char*>(&kVersion), sizeof(kVersion));
  out.write(reinterpret_cast<const char*>(&ts.dt), sizeof(ts.dt));
  const std::uint64_t n = ts.samples.size();
  out.write(reinterpret_cast<const char*>(&n), sizeof(n));
  for (const auto& s : ts.samples) {
    const double v[3] = {s.x(), s.y(), s.z()};
    out.write(reinterpret_cast<const char*>(v), sizeof(v));
  }
  if (!out) throw std::runtime_error("write_time_series: write failed for " + path);
}

TimeSeries read_time_series(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("read_time_series: cannot open " + path);
  char magic[4];
  std::uint32_t version = 0;
  in.read(magic, 4);
  in.read(reinterpret_cast<char*>(&version), sizeof(version));
  if (!in || std::memcmp(magic, kMagic, 4) != 0 || version != kVersion)
    throw std::runtime_error("read_time_series: bad header in " + path);
  TimeSeries ts;
  std::uint64_t n = 0;
  in.read(reinterpret_cast<char*>(&ts.dt), sizeof(ts.dt));
  in.read(reinterpret_cast<char*>(&n), sizeof(n));
  ts.samples.resize(n);
  for (auto& s : ts.samples) {
    double v[3];
    in.read(reinterpret_cast<char*>(v), sizeof(v));
    s = {v[0], v[1], v[2]};
  }
  if (!in) throw std::runtime_error("read_time_series: truncated file " + path);
  return ts;
}

}  // namespace spindec
