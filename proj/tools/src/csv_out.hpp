#pragma once

// CSV emission with a fixed metadata comment block: tool version, config
// hash, seed, command.  Numeric formatting is locale-free and fixed-width so
// identical runs produce byte-identical files.

#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

namespace spindec::cli {

inline constexpr const char* kToolVersion = "0.1.0";

std::uint64_t fnv1a_hash(const std::string& data);

std::string format_number(double v);

class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::string& command,
            std::uint64_t config_hash, std::uint64_t seed);

  /// Extra "# key = value" metadata lines (before the header).
  void comment(const std::string& key, const std::string& value);
  void header(const std::vector<std::string>& columns);
  void row(const std::vector<double>& values);
  void raw_row(const std::string& line);
  void close();

 private:
  std::ofstream out_;
  std::string path_;
  bool header_written_ = false;
};

}  // namespace spindec::cli
