#include "csv_out.hpp"

#include <cstdio>
#include <stdexcept>

namespace spindec::cli {

std::uint64_t fnv1a_hash(const std::string& data) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

CsvWriter::CsvWriter(const std::string& path, const std::string& command,
                     std::uint64_t config_hash, std::uint64_t seed)
    : out_(path), path_(path) {
  if (!out_) throw std::runtime_error("cannot open output file: " + path);
  char hash_buf[24];
  std::snprintf(hash_buf, sizeof(hash_buf), "%016llx",
                static_cast<unsigned long long>(config_hash));
  out_ << "# spindec " << kToolVersion << "\n";
  out_ << "# command = " << command << "\n";
  out_ << "# config_hash = " << hash_buf << "\n";
  out_ << "# seed = " << seed << "\n";
}

void CsvWriter::comment(const std::string& key, const std::string& value) {
  if (header_written_)
    throw std::logic_error("CsvWriter: metadata must precede the header");
  out_ << "# " << key << " = " << value << "\n";
}

void CsvWriter::header(const std::vector<std::string>& columns) {
  for (size_t i = 0; i < columns.size(); ++i)
    out_ << columns[i] << (i + 1 < columns.size() ? "," : "\n");
  header_written_ = true;
}

void CsvWriter::row(const std::vector<double>& values) {
  for (size_t i = 0; i < values.size(); ++i)
    out_ << format_number(values[i]) << (i + 1 < values.size() ? "," : "\n");
}

void CsvWriter::raw_row(const std::string& line) { out_ << line << "\n"; }

void CsvWriter::close() {
  out_.close();
  if (!out_) throw std::runtime_error("write failed for " + path_);
}

}  // namespace spindec::cli
