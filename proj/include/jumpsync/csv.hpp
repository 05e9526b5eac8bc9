#pragma once

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>

namespace jumpsync {

// All floating output uses 9 significant digits.
inline std::string fmt9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

// Minimal comma-separated writer: header once, then value rows.
class CsvWriter {
 public:
  explicit CsvWriter(const std::string& path) : path_(path), out_(path) {
    if (!out_) throw std::invalid_argument("cannot open output file: " + path);
  }

  void header(const std::string& line) { out_ << line << "\n"; }

  CsvWriter& field(const std::string& s) {
    if (!first_) out_ << ",";
    out_ << s;
    first_ = false;
    return *this;
  }
  CsvWriter& field(double v) { return field(fmt9(v)); }
  CsvWriter& field(std::uint64_t v) { return field(std::to_string(v)); }
  void end_row() {
    out_ << "\n";
    first_ = true;
  }

  // Flush to disk; required before hashing the file for a manifest.
  void close() { out_.close(); }

  const std::string& path() const { return path_; }

 private:
  std::string path_;
  std::ofstream out_;
  bool first_ = true;
};

}  // namespace jumpsync
