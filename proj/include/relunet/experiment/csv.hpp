#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace relunet::experiment {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shortest "%.17g" rendering; round-trips every finite double.
std::string format_real(double x);

/// In-memory CSV: one header line, then rows in insertion order.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);

  void add_row(std::vector<std::string> cells);
  const std::vector<std::string>& header() const { return header_; }
  std::size_t rows() const { return rows_.size(); }
  std::string str() const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

/// Writes to a sibling temporary file, then renames it over `path`.
/// Throws IoError on failure.
void write_atomic(const std::string& path, const std::string& contents);

}  // namespace relunet::experiment
