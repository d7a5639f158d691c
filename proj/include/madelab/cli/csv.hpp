#pragma once

#include <string>
#include <vector>

namespace madelab::cli {

/// Shortest round-trip form capped at 17 significant digits, '.' decimal
/// point regardless of locale.
std::string format_number(double v);

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}
  void add_row(const std::vector<double>& row);
  const std::vector<std::string>& header() const { return header_; }
  const std::vector<std::vector<double>>& rows() const { return rows_; }
  std::string str() const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<double>> rows_;
};

/// Writes via a temporary file and rename.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace madelab::cli
