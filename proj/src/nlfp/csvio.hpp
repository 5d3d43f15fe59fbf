#pragma once

#include <string>
#include <vector>

namespace nlfp {

// CSV cells: '.' decimal separator, scientific notation with 17 significant
// digits for reals.  Files begin with a header row.
std::string csv_format(double v);
std::string csv_format(int v);

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

  void add_row(std::vector<std::string> cells);
  std::size_t rows() const { return rows_.size(); }
  const std::vector<std::string>& header() const { return header_; }

  void write(const std::string& path) const;
  std::string to_string() const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

}  // namespace nlfp
