#pragma once

// Tabular results with CSV and JSON serialization.

#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace dsc {

enum class TableFormat { Csv, Json };

TableFormat parse_table_format(const std::string& name);

/// Shortest decimal text with 17 significant digits ("nan", "inf" and
/// "-inf" for non-finite values).
std::string format_number(double value);

class OutputTable {
 public:
  using Cell = std::variant<double, std::string>;

  explicit OutputTable(std::vector<std::string> columns);

  const std::vector<std::string>& columns() const { return columns_; }
  const std::vector<std::vector<Cell>>& rows() const { return rows_; }
  std::size_t size() const { return rows_.size(); }

  /// Throws ArgumentError when the row width differs from the header.
  void add_row(std::vector<Cell> row);

  /// Header line plus one line per row, RFC 4180 quoting where needed.
  void write_csv(std::ostream& out) const;
  /// Array of records; non-finite numbers become null.
  void write_json(std::ostream& out) const;
  void write(std::ostream& out, TableFormat format) const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<Cell>> rows_;
};

}  // namespace dsc
