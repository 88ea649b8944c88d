#include "dsc/table.hpp"

#include <charconv>
#include <cmath>

#include "dsc/error.hpp"

namespace dsc {

TableFormat parse_table_format(const std::string& name) {
  if (name == "csv") return TableFormat::Csv;
  if (name == "json") return TableFormat::Json;
  throw ParameterError("unknown output format '" + name + "'");
}

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (value == 0.0) return "0";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
  std::string s(buf, res.ptr);
  // to_chars keeps trailing zeros in the mantissa for fixed precision.
  const auto e = s.find('e');
  std::string mant = s.substr(0, e);
  const std::string exp = e == std::string::npos ? "" : s.substr(e);
  if (mant.find('.') != std::string::npos) {
    while (mant.back() == '0') mant.pop_back();
    if (mant.back() == '.') mant.pop_back();
  }
  return mant + exp;
}

OutputTable::OutputTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}

void OutputTable::add_row(std::vector<Cell> row) {
  if (row.size() != columns_.size())
    throw ArgumentError("row has " + std::to_string(row.size()) + " cells, expected " +
                        std::to_string(columns_.size()));
  rows_.push_back(std::move(row));
}

namespace {

void csv_field(std::ostream& out, const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) {
    out << s;
    return;
  }
  out << '"';
  for (char c : s) {
    if (c == '"') out << '"';
    out << c;
  }
  out << '"';
}

void json_string(std::ostream& out, const std::string& s) {
  out << '"';
  for (char c : s) {
    switch (c) {
      case '"': out << "\\\""; break;
      case '\\': out << "\\\\"; break;
      case '\n': out << "\\n"; break;
      case '\r': out << "\\r"; break;
      case '\t': out << "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out << buf;
        } else {
          out << c;
        }
    }
  }
  out << '"';
}

}  // namespace

void OutputTable::write_csv(std::ostream& out) const {
  for (std::size_t c = 0; c < columns_.size(); ++c) {
    if (c) out << ',';
    csv_field(out, columns_[c]);
  }
  out << "\n";
  for (const auto& row : rows_) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out << ',';
      if (const auto* d = std::get_if<double>(&row[c])) out << format_number(*d);
      else csv_field(out, std::get<std::string>(row[c]));
    }
    out << "\n";
  }
}

void OutputTable::write_json(std::ostream& out) const {
  out << '[';
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    out << (r ? ",\n  {" : "\n  {");
    for (std::size_t c = 0; c < columns_.size(); ++c) {
      if (c) out << ", ";
      json_string(out, columns_[c]);
      out << ": ";
      const auto& cell = rows_[r][c];
      if (const auto* d = std::get_if<double>(&cell)) {
        if (std::isfinite(*d)) out << format_number(*d);
        else out << "null";
      } else {
        json_string(out, std::get<std::string>(cell));
      }
    }
    out << '}';
  }
  out << (rows_.empty() ? "]\n" : "\n]\n");
}

void OutputTable::write(std::ostream& out, TableFormat format) const {
  if (format == TableFormat::Csv) write_csv(out);
  else write_json(out);
}

}  // namespace dsc
