#include "paramp_cli/csv.hpp"

#include <cmath>
#include <cstdio>

namespace paramp::cli {

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string quote_field(std::string_view field) {
  if (field.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

CsvRow& CsvRow::add(double x) {
  cells_.push_back(format_number(x));
  return *this;
}

CsvRow& CsvRow::add(std::uint64_t x) {
  cells_.push_back(std::to_string(x));
  return *this;
}

CsvRow& CsvRow::add(std::string_view s) {
  cells_.push_back(quote_field(s));
  return *this;
}

CsvRow& CsvRow::add(bool b) {
  cells_.emplace_back(b ? "true" : "false");
  return *this;
}

CsvRow& CsvRow::add(const std::optional<double>& x) {
  return x ? add(*x) : empty();
}

CsvRow& CsvRow::empty() {
  cells_.emplace_back();
  return *this;
}

void CsvRow::write(std::ostream& os) const {
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    if (i) os << ',';
    os << cells_[i];
  }
  os << '\n';
}

void write_header(std::ostream& os, const std::vector<std::string_view>& columns) {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i) os << ',';
    os << columns[i];
  }
  os << '\n';
}

}  // namespace paramp::cli
