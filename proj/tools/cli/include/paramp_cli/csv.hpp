#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace paramp::cli {

/// 17 significant digits, so a round trip through text is exact.
std::string format_number(double x);

/// RFC-4180 quoting: fields containing a comma, quote or newline are quoted
/// and embedded quotes doubled.
std::string quote_field(std::string_view field);

/// One CSV row in construction. Cells are appended in column order.
class CsvRow {
 public:
  CsvRow& add(double x);
  CsvRow& add(std::uint64_t x);
  CsvRow& add(std::string_view s);
  CsvRow& add(const char* s) { return add(std::string_view(s)); }
  CsvRow& add(bool b);
  CsvRow& add(const std::optional<double>& x);
  CsvRow& empty();

  void write(std::ostream& os) const;

 private:
  std::vector<std::string> cells_;
};

void write_header(std::ostream& os, const std::vector<std::string_view>& columns);

}  // namespace paramp::cli
