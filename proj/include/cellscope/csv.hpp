#pragma once

#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cellscope {

struct CsvRow {
  std::vector<std::string> fields;
  std::size_t line = 0;  // 1-based line number of the row start
};

/// Minimal RFC-4180-ish reader: comma separated, double-quote quoting
/// with "" escapes, tolerant of CRLF. Quoted fields may span lines.
class CsvReader {
 public:
  explicit CsvReader(std::istream& in) : in_(in) {}
  std::optional<CsvRow> next();

 private:
  std::istream& in_;
  std::size_t line_ = 0;
};

/// Quotes a field if it contains commas, quotes or newlines.
std::string csv_field(std::string_view s);

}  // namespace cellscope
