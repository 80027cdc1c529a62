#include "cellscope/csv.hpp"

#include "cellscope/errors.hpp"

namespace cellscope {

std::optional<CsvRow> CsvReader::next() {
  std::string raw;
  if (!std::getline(in_, raw)) return std::nullopt;
  ++line_;

  CsvRow row;
  row.line = line_;
  std::string field;
  bool quoted = false;
  std::size_t i = 0;
  for (;;) {
    if (i >= raw.size()) {
      if (quoted) {
        // quoted field continues on the next physical line
        std::string cont;
        if (!std::getline(in_, cont)) {
          throw DataError("unterminated quoted field at line " + std::to_string(row.line));
        }
        ++line_;
        raw += '\n';
        raw += cont;
        continue;
      }
      break;
    }
    char c = raw[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < raw.size() && raw[i + 1] == '"') {
          field += '"';
          i += 2;
        } else {
          quoted = false;
          ++i;
        }
      } else {
        field += c;
        ++i;
      }
    } else if (c == '"' && field.empty()) {
      quoted = true;
      ++i;
    } else if (c == ',') {
      row.fields.push_back(std::move(field));
      field.clear();
      ++i;
    } else if (c == '\r' && i + 1 == raw.size()) {
      ++i;
    } else {
      field += c;
      ++i;
    }
  }
  row.fields.push_back(std::move(field));
  return row;
}

std::string csv_field(std::string_view s) {
  bool needs_quote = s.find_first_of(",\"\n\r") != std::string_view::npos;
  if (!needs_quote) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += '"';
  return out;
}

}  // namespace cellscope
