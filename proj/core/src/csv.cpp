#include "anovabf/csv.hpp"

namespace anovabf {

std::optional<CsvRow> CsvReader::next() {
  std::string raw;
  while (true) {
    if (!std::getline(in_, raw)) return std::nullopt;
    ++line_;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    if (!raw.empty()) break;
  }

  CsvRow row;
  row.line = line_;
  std::string field;
  bool quoted = false;

  std::size_t i = 0;
  while (true) {
    if (i >= raw.size()) {
      if (quoted) {
        // Quoted field continues across a newline; pull the next line in.
        std::string more;
        if (!std::getline(in_, more)) break;  // unterminated quote: take as-is
        ++line_;
        if (!more.empty() && more.back() == '\r') more.pop_back();
        field.push_back('\n');
        raw = std::move(more);
        i = 0;
        continue;
      }
      break;
    }
    const char c = raw[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < raw.size() && raw[i + 1] == '"') {
          field.push_back('"');
          i += 2;
        } else {
          quoted = false;
          ++i;
        }
      } else {
        field.push_back(c);
        ++i;
      }
    } else if (c == '"' && field.empty()) {
      quoted = true;
      ++i;
    } else if (c == ',') {
      row.fields.push_back(std::move(field));
      field.clear();
      ++i;
    } else {
      field.push_back(c);
      ++i;
    }
  }
  row.fields.push_back(std::move(field));
  return row;
}

std::string csv_escape(std::string_view field) {
  const bool needs_quotes =
      field.find_first_of(",\"\n\r") != std::string_view::npos;
  if (!needs_quotes) return std::string(field);

  std::string out;
  out.reserve(field.size() + 2);
  out.push_back('"');
  for (const char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace anovabf
