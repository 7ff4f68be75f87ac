#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace anovabf {

/// One CSV record plus the 1-based line number where it started.
struct CsvRow {
  std::vector<std::string> fields;
  std::size_t line = 0;
};

/// Minimal RFC 4180 reader: comma-separated, double-quoted fields with ""
/// escapes, LF or CRLF line endings. Blank lines are skipped.
class CsvReader {
 public:
  explicit CsvReader(std::istream& in) : in_(in) {}

  /// Next record, or nullopt at end of input.
  std::optional<CsvRow> next();

 private:
  std::istream& in_;
  std::size_t line_ = 0;
};

/// Quotes a field if it contains a comma, quote, or newline.
std::string csv_escape(std::string_view field);

}  // namespace anovabf
