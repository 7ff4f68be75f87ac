#include "anovabf/summary_parser.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "anovabf/csv.hpp"
#include "anovabf/errors.hpp"
#include "anovabf/format.hpp"
#include "anovabf/special_functions.hpp"
#include "anovabf/text_util.hpp"

namespace anovabf {

namespace detail {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

std::optional<double> parse_double_cell(std::string_view s) {
  s = trim(s);
  if (s.empty()) return std::nullopt;
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

std::optional<long long> parse_int_cell(std::string_view s) {
  s = trim(s);
  if (s.empty()) return std::nullopt;
  long long value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

std::string to_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

}  // namespace detail

const char* to_string(Warning warning) {
  switch (warning) {
    case Warning::PFMismatch: return "P_F_MISMATCH";
    case Warning::NMissing: return "N_MISSING";
    case Warning::NLtDfBound: return "N_LT_DF_BOUND";
  }
  return "UNKNOWN";
}

namespace {

// Cursor over the summary string. Error offsets are 1-based byte positions.
class Scanner {
 public:
  explicit Scanner(std::string_view text) : text_(text) {}

  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  bool at_end() const { return pos_ >= text_.size(); }

  char peek() const { return text_[pos_]; }

  bool try_consume(char c) {
    if (!at_end() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c, const char* token_name) {
    if (at_end() || text_[pos_] != c) fail(token_name);
    ++pos_;
  }

  int parse_uint(const char* token_name) {
    if (at_end() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      fail(token_name);
    }
    int value = 0;
    const auto [ptr, ec] =
        std::from_chars(text_.data() + pos_, text_.data() + text_.size(), value);
    if (ec == std::errc::result_out_of_range) {
      throw parse_error(offset(), token_name, describe("integer out of range"));
    }
    pos_ = static_cast<std::size_t>(ptr - text_.data());
    return value;
  }

  double parse_real(const char* token_name) {
    double value = 0.0;
    const auto [ptr, ec] =
        std::from_chars(text_.data() + pos_, text_.data() + text_.size(), value);
    if (ec == std::errc::result_out_of_range) {
      throw parse_error(offset(), token_name, describe("number out of range"));
    }
    if (ec != std::errc() || ptr == text_.data() + pos_) fail(token_name);
    pos_ = static_cast<std::size_t>(ptr - text_.data());
    return value;
  }

  [[noreturn]] void fail(const char* token_name) const {
    throw parse_error(offset(), token_name,
                      describe(std::string("expected ") + token_name));
  }

  std::size_t offset() const { return pos_ + 1; }

 private:
  std::string describe(const std::string& what) const {
    return "parse error at offset " + std::to_string(offset()) + ": " + what;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

AnovaSummary parse_summary(std::string_view text) {
  Scanner scan(text);
  AnovaSummary summary;

  scan.skip_ws();
  scan.expect('F', "'F'");
  scan.skip_ws();
  scan.expect('(', "'('");
  scan.skip_ws();
  summary.df1 = scan.parse_uint("df1 integer");
  scan.skip_ws();
  scan.expect(',', "','");
  scan.skip_ws();
  summary.df2 = scan.parse_uint("df2 integer");
  scan.skip_ws();
  scan.expect(')', "')'");
  scan.skip_ws();
  scan.expect('=', "'='");
  scan.skip_ws();
  summary.f_value = scan.parse_real("F value");

  bool saw_p = false;
  bool saw_n = false;
  scan.skip_ws();
  while (scan.try_consume(',')) {
    scan.skip_ws();
    if (scan.try_consume('p')) {
      if (saw_p) scan.fail("'n' clause (p given twice)");
      saw_p = true;
      scan.skip_ws();
      if (scan.try_consume('<')) {
        summary.p_relation = PRelation::Less;
      } else if (scan.try_consume('>')) {
        summary.p_relation = PRelation::Greater;
      } else {
        scan.expect('=', "'=', '<' or '>'");
        summary.p_relation = PRelation::Equal;
      }
      scan.skip_ws();
      summary.reported_p = scan.parse_real("p value");
    } else if (scan.try_consume('n') || scan.try_consume('N')) {
      if (saw_n) scan.fail("'p' clause (n given twice)");
      saw_n = true;
      scan.skip_ws();
      scan.expect('=', "'='");
      scan.skip_ws();
      summary.n = scan.parse_uint("n integer");
    } else {
      scan.fail("'p' or 'n'");
    }
    scan.skip_ws();
  }
  if (!scan.at_end()) scan.fail("end of input");

  summary.validate();
  return summary;
}

std::string format_summary(const AnovaSummary& summary) {
  std::string out = "F(" + std::to_string(summary.df1) + "," +
                    std::to_string(summary.df2) +
                    ")=" + format_shortest(summary.f_value);
  if (summary.reported_p) {
    const char rel = summary.p_relation == PRelation::Less    ? '<'
                     : summary.p_relation == PRelation::Greater ? '>'
                                                                : '=';
    out += ", p";
    out += rel;
    out += format_shortest(*summary.reported_p);
  }
  if (summary.n) {
    out += ", n=" + std::to_string(*summary.n);
  }
  return out;
}

std::optional<Warning> check_p_consistency(const AnovaSummary& summary,
                                           double tolerance) {
  if (!summary.reported_p) return std::nullopt;

  const double implied =
      f_tail_probability(summary.f_value, summary.df1, summary.df2);
  const double reported = *summary.reported_p;

  bool mismatch = false;
  switch (summary.p_relation) {
    case PRelation::Equal:
      mismatch = std::fabs(implied - reported) > tolerance;
      break;
    case PRelation::Less:
      mismatch = implied > reported + tolerance;
      break;
    case PRelation::Greater:
      mismatch = implied < reported - tolerance;
      break;
  }
  if (mismatch) return Warning::PFMismatch;
  return std::nullopt;
}

std::vector<Warning> collect_warnings(const AnovaSummary& summary,
                                      double p_tolerance) {
  std::vector<Warning> warnings;
  if (!summary.n) {
    warnings.push_back(Warning::NMissing);
  } else if (*summary.n <= summary.df2) {
    warnings.push_back(Warning::NLtDfBound);
  }
  if (const auto w = check_p_consistency(summary, p_tolerance)) {
    warnings.push_back(*w);
  }
  return warnings;
}

namespace {

struct ColumnIndex {
  int f = -1;
  int df1 = -1;
  int df2 = -1;
  int n = -1;
  int label = -1;
  int p = -1;
  std::size_t width = 0;
};

ColumnIndex resolve_header(const CsvRow& header) {
  ColumnIndex cols;
  cols.width = header.fields.size();

  const auto assign = [&](int& slot, const std::string& name, int idx) {
    if (slot >= 0) {
      throw schema_error(name, "duplicate column '" + name + "'");
    }
    slot = idx;
  };

  for (std::size_t i = 0; i < header.fields.size(); ++i) {
    const std::string name =
        detail::to_lower(detail::trim(header.fields[i]));
    const int idx = static_cast<int>(i);
    if (name == "f") assign(cols.f, name, idx);
    else if (name == "df1") assign(cols.df1, name, idx);
    else if (name == "df2") assign(cols.df2, name, idx);
    else if (name == "n") assign(cols.n, name, idx);
    else if (name == "label") assign(cols.label, name, idx);
    else if (name == "p") assign(cols.p, name, idx);
    // anything else: ignored
  }

  if (cols.f < 0) throw schema_error("f", "missing required column 'f'");
  if (cols.df1 < 0) throw schema_error("df1", "missing required column 'df1'");
  if (cols.df2 < 0) throw schema_error("df2", "missing required column 'df2'");
  if (cols.n < 0) throw schema_error("n", "missing required column 'n'");
  return cols;
}

// Thrown internally to carry the offending column out of a row parse.
struct CellFailure {
  std::string column;
  std::string message;
};

SummaryRecord parse_row(const CsvRow& row, const ColumnIndex& cols) {
  const auto cell = [&](int idx) -> std::string_view {
    return row.fields[static_cast<std::size_t>(idx)];
  };

  SummaryRecord record;
  record.source_line = row.line;
  AnovaSummary& s = record.summary;

  const auto f = detail::parse_double_cell(cell(cols.f));
  if (!f) throw CellFailure{"f", "not a number"};
  if (!std::isfinite(*f) || *f < 0.0) {
    throw CellFailure{"f", "F value must be finite and >= 0"};
  }
  s.f_value = *f;

  const auto read_df = [&](int idx, const char* name) {
    const auto v = detail::parse_int_cell(cell(idx));
    if (!v) throw CellFailure{name, "not an integer"};
    if (*v < 1 || *v > std::numeric_limits<int>::max()) {
      throw CellFailure{name, "degrees of freedom must be a positive integer"};
    }
    return static_cast<int>(*v);
  };
  s.df1 = read_df(cols.df1, "df1");
  s.df2 = read_df(cols.df2, "df2");

  if (!detail::trim(cell(cols.n)).empty()) {
    const auto v = detail::parse_int_cell(cell(cols.n));
    if (!v) throw CellFailure{"n", "not an integer"};
    if (*v < 2 || *v > std::numeric_limits<int>::max()) {
      throw CellFailure{"n", "n must be an integer >= 2"};
    }
    s.n = static_cast<int>(*v);
  }

  if (cols.label >= 0) {
    const auto text = detail::trim(cell(cols.label));
    if (!text.empty()) s.label = std::string(text);
  }

  if (cols.p >= 0) {
    std::string_view text = detail::trim(cell(cols.p));
    if (!text.empty()) {
      if (text.front() == '<') {
        s.p_relation = PRelation::Less;
        text.remove_prefix(1);
      } else if (text.front() == '>') {
        s.p_relation = PRelation::Greater;
        text.remove_prefix(1);
      }
      const auto v = detail::parse_double_cell(text);
      if (!v) throw CellFailure{"p", "not a number"};
      if (!(*v > 0.0 && *v < 1.0)) {
        throw CellFailure{"p", "p must lie in (0, 1)"};
      }
      s.reported_p = *v;
    }
  }

  try {
    s.validate();
  } catch (const std::invalid_argument& e) {
    throw CellFailure{"", e.what()};
  }

  record.warnings = collect_warnings(s);
  return record;
}

}  // namespace

BatchParseResult parse_batch_csv(std::istream& in) {
  CsvReader reader(in);
  const auto header = reader.next();
  if (!header) throw schema_error("", "input has no header row");

  const ColumnIndex cols = resolve_header(*header);

  BatchParseResult result;
  while (const auto row = reader.next()) {
    if (row->fields.size() != cols.width) {
      result.errors.push_back(
          {row->line, "",
           "expected " + std::to_string(cols.width) + " fields, got " +
               std::to_string(row->fields.size())});
      continue;
    }
    try {
      result.records.push_back(parse_row(*row, cols));
    } catch (const CellFailure& failure) {
      result.errors.push_back({row->line, failure.column, failure.message});
    }
  }
  return result;
}

}  // namespace anovabf
