#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "anovabf/bayes_factor.hpp"

namespace anovabf {

/// Screening warnings attached to parsed records. Serialized under the
/// stable codes returned by to_string().
enum class Warning {
  PFMismatch,  ///< reported p disagrees with the p implied by F(df1, df2)
  NMissing,    ///< no n given; Bayes factor computation needs an explicit n
  NLtDfBound,  ///< n <= df2, so n cannot be the independent-observation count
};

/// "P_F_MISMATCH", "N_MISSING", "N_LT_DF_BOUND".
const char* to_string(Warning warning);

/// Parses the minimal published ANOVA notation:
///
///   F ( <int> , <int> ) = <real> [, p <rel> <real>] [, n = <int>]
///
/// where <rel> is '=', '<' or '>'. Whitespace between tokens is ignored;
/// the p and n clauses may appear in either order, each at most once, and
/// 'N' is accepted for 'n'. p values may be written with or without the
/// leading zero ("p=.20" or "p=0.20"); a unicode minus sign is not a valid
/// byte here and is rejected like any other grammar violation.
///
/// Grammar violations throw parse_error with the 1-based byte offset and
/// the expected token. Values that parse but violate field constraints
/// (negative F, zero df, n < 2, p outside (0,1)) throw std::invalid_argument.
AnovaSummary parse_summary(std::string_view text);

/// Canonical text form, e.g. "F(1,17)=1.75, p=0.2, n=18". Reparsing the
/// result yields an identical record (labels have no place in this notation
/// and are not emitted).
std::string format_summary(const AnovaSummary& summary);

/// Recomputes the p value implied by F(df1, df2) and compares it with the
/// reported one. Returns Warning::PFMismatch when they disagree beyond
/// `tolerance` (default 0.02: papers round to two decimals), respecting a
/// '<' or '>' relation on the reported value. No-op without a reported p.
std::optional<Warning> check_p_consistency(const AnovaSummary& summary,
                                           double tolerance = 0.02);

/// All screening warnings for a record: N_MISSING, N_LT_DF_BOUND (the error
/// df of an ANOVA on n independent observations is at most n - 1, so n <= df2
/// means n is not the observation count), and P_F_MISMATCH.
std::vector<Warning> collect_warnings(const AnovaSummary& summary,
                                      double p_tolerance = 0.02);

/// One successfully parsed batch row.
struct SummaryRecord {
  AnovaSummary summary;
  std::size_t source_line = 1;  ///< 1-based line in the input (header is line 1)
  std::vector<Warning> warnings;
};

/// One rejected batch row. Rows are all-or-nothing: a row either yields a
/// SummaryRecord or lands here; nothing is silently skipped.
struct RowError {
  std::size_t line = 0;
  std::string column;  ///< offending column name, empty if row-level
  std::string message;
};

struct BatchParseResult {
  std::vector<SummaryRecord> records;  ///< in input order
  std::vector<RowError> errors;
};

/// Reads a UTF-8 CSV with a header row. Required columns: f, df1, df2, n
/// (an empty n cell is allowed and yields N_MISSING); optional: label, p.
/// Header names are matched case-insensitively after trimming; unknown
/// columns are ignored. A missing or duplicated required column throws
/// schema_error naming the column.
BatchParseResult parse_batch_csv(std::istream& in);

}  // namespace anovabf
