#pragma once

#include <string>

namespace anovabf {

/// Shortest decimal text that parses back to exactly the same double.
/// Used for machine-readable output (CSV) and canonical summary strings.
std::string format_shortest(double value);

/// printf "%.{sig}g" formatting for human-readable output.
std::string format_sig(double value, int significant_digits);

}  // namespace anovabf
