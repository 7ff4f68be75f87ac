#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace anovabf::detail {

std::string_view trim(std::string_view s);

/// Whole-cell numeric parses (decimal or scientific, C locale). Return
/// nullopt on any trailing garbage, sign-only input, or empty input.
std::optional<double> parse_double_cell(std::string_view s);
std::optional<long long> parse_int_cell(std::string_view s);

/// ASCII lowercase copy.
std::string to_lower(std::string_view s);

}  // namespace anovabf::detail
