#include "anovabf/format.hpp"

#include <charconv>
#include <cstdio>

namespace anovabf {

std::string format_shortest(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  (void)ec;  // 64 bytes always suffice for a double
  return std::string(buf, ptr);
}

std::string format_sig(double value, int significant_digits) {
  if (significant_digits < 1) significant_digits = 1;
  if (significant_digits > 17) significant_digits = 17;
  char buf[64];
  const int len = std::snprintf(buf, sizeof(buf), "%.*g", significant_digits, value);
  return std::string(buf, buf + (len > 0 ? len : 0));
}

}  // namespace anovabf
