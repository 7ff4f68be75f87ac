#include "anovabf/quantiles.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace anovabf {

double quantile_sorted(std::span<const double> sorted, double p) {
  if (sorted.empty()) {
    throw std::invalid_argument("quantile_sorted: empty sample");
  }
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("quantile_sorted: p must lie in [0, 1]");
  }
  const double h = static_cast<double>(sorted.size() - 1) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  if (lo + 1 >= sorted.size()) return sorted[sorted.size() - 1];
  const double frac = h - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

FiveNumber five_number_summary(std::span<const double> values) {
  if (values.empty()) {
    throw std::invalid_argument("five_number_summary: empty sample");
  }
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());

  FiveNumber out;
  out.min = sorted.front();
  out.q1 = quantile_sorted(sorted, 0.25);
  out.median = quantile_sorted(sorted, 0.5);
  out.q3 = quantile_sorted(sorted, 0.75);
  out.max = sorted.back();
  return out;
}

}  // namespace anovabf
