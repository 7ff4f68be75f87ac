#pragma once

#include <span>

namespace anovabf {

struct FiveNumber {
  double min = 0.0;
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double max = 0.0;
};

/// Quantile of an ascending-sorted sample by linear interpolation between
/// the order statistics at position h = (m - 1) * p.
double quantile_sorted(std::span<const double> sorted, double p);

/// Min, quartiles and max of a sample. min/max are exact order statistics;
/// the quartiles and median interpolate linearly. Throws
/// std::invalid_argument on empty input.
FiveNumber five_number_summary(std::span<const double> values);

}  // namespace anovabf
