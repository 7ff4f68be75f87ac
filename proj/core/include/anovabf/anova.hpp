#pragma once

#include <span>
#include <tuple>
#include <vector>

#include "anovabf/bayes_factor.hpp"

namespace anovabf {

/// Balanced factorial raw data: levels_a x levels_b cells of exactly cell_n
/// observations each, stored densely in (i, j, k) order. levels_b == 1 gives
/// a one-way design. Unbalanced layouts are rejected at construction.
class FactorialDataset {
 public:
  FactorialDataset(int levels_a, int levels_b, int cell_n,
                   std::vector<double> values);

  /// Builds a dataset from (a_level, b_level, value) rows, the CSV layout.
  /// Level codes may be arbitrary integers; they are ranked ascending.
  /// Throws std::invalid_argument when cells are unbalanced or cell_n < 2.
  static FactorialDataset from_rows(
      const std::vector<std::tuple<long long, long long, double>>& rows);

  int levels_a() const { return levels_a_; }
  int levels_b() const { return levels_b_; }
  int cell_n() const { return cell_n_; }
  int total_n() const { return levels_a_ * levels_b_ * cell_n_; }

  double operator()(int i, int j, int k) const {
    return values_[static_cast<std::size_t>((i * levels_b_ + j) * cell_n_ + k)];
  }

  std::span<const double> values() const { return values_; }

 private:
  int levels_a_;
  int levels_b_;
  int cell_n_;
  std::vector<double> values_;
};

enum class EffectId { A, B, AB };

/// "A", "B", "AB".
const char* to_string(EffectId effect);

struct EffectRow {
  EffectId effect;
  double ss = 0.0;
  int df = 0;
  double f = 0.0;
};

/// Classical fixed-effects decomposition of a balanced design. Only effects
/// with at least one degree of freedom appear (a one-way layout has a single
/// effect row).
struct AnovaTable {
  std::vector<EffectRow> effects;  ///< in A, B, AB order
  double ss_error = 0.0;
  int df_error = 0;
  double total_ss = 0.0;
  int n_total = 0;
  int cell_n = 0;

  /// nullptr when the effect is absent from this design.
  const EffectRow* find(EffectId effect) const;
};

/// Balanced-design sums of squares via marginal means, two-pass summation
/// (means first, then squared deviations). Throws degenerate_data_error when
/// the residual SS is zero, as no F ratio exists then.
AnovaTable two_way_anova(const FactorialDataset& data);

/// Which count plays the role of n in the Bayes factor formula. The right
/// choice is design-dependent, so it stays explicit everywhere.
struct NConvention {
  enum class Kind { TotalObservations, CellCount, Explicit };
  Kind kind = Kind::TotalObservations;
  int explicit_n = 0;

  static NConvention total_observations() { return {Kind::TotalObservations, 0}; }
  static NConvention cell_count() { return {Kind::CellCount, 0}; }
  static NConvention explicit_n_of(int n) { return {Kind::Explicit, n}; }

  int resolve(const AnovaTable& table) const;
};

/// Packs one effect's (F, df1, df2) plus the resolved n into the minimal
/// summary form. Throws std::invalid_argument when the effect is absent or
/// an explicit n is < 2.
AnovaSummary effect_summary(const AnovaTable& table, EffectId effect,
                            const NConvention& n_convention =
                                NConvention::total_observations());

/// The residual sums of squares for comparing "effect present" against
/// "effect absent": sse_h1 = ss_error, sse_h0 = ss_effect + ss_error.
SumsOfSquares sse_pair_for_effect(const AnovaTable& table, EffectId effect);

}  // namespace anovabf
