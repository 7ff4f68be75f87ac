#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "anovabf/anova.hpp"
#include "anovabf/quantiles.hpp"

namespace anovabf {

/// Monte Carlo protocol: factorial noise datasets with randomly drawn true
/// effects of variance g, analyzed per replicate along both Bayes factor
/// routes. Defaults follow the 2x3 design with cell sizes 20/50/80 and
/// g in {0, 0.05, 0.2}.
struct SimulationConfig {
  int levels_a = 2;
  int levels_b = 3;
  std::vector<int> cell_sizes = {20, 50, 80};
  std::vector<double> effect_variances = {0.0, 0.05, 0.2};
  int replications = 1000;
  std::uint64_t master_seed = 0;
  NConvention n_convention = NConvention::total_observations();
  double error_sd = 1.0;
  /// When set, drawn effects are re-centered to sum to zero per factor (the
  /// interaction is double-centered). Off by default: the generator draws
  /// each effect independently as Normal(0, g) with no constraint.
  bool center_effects = false;

  void validate() const;
};

/// Aggregates for one (effect, cell size, g) condition.
struct ConditionResult {
  EffectId effect = EffectId::A;
  int cell_n = 0;
  double g = 0.0;
  int df1 = 0;
  int n_effective = 0;       ///< the n the chosen convention feeds the formula
  FiveNumber five_number;    ///< of log BF10, summary-formula path
  double alt_decision_rate = 0.0;  ///< share of replicates with log BF10 > 0
  double path_consistency = 0.0;   ///< share where both paths pick the same model
  int degenerate_count = 0;        ///< replicates with zero residual SS, excluded above
  std::vector<double> log_bf10;    ///< per completed replicate, replicate order
};

/// One replicate's dataset. Deterministic in (master_seed, design shape,
/// error_sd, cell_n, g, replicate_index); execution order never matters.
/// Effects are drawn first (alpha, tau, interaction, row-major), then the
/// noise in observation order.
FactorialDataset generate_dataset(const SimulationConfig& config, int cell_n,
                                  double g, int replicate_index);

/// Runs the full grid. Results come out ordered by the config's cell size
/// list, then its g list, then effect A < B < AB, and are byte-identical
/// for a fixed config no matter how many worker threads process the
/// replicates.
std::vector<ConditionResult> run_simulation(const SimulationConfig& config,
                                            int threads = 1);

enum class ReportFormat { Markdown, Csv, Json };

/// Renders condition rows ordered by cell size ascending, g ascending,
/// effect A < B < AB. CSV and JSON carry full-precision values; markdown
/// rounds to `precision` significant digits.
std::string render_report(const std::vector<ConditionResult>& results,
                          ReportFormat format, int precision = 6);

namespace detail {

/// Both computation paths for one effect of one replicate.
struct EffectPaths {
  EffectId effect;
  double log_bf10_summary;  ///< via (F, df1, df2, n)
  double log_bf10_sse;      ///< via the residual sums of squares
};

struct ReplicateOutcome {
  bool degenerate = false;
  std::vector<EffectPaths> effects;
};

/// Analyzes one dataset along both routes; a zero-residual dataset comes
/// back flagged degenerate instead of throwing.
ReplicateOutcome analyze_replicate(const FactorialDataset& data,
                                   const NConvention& n_convention);

/// Decision agreement is judged after rounding log BF10 to 1e-9.
bool decisions_agree(double log_bf10_a, double log_bf10_b);

}  // namespace detail

}  // namespace anovabf
