#include "anovabf/simulation.hpp"

#include <atomic>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

#include "anovabf/bayes_factor.hpp"
#include "anovabf/errors.hpp"
#include "anovabf/rng.hpp"

namespace anovabf {

void SimulationConfig::validate() const {
  if (levels_a < 1 || levels_b < 1) {
    throw std::invalid_argument("SimulationConfig: factor levels must be >= 1");
  }
  if (levels_a < 2 && levels_b < 2) {
    throw std::invalid_argument(
        "SimulationConfig: at least one factor needs >= 2 levels");
  }
  if (cell_sizes.empty()) {
    throw std::invalid_argument("SimulationConfig: cell_sizes must be nonempty");
  }
  for (const int cell : cell_sizes) {
    if (cell < 2) {
      throw std::invalid_argument("SimulationConfig: every cell size must be >= 2");
    }
  }
  if (effect_variances.empty()) {
    throw std::invalid_argument(
        "SimulationConfig: effect_variances must be nonempty");
  }
  for (const double g : effect_variances) {
    if (!(g >= 0.0) || !std::isfinite(g)) {
      throw std::invalid_argument("SimulationConfig: every g must be finite and >= 0");
    }
  }
  if (replications < 1) {
    throw std::invalid_argument("SimulationConfig: replications must be >= 1");
  }
  if (!(error_sd > 0.0) || !std::isfinite(error_sd)) {
    throw std::invalid_argument("SimulationConfig: error_sd must be finite and > 0");
  }
  if (n_convention.kind == NConvention::Kind::Explicit &&
      n_convention.explicit_n < 2) {
    throw std::invalid_argument("SimulationConfig: explicit n must be >= 2");
  }
}

namespace {

// Stream key chained from the master seed and the condition values, so a
// replicate's draws depend only on what it simulates, not on where it sits
// in the run schedule.
Philox4x64 replicate_generator(const SimulationConfig& config, int cell_n,
                               double g, int replicate_index) {
  std::uint64_t seed = splitmix64(config.master_seed);
  seed = seed_mix(seed, static_cast<std::uint64_t>(config.levels_a));
  seed = seed_mix(seed, static_cast<std::uint64_t>(config.levels_b));
  seed = seed_mix(seed, std::bit_cast<std::uint64_t>(config.error_sd));
  seed = seed_mix(seed, std::bit_cast<std::uint64_t>(g));
  seed = seed_mix(seed, static_cast<std::uint64_t>(cell_n));
  seed = seed_mix(seed, static_cast<std::uint64_t>(replicate_index));
  return Philox4x64(Philox4x64::Key{seed, splitmix64(seed)});
}

void center(std::vector<double>& values) {
  double mean = 0.0;
  for (const double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  for (double& v : values) v -= mean;
}

void double_center(std::vector<double>& grid, int rows, int cols) {
  double grand = 0.0;
  std::vector<double> row_mean(rows, 0.0);
  std::vector<double> col_mean(cols, 0.0);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      const double v = grid[static_cast<std::size_t>(i) * cols + j];
      row_mean[i] += v;
      col_mean[j] += v;
      grand += v;
    }
  }
  for (double& v : row_mean) v /= cols;
  for (double& v : col_mean) v /= rows;
  grand /= static_cast<double>(rows) * cols;
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      grid[static_cast<std::size_t>(i) * cols + j] -=
          row_mean[i] + col_mean[j] - grand;
    }
  }
}

std::vector<EffectId> design_effects(int levels_a, int levels_b) {
  std::vector<EffectId> effects;
  if (levels_a >= 2) effects.push_back(EffectId::A);
  if (levels_b >= 2) effects.push_back(EffectId::B);
  if (levels_a >= 2 && levels_b >= 2) effects.push_back(EffectId::AB);
  return effects;
}

int effect_df1(EffectId effect, int levels_a, int levels_b) {
  switch (effect) {
    case EffectId::A: return levels_a - 1;
    case EffectId::B: return levels_b - 1;
    case EffectId::AB: return (levels_a - 1) * (levels_b - 1);
  }
  return 0;
}

int resolve_n(const NConvention& convention, int levels_a, int levels_b,
              int cell_n) {
  switch (convention.kind) {
    case NConvention::Kind::TotalObservations:
      return levels_a * levels_b * cell_n;
    case NConvention::Kind::CellCount:
      return cell_n;
    case NConvention::Kind::Explicit:
      return convention.explicit_n;
  }
  return 0;
}

// Distributes replicate indices over `threads` workers; results land in
// per-index slots, so the schedule cannot affect the aggregate.
template <typename Fn>
void for_each_replicate(int replications, int threads, Fn&& fn) {
  if (threads <= 1) {
    for (int r = 0; r < replications; ++r) fn(r);
    return;
  }
  std::atomic<int> next{0};
  const auto worker = [&] {
    while (true) {
      const int r = next.fetch_add(1, std::memory_order_relaxed);
      if (r >= replications) break;
      fn(r);
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& thread : pool) thread.join();
}

}  // namespace

FactorialDataset generate_dataset(const SimulationConfig& config, int cell_n,
                                  double g, int replicate_index) {
  if (cell_n < 2) throw std::invalid_argument("generate_dataset: cell_n must be >= 2");
  if (!(g >= 0.0) || !std::isfinite(g)) {
    throw std::invalid_argument("generate_dataset: g must be finite and >= 0");
  }
  if (replicate_index < 0) {
    throw std::invalid_argument("generate_dataset: replicate_index must be >= 0");
  }

  const int a = config.levels_a;
  const int b = config.levels_b;
  Philox4x64 gen = replicate_generator(config, cell_n, g, replicate_index);
  NormalStream normals(gen);

  const double effect_sd = std::sqrt(g);
  std::vector<double> alpha(a), tau(b), gamma(static_cast<std::size_t>(a) * b);
  for (double& v : alpha) v = effect_sd * normals.next();
  for (double& v : tau) v = effect_sd * normals.next();
  for (double& v : gamma) v = effect_sd * normals.next();

  if (config.center_effects) {
    center(alpha);
    center(tau);
    double_center(gamma, a, b);
  }

  std::vector<double> values(static_cast<std::size_t>(a) * b * cell_n);
  std::size_t idx = 0;
  for (int i = 0; i < a; ++i) {
    for (int j = 0; j < b; ++j) {
      const double cell_effect =
          alpha[i] + tau[j] + gamma[static_cast<std::size_t>(i) * b + j];
      for (int k = 0; k < cell_n; ++k) {
        values[idx++] = cell_effect + config.error_sd * normals.next();
      }
    }
  }
  return FactorialDataset(a, b, cell_n, std::move(values));
}

namespace detail {

ReplicateOutcome analyze_replicate(const FactorialDataset& data,
                                   const NConvention& n_convention) {
  ReplicateOutcome outcome;
  AnovaTable table;
  try {
    table = two_way_anova(data);
  } catch (const degenerate_data_error&) {
    outcome.degenerate = true;
    return outcome;
  }

  for (const auto& row : table.effects) {
    const auto summary = effect_summary(table, row.effect, n_convention);
    const double via_summary = bf01_from_summary(summary).log_bf10;

    const auto sums = sse_pair_for_effect(table, row.effect);
    const double via_sse =
        bf01_from_delta_bic(delta_bic_from_sse(sums.sse_h1(), sums.sse_h0(),
                                               *summary.n, row.df))
            .log_bf10;

    outcome.effects.push_back({row.effect, via_summary, via_sse});
  }
  return outcome;
}

bool decisions_agree(double log_bf10_a, double log_bf10_b) {
  const auto rounded = [](double v) { return std::nearbyint(v * 1e9) / 1e9; };
  return (rounded(log_bf10_a) > 0.0) == (rounded(log_bf10_b) > 0.0);
}

}  // namespace detail

std::vector<ConditionResult> run_simulation(const SimulationConfig& config,
                                            int threads) {
  config.validate();
  if (threads < 1) {
    throw std::invalid_argument("run_simulation: threads must be >= 1");
  }

  const auto effects = design_effects(config.levels_a, config.levels_b);
  std::vector<ConditionResult> results;
  results.reserve(config.cell_sizes.size() * config.effect_variances.size() *
                  effects.size());

  for (const int cell_n : config.cell_sizes) {
    for (const double g : config.effect_variances) {
      std::vector<detail::ReplicateOutcome> outcomes(
          static_cast<std::size_t>(config.replications));
      for_each_replicate(config.replications, threads, [&](int r) {
        outcomes[static_cast<std::size_t>(r)] = detail::analyze_replicate(
            generate_dataset(config, cell_n, g, r), config.n_convention);
      });

      for (std::size_t e = 0; e < effects.size(); ++e) {
        ConditionResult cr;
        cr.effect = effects[e];
        cr.cell_n = cell_n;
        cr.g = g;
        cr.df1 = effect_df1(effects[e], config.levels_a, config.levels_b);
        cr.n_effective =
            resolve_n(config.n_convention, config.levels_a, config.levels_b, cell_n);

        int alt = 0;
        int agree = 0;
        for (const auto& outcome : outcomes) {
          if (outcome.degenerate) {
            ++cr.degenerate_count;
            continue;
          }
          const auto& paths = outcome.effects[e];
          cr.log_bf10.push_back(paths.log_bf10_summary);
          if (paths.log_bf10_summary > 0.0) ++alt;
          if (detail::decisions_agree(paths.log_bf10_summary, paths.log_bf10_sse)) {
            ++agree;
          }
        }

        const auto completed = static_cast<double>(cr.log_bf10.size());
        if (completed > 0) {
          cr.five_number = five_number_summary(cr.log_bf10);
          cr.alt_decision_rate = alt / completed;
          cr.path_consistency = agree / completed;
        } else {
          const double nan = std::numeric_limits<double>::quiet_NaN();
          cr.five_number = {nan, nan, nan, nan, nan};
          cr.alt_decision_rate = nan;
          cr.path_consistency = nan;
        }
        results.push_back(std::move(cr));
      }
    }
  }
  return results;
}

}  // namespace anovabf
