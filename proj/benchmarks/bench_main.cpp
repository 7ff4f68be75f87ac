#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "anovabf/anova.hpp"
#include "anovabf/bayes_factor.hpp"
#include "anovabf/quantiles.hpp"
#include "anovabf/simulation.hpp"
#include "anovabf/special_functions.hpp"
#include "anovabf/summary_parser.hpp"

namespace {

using namespace anovabf;

AnovaSummary example_summary() {
  AnovaSummary s;
  s.f_value = 1.75;
  s.df1 = 1;
  s.df2 = 17;
  s.n = 18;
  return s;
}

void BM_bf01_from_summary(benchmark::State& state) {
  const auto summary = example_summary();
  for (auto _ : state) {
    benchmark::DoNotOptimize(bf01_from_summary(summary));
  }
}
BENCHMARK(BM_bf01_from_summary);

void BM_critical_f(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(critical_f(300, 2, 294));
  }
}
BENCHMARK(BM_critical_f);

void BM_f_tail_probability(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(f_tail_probability(1.75, 1, 17));
  }
}
BENCHMARK(BM_f_tail_probability);

void BM_parse_summary(benchmark::State& state) {
  const std::string text = "F(1,17)=1.75, p=0.20, n=18";
  for (auto _ : state) {
    benchmark::DoNotOptimize(parse_summary(text));
  }
}
BENCHMARK(BM_parse_summary);

void BM_two_way_anova(benchmark::State& state) {
  const int cell_n = static_cast<int>(state.range(0));
  std::mt19937_64 rng(1);
  std::normal_distribution<double> noise(0.0, 1.0);
  std::vector<double> values(static_cast<std::size_t>(2 * 3 * cell_n));
  for (auto& v : values) v = noise(rng);
  const FactorialDataset data(2, 3, cell_n, std::move(values));
  for (auto _ : state) {
    benchmark::DoNotOptimize(two_way_anova(data));
  }
  state.SetItemsProcessed(state.iterations() * data.total_n());
}
BENCHMARK(BM_two_way_anova)->Arg(20)->Arg(50)->Arg(80);

void BM_simulation_replicate(benchmark::State& state) {
  SimulationConfig config;
  config.master_seed = 7;
  int replicate = 0;
  for (auto _ : state) {
    const auto data = generate_dataset(config, 50, 0.2, replicate++);
    benchmark::DoNotOptimize(
        detail::analyze_replicate(data, config.n_convention));
  }
}
BENCHMARK(BM_simulation_replicate);

void BM_five_number_summary(benchmark::State& state) {
  std::mt19937_64 rng(2);
  std::normal_distribution<double> noise(0.0, 1.0);
  std::vector<double> values(static_cast<std::size_t>(state.range(0)));
  for (auto& v : values) v = noise(rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(five_number_summary(values));
  }
}
BENCHMARK(BM_five_number_summary)->Arg(1000);

}  // namespace

BENCHMARK_MAIN();
