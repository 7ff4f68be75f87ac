#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <vector>

#include "anovabf/anova.hpp"
#include "anovabf/bayes_factor.hpp"
#include "anovabf/errors.hpp"
#include "support/close.hpp"
#include "support/naive_anova.hpp"

using namespace anovabf;
using Catch::Matchers::WithinAbs;
using testsupport::close;
using testsupport::naive_anova;

namespace {

// Random balanced dataset with values from a small grid (exact halves), so
// the naive long-double oracle is meaningful at tight tolerances. Regenerates
// deterministically until the residual SS is nonzero.
FactorialDataset random_grid_dataset(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> a_dist(2, 3);
  std::uniform_int_distribution<int> b_dist(1, 3);
  std::uniform_int_distribution<int> m_dist(2, 3);
  std::uniform_int_distribution<int> grid(-6, 6);

  while (true) {
    const int a = a_dist(rng);
    const int b = b_dist(rng);
    const int m = m_dist(rng);
    std::vector<double> values(static_cast<std::size_t>(a) * b * m);
    for (auto& v : values) v = grid(rng) / 2.0;
    FactorialDataset data(a, b, m, std::move(values));
    try {
      (void)two_way_anova(data);
      return data;
    } catch (const degenerate_data_error&) {
      // all cells constant; roll again
    }
  }
}

FactorialDataset random_normal_dataset(std::mt19937_64& rng, int max_cell = 10) {
  std::uniform_int_distribution<int> a_dist(2, 3);
  std::uniform_int_distribution<int> b_dist(1, 3);
  std::uniform_int_distribution<int> m_dist(2, max_cell);
  std::normal_distribution<double> noise(0.0, 1.0);
  std::normal_distribution<double> shift(0.0, 0.7);

  const int a = a_dist(rng);
  const int b = b_dist(rng);
  const int m = m_dist(rng);
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(a) * b * m);
  for (int i = 0; i < a; ++i) {
    for (int j = 0; j < b; ++j) {
      const double cell_shift = shift(rng);
      for (int k = 0; k < m; ++k) values.push_back(cell_shift + noise(rng));
    }
  }
  return FactorialDataset(a, b, m, std::move(values));
}

}  // namespace

TEST_CASE("two-group fixture: {1,2,3} vs {4,5,6}") {
  const FactorialDataset data(2, 1, 3, {1, 2, 3, 4, 5, 6});
  const auto table = two_way_anova(data);

  REQUIRE(table.effects.size() == 1);
  const auto& effect = table.effects[0];
  CHECK(effect.effect == EffectId::A);
  CHECK_THAT(effect.ss, WithinAbs(13.5, 1e-12));
  CHECK(effect.df == 1);
  CHECK_THAT(effect.f, WithinAbs(13.5, 1e-12));
  CHECK_THAT(table.ss_error, WithinAbs(4.0, 1e-12));
  CHECK(table.df_error == 4);
  CHECK_THAT(table.total_ss, WithinAbs(17.5, 1e-12));
  CHECK(table.n_total == 6);

  SECTION("effect_summary under each convention") {
    const auto total = effect_summary(table, EffectId::A);
    CHECK(total.f_value == effect.f);
    CHECK(total.df1 == 1);
    CHECK(total.df2 == 4);
    CHECK(total.n == 6);

    const auto explicit_n =
        effect_summary(table, EffectId::A, NConvention::explicit_n_of(6));
    CHECK(explicit_n.n == total.n);
    CHECK(explicit_n.f_value == total.f_value);

    const auto cell = effect_summary(table, EffectId::A, NConvention::cell_count());
    CHECK(cell.n == 3);

    CHECK_THROWS_AS(
        effect_summary(table, EffectId::A, NConvention::explicit_n_of(1)),
        std::invalid_argument);
    CHECK_THROWS_AS(effect_summary(table, EffectId::B), std::invalid_argument);
  }

  SECTION("sse pair") {
    const auto sums = sse_pair_for_effect(table, EffectId::A);
    CHECK(sums.sse_h1() == table.ss_error);
    CHECK_THAT(sums.sse_h0(), WithinAbs(17.5, 1e-12));
    CHECK_THROWS_AS(sse_pair_for_effect(table, EffectId::AB), std::invalid_argument);
  }
}

TEST_CASE("constant data has no F ratio") {
  CHECK_THROWS_AS(two_way_anova(FactorialDataset(2, 1, 3, {5, 5, 5, 5, 5, 5})),
                  degenerate_data_error);
}

TEST_CASE("equal cell means zero out every effect") {
  // 2x3, cell_n = 2, every cell {c - 1, c + 1}: within-cell spread only.
  std::vector<double> values;
  for (int cell = 0; cell < 6; ++cell) {
    values.push_back(2.0);
    values.push_back(4.0);
  }
  const auto table = two_way_anova(FactorialDataset(2, 3, 2, std::move(values)));
  REQUIRE(table.effects.size() == 3);
  for (const auto& effect : table.effects) {
    CAPTURE(to_string(effect.effect));
    CHECK_THAT(effect.ss, WithinAbs(0.0, 1e-12));
    CHECK_THAT(effect.f, WithinAbs(0.0, 1e-12));
  }
}

TEST_CASE("df bookkeeping on the 2x3x50 layout") {
  std::mt19937_64 rng(41);
  std::normal_distribution<double> noise(0.0, 1.0);
  std::vector<double> values(2 * 3 * 50);
  for (auto& v : values) v = noise(rng);
  const auto table = two_way_anova(FactorialDataset(2, 3, 50, std::move(values)));

  REQUIRE(table.effects.size() == 3);
  CHECK(table.effects[0].df == 1);   // A
  CHECK(table.effects[1].df == 2);   // B
  CHECK(table.effects[2].df == 2);   // AB
  CHECK(table.df_error == 294);
  CHECK(table.n_total == 300);

  const auto ab = effect_summary(table, EffectId::AB);
  CHECK(ab.df1 == 2);
  CHECK(ab.df2 == 294);
  CHECK(ab.n == 300);

  // df identity: effects + error + grand mean = N
  int df_sum = table.df_error + 1;
  for (const auto& effect : table.effects) df_sum += effect.df;
  CHECK(df_sum == table.n_total);
}

TEST_CASE("engine matches the definitional oracle") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 250; ++trial) {
    const auto data = random_grid_dataset(rng);
    const auto table = two_way_anova(data);
    const auto oracle =
        naive_anova(data.levels_a(), data.levels_b(), data.cell_n(),
                    {data.values().begin(), data.values().end()});

    CAPTURE(trial, data.levels_a(), data.levels_b(), data.cell_n());
    if (const auto* a = table.find(EffectId::A)) {
      CHECK(close(a->ss, oracle.ss_a, 1e-10, 1e-10));
    }
    if (const auto* b = table.find(EffectId::B)) {
      CHECK(close(b->ss, oracle.ss_b, 1e-10, 1e-10));
    }
    if (const auto* ab = table.find(EffectId::AB)) {
      CHECK(close(ab->ss, oracle.ss_ab, 1e-10, 1e-10));
    }
    CHECK(close(table.ss_error, oracle.ss_error, 1e-10, 1e-10));
    CHECK(close(table.total_ss, oracle.ss_total, 1e-10, 1e-10));
  }
}

TEST_CASE("decomposition completeness") {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 200; ++trial) {
    const auto data = random_normal_dataset(rng);
    const auto table = two_way_anova(data);
    double sum = table.ss_error;
    for (const auto& effect : table.effects) sum += effect.ss;
    CAPTURE(trial);
    CHECK(close(sum, table.total_ss, 1e-12, 1e-9));
  }
}

TEST_CASE("translation invariance") {
  std::mt19937_64 rng(53);
  for (const double offset : {1.0, -7.5, 100.0, 3000.0}) {
    const auto data = random_normal_dataset(rng);
    std::vector<double> shifted(data.values().begin(), data.values().end());
    for (auto& v : shifted) v += offset;
    const FactorialDataset moved(data.levels_a(), data.levels_b(), data.cell_n(),
                                 std::move(shifted));

    const auto base = two_way_anova(data);
    const auto after = two_way_anova(moved);
    CAPTURE(offset);
    REQUIRE(base.effects.size() == after.effects.size());
    for (std::size_t e = 0; e < base.effects.size(); ++e) {
      CHECK(close(base.effects[e].ss, after.effects[e].ss, 1e-9, 1e-9));
      CHECK(close(base.effects[e].f, after.effects[e].f, 1e-9, 1e-9));
      CHECK(base.effects[e].df == after.effects[e].df);
    }
    CHECK(close(base.ss_error, after.ss_error, 1e-9, 1e-9));
  }
}

TEST_CASE("end-to-end identity: both Bayes factor routes agree per effect") {
  std::mt19937_64 rng(59);
  for (int trial = 0; trial < 300; ++trial) {
    const auto data = random_normal_dataset(rng);
    const auto table = two_way_anova(data);
    for (const auto& effect : table.effects) {
      const auto summary = effect_summary(table, effect.effect);
      const double via_summary = bf01_from_summary(summary).log_bf10;

      const auto sums = sse_pair_for_effect(table, effect.effect);
      const double via_sse =
          bf01_from_delta_bic(
              delta_bic_from_sse(sums.sse_h1(), sums.sse_h0(), *summary.n, effect.df))
              .log_bf10;

      CAPTURE(trial, to_string(effect.effect));
      CHECK(close(via_summary, via_sse, 1e-10, 1e-9));
    }
  }
}

TEST_CASE("sse ratio identity ties the table to the F statistic") {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 100; ++trial) {
    const auto data = random_normal_dataset(rng);
    const auto table = two_way_anova(data);
    for (const auto& effect : table.effects) {
      const auto sums = sse_pair_for_effect(table, effect.effect);
      const double lhs = sums.sse_h0() / sums.sse_h1();
      const double rhs = 1.0 + effect.f * effect.df / table.df_error;
      CHECK(close(lhs, rhs, 1e-10, 1e-10));
    }
  }
}

TEST_CASE("dataset construction guards") {
  CHECK_THROWS_AS(FactorialDataset(2, 1, 1, {1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(FactorialDataset(2, 1, 2, {1, 2, 3}), std::invalid_argument);
  CHECK_THROWS_AS(FactorialDataset(0, 1, 2, {}), std::invalid_argument);
  CHECK_THROWS_AS(
      FactorialDataset(1, 1, 2, {std::nan(""), 1.0}), std::invalid_argument);
  // one factor must have >= 2 levels to test anything
  CHECK_THROWS_AS(two_way_anova(FactorialDataset(1, 1, 2, {1.0, 2.0})),
                  std::invalid_argument);
}

TEST_CASE("from_rows maps arbitrary level codes and enforces balance") {
  SECTION("codes are ranked, order of arrival is irrelevant") {
    const auto data = FactorialDataset::from_rows({
        {20, 1, 4.0}, {10, 1, 1.0}, {20, 1, 5.0},
        {10, 1, 2.0}, {10, 1, 3.0}, {20, 1, 6.0},
    });
    CHECK(data.levels_a() == 2);
    CHECK(data.levels_b() == 1);
    CHECK(data.cell_n() == 3);
    CHECK(data(0, 0, 0) == 1.0);  // level code 10 ranks first
    CHECK(data(1, 0, 0) == 4.0);
  }
  SECTION("unbalanced rejected") {
    CHECK_THROWS_AS(FactorialDataset::from_rows({
                        {1, 1, 1.0}, {1, 1, 2.0}, {2, 1, 3.0},
                    }),
                    std::invalid_argument);
  }
  SECTION("empty rejected") {
    CHECK_THROWS_AS(FactorialDataset::from_rows({}), std::invalid_argument);
  }
  SECTION("one-way via factor B") {
    const auto data = FactorialDataset::from_rows({
        {1, 1, 1.0}, {1, 2, 3.0}, {1, 1, 2.0}, {1, 2, 4.0},
    });
    const auto table = two_way_anova(data);
    REQUIRE(table.effects.size() == 1);
    CHECK(table.effects[0].effect == EffectId::B);
  }
}
