#include "anovabf/anova.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "anovabf/errors.hpp"

namespace anovabf {

FactorialDataset::FactorialDataset(int levels_a, int levels_b, int cell_n,
                                   std::vector<double> values)
    : levels_a_(levels_a),
      levels_b_(levels_b),
      cell_n_(cell_n),
      values_(std::move(values)) {
  if (levels_a_ < 1 || levels_b_ < 1) {
    throw std::invalid_argument("FactorialDataset: factor levels must be >= 1");
  }
  if (cell_n_ < 2) {
    throw std::invalid_argument("FactorialDataset: cell_n must be >= 2");
  }
  const auto expected = static_cast<std::size_t>(levels_a_) *
                        static_cast<std::size_t>(levels_b_) *
                        static_cast<std::size_t>(cell_n_);
  if (values_.size() != expected) {
    throw std::invalid_argument(
        "FactorialDataset: expected " + std::to_string(expected) +
        " values, got " + std::to_string(values_.size()));
  }
  for (const double v : values_) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("FactorialDataset: all values must be finite");
    }
  }
}

FactorialDataset FactorialDataset::from_rows(
    const std::vector<std::tuple<long long, long long, double>>& rows) {
  if (rows.empty()) {
    throw std::invalid_argument("FactorialDataset: no data rows");
  }

  std::map<long long, int> a_index;
  std::map<long long, int> b_index;
  for (const auto& [a, b, value] : rows) {
    (void)value;
    a_index.emplace(a, 0);
    b_index.emplace(b, 0);
  }
  int next = 0;
  for (auto& [level, idx] : a_index) idx = next++;
  next = 0;
  for (auto& [level, idx] : b_index) idx = next++;

  const int a = static_cast<int>(a_index.size());
  const int b = static_cast<int>(b_index.size());

  std::vector<std::vector<double>> cells(static_cast<std::size_t>(a) * b);
  for (const auto& [a_level, b_level, value] : rows) {
    const int i = a_index[a_level];
    const int j = b_index[b_level];
    cells[static_cast<std::size_t>(i) * b + j].push_back(value);
  }

  const std::size_t cell_n = cells.front().size();
  for (const auto& cell : cells) {
    if (cell.size() != cell_n) {
      throw std::invalid_argument(
          "FactorialDataset: unbalanced design (cell counts differ)");
    }
  }
  if (cell_n < 2) {
    throw std::invalid_argument("FactorialDataset: every cell needs >= 2 values");
  }

  std::vector<double> values;
  values.reserve(cells.size() * cell_n);
  for (const auto& cell : cells) {
    values.insert(values.end(), cell.begin(), cell.end());
  }
  return FactorialDataset(a, b, static_cast<int>(cell_n), std::move(values));
}

const char* to_string(EffectId effect) {
  switch (effect) {
    case EffectId::A: return "A";
    case EffectId::B: return "B";
    case EffectId::AB: return "AB";
  }
  return "?";
}

const EffectRow* AnovaTable::find(EffectId effect) const {
  for (const auto& row : effects) {
    if (row.effect == effect) return &row;
  }
  return nullptr;
}

AnovaTable two_way_anova(const FactorialDataset& data) {
  const int a = data.levels_a();
  const int b = data.levels_b();
  const int m = data.cell_n();
  if (a < 2 && b < 2) {
    throw std::invalid_argument("two_way_anova: at least one factor needs >= 2 levels");
  }

  // Pass 1: means.
  std::vector<double> cell_mean(static_cast<std::size_t>(a) * b, 0.0);
  for (int i = 0; i < a; ++i) {
    for (int j = 0; j < b; ++j) {
      double sum = 0.0;
      for (int k = 0; k < m; ++k) sum += data(i, j, k);
      cell_mean[static_cast<std::size_t>(i) * b + j] = sum / m;
    }
  }
  std::vector<double> a_mean(a, 0.0);
  std::vector<double> b_mean(b, 0.0);
  double grand_mean = 0.0;
  for (int i = 0; i < a; ++i) {
    for (int j = 0; j < b; ++j) {
      const double cm = cell_mean[static_cast<std::size_t>(i) * b + j];
      a_mean[i] += cm;
      b_mean[j] += cm;
      grand_mean += cm;
    }
  }
  for (int i = 0; i < a; ++i) a_mean[i] /= b;
  for (int j = 0; j < b; ++j) b_mean[j] /= a;
  grand_mean /= static_cast<double>(a) * b;

  // Pass 2: squared deviations.
  double ss_a = 0.0;
  for (int i = 0; i < a; ++i) {
    const double d = a_mean[i] - grand_mean;
    ss_a += d * d;
  }
  ss_a *= static_cast<double>(b) * m;

  double ss_b = 0.0;
  for (int j = 0; j < b; ++j) {
    const double d = b_mean[j] - grand_mean;
    ss_b += d * d;
  }
  ss_b *= static_cast<double>(a) * m;

  double ss_ab = 0.0;
  for (int i = 0; i < a; ++i) {
    for (int j = 0; j < b; ++j) {
      const double d = cell_mean[static_cast<std::size_t>(i) * b + j] -
                       a_mean[i] - b_mean[j] + grand_mean;
      ss_ab += d * d;
    }
  }
  ss_ab *= m;

  double ss_error = 0.0;
  double total_ss = 0.0;
  for (int i = 0; i < a; ++i) {
    for (int j = 0; j < b; ++j) {
      const double cm = cell_mean[static_cast<std::size_t>(i) * b + j];
      for (int k = 0; k < m; ++k) {
        const double y = data(i, j, k);
        const double de = y - cm;
        ss_error += de * de;
        const double dt = y - grand_mean;
        total_ss += dt * dt;
      }
    }
  }

  if (ss_error <= 0.0) {
    throw degenerate_data_error(
        "two_way_anova: zero residual variation, F is undefined");
  }

  AnovaTable table;
  table.n_total = data.total_n();
  table.cell_n = m;
  table.ss_error = ss_error;
  table.df_error = a * b * (m - 1);
  table.total_ss = total_ss;

  const double ms_error = ss_error / table.df_error;
  const auto add_effect = [&](EffectId id, double ss, int df) {
    if (df < 1) return;
    table.effects.push_back({id, ss, df, (ss / df) / ms_error});
  };
  add_effect(EffectId::A, ss_a, a - 1);
  add_effect(EffectId::B, ss_b, b - 1);
  add_effect(EffectId::AB, ss_ab, (a - 1) * (b - 1));
  return table;
}

int NConvention::resolve(const AnovaTable& table) const {
  switch (kind) {
    case Kind::TotalObservations: return table.n_total;
    case Kind::CellCount: return table.cell_n;
    case Kind::Explicit:
      if (explicit_n < 2) {
        throw std::invalid_argument("NConvention: explicit n must be >= 2");
      }
      return explicit_n;
  }
  throw std::invalid_argument("NConvention: unknown kind");
}

AnovaSummary effect_summary(const AnovaTable& table, EffectId effect,
                            const NConvention& n_convention) {
  const EffectRow* row = table.find(effect);
  if (row == nullptr) {
    throw std::invalid_argument(std::string("effect_summary: effect ") +
                                to_string(effect) + " not present in table");
  }
  AnovaSummary summary;
  summary.f_value = row->f;
  summary.df1 = row->df;
  summary.df2 = table.df_error;
  summary.n = n_convention.resolve(table);
  summary.validate();
  return summary;
}

SumsOfSquares sse_pair_for_effect(const AnovaTable& table, EffectId effect) {
  const EffectRow* row = table.find(effect);
  if (row == nullptr) {
    throw std::invalid_argument(std::string("sse_pair_for_effect: effect ") +
                                to_string(effect) + " not present in table");
  }
  SumsOfSquares sums{row->ss, table.ss_error};
  sums.validate();
  return sums;
}

}  // namespace anovabf
