// anovabf: Bayes factors for ANOVA effects from minimal published summaries,
// batch processing for meta-analysis, raw-data ANOVA, and a Monte Carlo
// harness for the two computation paths.
//
// Exit codes are stable: 0 success, 1 computation/validation error,
// 2 usage error, 3 partial batch failure.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "anovabf/anova.hpp"
#include "anovabf/bayes_factor.hpp"
#include "anovabf/csv.hpp"
#include "anovabf/errors.hpp"
#include "anovabf/format.hpp"
#include "anovabf/simulation.hpp"
#include "anovabf/summary_parser.hpp"
#include "anovabf/text_util.hpp"

namespace {

using namespace anovabf;

constexpr int kExitOk = 0;
constexpr int kExitComputation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitPartialBatch = 3;

// Flag/config mistakes, as opposed to bad data.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void write_output(const std::string& path, const std::string& content) {
  if (path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << content;
}

NConvention parse_convention(const std::string& text) {
  if (text == "total") return NConvention::total_observations();
  if (text == "cell") return NConvention::cell_count();
  if (const auto n = detail::parse_int_cell(text)) {
    if (*n < 2 || *n > std::numeric_limits<int>::max()) {
      throw UsageError("--n-convention: explicit n must be an integer >= 2");
    }
    return NConvention::explicit_n_of(static_cast<int>(*n));
  }
  throw UsageError("--n-convention must be 'total', 'cell', or an integer");
}

std::string join_warnings(const std::vector<Warning>& warnings) {
  std::string out;
  for (const auto w : warnings) {
    if (!out.empty()) out += ';';
    out += to_string(w);
  }
  return out;
}

nlohmann::ordered_json warnings_json(const std::vector<Warning>& warnings) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto w : warnings) arr.push_back(to_string(w));
  return arr;
}

// ---------------------------------------------------------------------------
// bf: single summary
// ---------------------------------------------------------------------------

struct BfOptions {
  std::string summary_text;
  double f = -1.0;
  int df1 = 0;
  int df2 = 0;
  int n = 0;
  double p = 0.0;
  bool f_set = false, df1_set = false, df2_set = false, n_set = false, p_set = false;
  std::string direction = "01";
  bool json = false;
  int precision = 6;
  double p_tolerance = 0.02;
};

int run_bf(const BfOptions& opt) {
  AnovaSummary summary;
  if (!opt.summary_text.empty()) {
    if (opt.f_set || opt.df1_set || opt.df2_set) {
      throw UsageError("give either --summary or --f/--df1/--df2, not both");
    }
    if (opt.p_set) {
      throw UsageError("--p only applies to the explicit --f/--df1/--df2 form");
    }
    summary = parse_summary(opt.summary_text);
  } else {
    if (!(opt.f_set && opt.df1_set && opt.df2_set)) {
      throw UsageError("need --summary, or all of --f, --df1 and --df2");
    }
    summary.f_value = opt.f;
    summary.df1 = opt.df1;
    summary.df2 = opt.df2;
    if (opt.p_set) summary.reported_p = opt.p;
  }
  if (opt.n_set) summary.n = opt.n;
  if (!summary.n) {
    throw UsageError(
        "n is not part of the summary (N_MISSING): pass --n with the number "
        "of independent observations");
  }
  summary.validate();

  const BayesFactorResult result = bf01_from_summary(summary);
  const auto warnings = collect_warnings(summary, opt.p_tolerance);

  if (opt.json) {
    nlohmann::ordered_json obj;
    obj["bf01"] = result.bf01;
    obj["bf10"] = result.bf10;
    obj["log_bf10"] = result.log_bf10;
    obj["category"] = to_string(result.category);
    obj["warnings"] = warnings_json(warnings);
    std::cout << obj.dump(2) << "\n";
    return kExitOk;
  }

  const std::string bf01_line = "BF01 = " + format_sig(result.bf01, opt.precision);
  const std::string bf10_line = "BF10 = " + format_sig(result.bf10, opt.precision);
  if (opt.direction == "10") {
    std::cout << bf10_line << "\n" << bf01_line << "\n";
  } else {
    std::cout << bf01_line << "\n" << bf10_line << "\n";
  }
  std::cout << "log BF10 = " << format_sig(result.log_bf10, opt.precision) << "\n";
  std::cout << "evidence: " << to_string(result.category) << "\n";
  if (!warnings.empty()) {
    std::cout << "warnings: " << join_warnings(warnings) << "\n";
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// batch: CSV of summaries in, CSV/JSON of Bayes factors out
// ---------------------------------------------------------------------------

struct BatchOptions {
  std::string input;
  std::string output = "-";
  std::string errors;  // empty: stderr
  std::string format = "csv";
  double p_tolerance = 0.02;
};

int run_batch(const BatchOptions& opt) {
  if (opt.format != "csv" && opt.format != "json") {
    throw UsageError("--format must be csv or json");
  }

  std::ifstream in(opt.input, std::ios::binary);
  if (!in) {
    std::cerr << "error: cannot open input file: " << opt.input << "\n";
    return kExitComputation;
  }

  BatchParseResult parsed;
  try {
    parsed = parse_batch_csv(in);
  } catch (const schema_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitComputation;
  }

  struct OutputRow {
    const SummaryRecord* record;
    BayesFactorResult result;
  };
  std::vector<OutputRow> rows;
  auto row_errors = parsed.errors;

  for (const auto& record : parsed.records) {
    if (!record.summary.n) {
      row_errors.push_back({record.source_line, "n",
                            "n missing (N_MISSING): cannot compute a Bayes factor"});
      continue;
    }
    rows.push_back({&record, bf01_from_summary(record.summary)});
  }

  std::string body;
  if (opt.format == "csv") {
    std::ostringstream out;
    out << "label,f,df1,df2,n,bf01,bf10,log_bf10,category,warnings\n";
    for (const auto& row : rows) {
      const auto& s = row.record->summary;
      out << csv_escape(s.label.value_or("")) << ',' << format_shortest(s.f_value)
          << ',' << s.df1 << ',' << s.df2 << ',' << *s.n << ','
          << format_shortest(row.result.bf01) << ','
          << format_shortest(row.result.bf10) << ','
          << format_shortest(row.result.log_bf10) << ','
          << csv_escape(to_string(row.result.category)) << ','
          << csv_escape(join_warnings(row.record->warnings)) << '\n';
    }
    body = out.str();
  } else {
    auto doc = nlohmann::ordered_json::array();
    for (const auto& row : rows) {
      const auto& s = row.record->summary;
      nlohmann::ordered_json obj;
      if (s.label) obj["label"] = *s.label;
      obj["f"] = s.f_value;
      obj["df1"] = s.df1;
      obj["df2"] = s.df2;
      obj["n"] = *s.n;
      obj["bf01"] = row.result.bf01;
      obj["bf10"] = row.result.bf10;
      obj["log_bf10"] = row.result.log_bf10;
      obj["category"] = to_string(row.result.category);
      obj["warnings"] = warnings_json(row.record->warnings);
      doc.push_back(std::move(obj));
    }
    body = doc.dump(2) + "\n";
  }
  write_output(opt.output, body);

  if (!row_errors.empty()) {
    std::stable_sort(row_errors.begin(), row_errors.end(),
                     [](const RowError& a, const RowError& b) { return a.line < b.line; });
    std::ostringstream err;
    err << "line,column,message\n";
    for (const auto& e : row_errors) {
      err << e.line << ',' << csv_escape(e.column) << ','
          << csv_escape(e.message) << '\n';
    }
    if (opt.errors.empty()) {
      std::cerr << err.str();
    } else {
      write_output(opt.errors, err.str());
    }
  }

  if (row_errors.empty()) return kExitOk;
  return rows.empty() ? kExitComputation : kExitPartialBatch;
}

// ---------------------------------------------------------------------------
// anova: raw balanced data in, table plus Bayes factors out
// ---------------------------------------------------------------------------

struct AnovaOptions {
  std::string input;
  std::string convention = "total";
  bool json = false;
  int precision = 6;
};

FactorialDataset load_dataset(std::istream& in) {
  CsvReader reader(in);
  const auto header = reader.next();
  if (!header) throw std::runtime_error("anova input has no header row");

  int col_a = -1, col_b = -1, col_value = -1;
  for (std::size_t i = 0; i < header->fields.size(); ++i) {
    const auto name = detail::to_lower(detail::trim(header->fields[i]));
    if (name == "a_level") col_a = static_cast<int>(i);
    else if (name == "b_level") col_b = static_cast<int>(i);
    else if (name == "value") col_value = static_cast<int>(i);
  }
  if (col_a < 0 || col_b < 0 || col_value < 0) {
    throw std::runtime_error(
        "anova input needs columns a_level, b_level, value");
  }

  std::vector<std::tuple<long long, long long, double>> rows;
  while (const auto row = reader.next()) {
    if (row->fields.size() != header->fields.size()) {
      throw std::runtime_error("line " + std::to_string(row->line) +
                               ": wrong field count");
    }
    const auto a = detail::parse_int_cell(row->fields[col_a]);
    const auto b = detail::parse_int_cell(row->fields[col_b]);
    const auto v = detail::parse_double_cell(row->fields[col_value]);
    if (!a || !b || !v) {
      throw std::runtime_error("line " + std::to_string(row->line) +
                               ": expected integer,integer,number");
    }
    rows.emplace_back(*a, *b, *v);
  }
  return FactorialDataset::from_rows(rows);
}

int run_anova(const AnovaOptions& opt) {
  const NConvention convention = parse_convention(opt.convention);

  FactorialDataset data = [&] {
    if (opt.input == "-") return load_dataset(std::cin);
    std::ifstream in(opt.input, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open input file: " + opt.input);
    return load_dataset(in);
  }();

  const AnovaTable table = two_way_anova(data);
  const int n_effective = convention.resolve(table);

  struct EffectOut {
    const EffectRow* row;
    BayesFactorResult result;
  };
  std::vector<EffectOut> effects;
  for (const auto& row : table.effects) {
    effects.push_back(
        {&row, bf01_from_summary(effect_summary(table, row.effect, convention))});
  }

  if (opt.json) {
    nlohmann::ordered_json doc;
    auto arr = nlohmann::ordered_json::array();
    for (const auto& e : effects) {
      nlohmann::ordered_json obj;
      obj["effect"] = to_string(e.row->effect);
      obj["ss"] = e.row->ss;
      obj["df"] = e.row->df;
      obj["f"] = e.row->f;
      obj["bf01"] = e.result.bf01;
      obj["bf10"] = e.result.bf10;
      obj["log_bf10"] = e.result.log_bf10;
      obj["category"] = to_string(e.result.category);
      arr.push_back(std::move(obj));
    }
    doc["effects"] = std::move(arr);
    doc["ss_error"] = table.ss_error;
    doc["df_error"] = table.df_error;
    doc["total_ss"] = table.total_ss;
    doc["n_total"] = table.n_total;
    doc["n_effective"] = n_effective;
    std::cout << doc.dump(2) << "\n";
    return kExitOk;
  }

  const int p = opt.precision;
  std::cout << std::left << std::setw(8) << "effect" << std::setw(14) << "ss"
            << std::setw(6) << "df" << std::setw(14) << "F" << std::setw(14)
            << "BF01" << std::setw(14) << "BF10" << "evidence\n";
  for (const auto& e : effects) {
    std::cout << std::left << std::setw(8) << to_string(e.row->effect)
              << std::setw(14) << format_sig(e.row->ss, p) << std::setw(6)
              << e.row->df << std::setw(14) << format_sig(e.row->f, p)
              << std::setw(14) << format_sig(e.result.bf01, p) << std::setw(14)
              << format_sig(e.result.bf10, p) << to_string(e.result.category)
              << "\n";
  }
  std::cout << std::left << std::setw(8) << "error" << std::setw(14)
            << format_sig(table.ss_error, p) << std::setw(6) << table.df_error
            << "\n";
  std::cout << "n_total = " << table.n_total << ", n entering the formula = "
            << n_effective << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// simulate: Monte Carlo harness
// ---------------------------------------------------------------------------

struct SimulateOptions {
  std::string config_path;
  std::vector<int> cell_sizes;
  std::vector<double> g_values;
  int reps = 0;
  std::uint64_t seed = 0;
  std::string convention;
  double error_sd = 0.0;
  int levels_a = 0;
  int levels_b = 0;
  bool center_effects = false;
  bool reps_set = false, seed_set = false, error_sd_set = false;
  bool levels_a_set = false, levels_b_set = false, center_set = false;
  std::string format = "markdown";
  int threads = 1;
  std::string output = "-";
  int precision = 6;
};

SimulationConfig config_from_json(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open config file: " + path);

  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("config is not valid JSON: " + std::string(e.what()));
  }
  if (!doc.is_object()) throw UsageError("config must be a JSON object");

  SimulationConfig config;
  try {
    for (const auto& [key, value] : doc.items()) {
      if (key == "levels_a") config.levels_a = value.get<int>();
      else if (key == "levels_b") config.levels_b = value.get<int>();
      else if (key == "cell_sizes") config.cell_sizes = value.get<std::vector<int>>();
      else if (key == "g_values") config.effect_variances = value.get<std::vector<double>>();
      else if (key == "replications") config.replications = value.get<int>();
      else if (key == "master_seed") config.master_seed = value.get<std::uint64_t>();
      else if (key == "error_sd") config.error_sd = value.get<double>();
      else if (key == "center_effects") config.center_effects = value.get<bool>();
      else if (key == "n_convention") {
        if (value.is_number_integer()) {
          config.n_convention = NConvention::explicit_n_of(value.get<int>());
        } else {
          config.n_convention = parse_convention(value.get<std::string>());
        }
      } else {
        throw UsageError("unknown config key: " + key);
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("bad config value: " + std::string(e.what()));
  }
  return config;
}

int run_simulate(const SimulateOptions& opt) {
  SimulationConfig config;
  if (!opt.config_path.empty()) config = config_from_json(opt.config_path);

  if (!opt.cell_sizes.empty()) config.cell_sizes = opt.cell_sizes;
  if (!opt.g_values.empty()) config.effect_variances = opt.g_values;
  if (opt.reps_set) config.replications = opt.reps;
  if (opt.seed_set) config.master_seed = opt.seed;
  if (!opt.convention.empty()) config.n_convention = parse_convention(opt.convention);
  if (opt.error_sd_set) config.error_sd = opt.error_sd;
  if (opt.levels_a_set) config.levels_a = opt.levels_a;
  if (opt.levels_b_set) config.levels_b = opt.levels_b;
  if (opt.center_set) config.center_effects = opt.center_effects;

  ReportFormat format;
  if (opt.format == "markdown") format = ReportFormat::Markdown;
  else if (opt.format == "csv") format = ReportFormat::Csv;
  else if (opt.format == "json") format = ReportFormat::Json;
  else throw UsageError("--format must be markdown, csv or json");

  if (opt.threads < 1) throw UsageError("--threads must be >= 1");

  try {
    config.validate();
  } catch (const std::invalid_argument& e) {
    // Bad simulation parameters are a usage problem, not a data problem.
    throw UsageError(e.what());
  }

  const auto results = run_simulation(config, opt.threads);
  write_output(opt.output, render_report(results, format, opt.precision));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Bayes factors for ANOVA effects from minimal summaries (F, dfs, n), "
      "with batch processing, raw-data ANOVA, and a simulation harness"};
  app.require_subcommand(1);

  BfOptions bf;
  auto* bf_cmd = app.add_subcommand(
      "bf", "Bayes factor for one reported effect");
  bf_cmd->add_option("--summary", bf.summary_text,
                     "summary string, e.g. \"F(1,17)=1.75, p=0.20\"");
  bf_cmd->add_option("--f", bf.f, "F ratio")->each([&](const std::string&) { bf.f_set = true; });
  bf_cmd->add_option("--df1", bf.df1, "effect degrees of freedom")
      ->each([&](const std::string&) { bf.df1_set = true; });
  bf_cmd->add_option("--df2", bf.df2, "error degrees of freedom")
      ->each([&](const std::string&) { bf.df2_set = true; });
  bf_cmd->add_option("--n", bf.n, "independent observations entering the formula")
      ->each([&](const std::string&) { bf.n_set = true; });
  bf_cmd->add_option("--p", bf.p, "reported p value (consistency check only)")
      ->each([&](const std::string&) { bf.p_set = true; });
  bf_cmd->add_option("--direction", bf.direction, "01 or 10 (default 01)")
      ->check(CLI::IsMember({"01", "10"}));
  bf_cmd->add_flag("--json", bf.json, "machine-readable output");
  bf_cmd->add_option("--precision", bf.precision, "significant digits (default 6)");
  bf_cmd->add_option("--p-tolerance", bf.p_tolerance,
                     "p consistency tolerance (default 0.02)");

  BatchOptions batch;
  auto* batch_cmd = app.add_subcommand(
      "batch", "Bayes factors for a CSV of summaries (f,df1,df2,n[,label,p])");
  batch_cmd->add_option("--input", batch.input, "input CSV path")->required();
  batch_cmd->add_option("--output", batch.output, "output path, - for stdout");
  batch_cmd->add_option("--errors", batch.errors,
                        "error report path (default: stderr)");
  batch_cmd->add_option("--format", batch.format, "csv or json");
  batch_cmd->add_option("--p-tolerance", batch.p_tolerance,
                        "p consistency tolerance (default 0.02)");

  AnovaOptions anova;
  auto* anova_cmd = app.add_subcommand(
      "anova", "balanced ANOVA on raw data (a_level,b_level,value CSV)");
  anova_cmd->add_option("--input", anova.input, "input CSV path, - for stdin")
      ->required();
  anova_cmd->add_option("--n-convention", anova.convention,
                        "total, cell, or an explicit integer");
  anova_cmd->add_flag("--json", anova.json, "machine-readable output");
  anova_cmd->add_option("--precision", anova.precision,
                        "significant digits (default 6)");

  SimulateOptions sim;
  auto* sim_cmd = app.add_subcommand(
      "simulate", "Monte Carlo comparison of the two computation paths");
  sim_cmd->add_option("--config", sim.config_path, "JSON config path");
  sim_cmd->add_option("--cell-sizes", sim.cell_sizes, "cell sizes")
      ->delimiter(',');
  sim_cmd->add_option("--g-values", sim.g_values, "effect variances")
      ->delimiter(',');
  sim_cmd->add_option("--reps", sim.reps, "replications per condition")
      ->each([&](const std::string&) { sim.reps_set = true; });
  sim_cmd->add_option("--seed", sim.seed, "master seed")
      ->each([&](const std::string&) { sim.seed_set = true; });
  sim_cmd->add_option("--n-convention", sim.convention,
                      "total, cell, or an explicit integer");
  sim_cmd->add_option("--error-sd", sim.error_sd, "noise standard deviation")
      ->each([&](const std::string&) { sim.error_sd_set = true; });
  sim_cmd->add_option("--levels-a", sim.levels_a, "levels of factor A")
      ->each([&](const std::string&) { sim.levels_a_set = true; });
  sim_cmd->add_option("--levels-b", sim.levels_b, "levels of factor B")
      ->each([&](const std::string&) { sim.levels_b_set = true; });
  sim_cmd->add_flag("--center-effects", sim.center_effects,
                    "re-center drawn effects to sum to zero")
      ->each([&](const std::string&) { sim.center_set = true; });
  sim_cmd->add_option("--format", sim.format, "markdown, csv or json");
  sim_cmd->add_option("--threads", sim.threads, "worker threads (default 1)");
  sim_cmd->add_option("--output", sim.output, "output path, - for stdout");
  sim_cmd->add_option("--precision", sim.precision,
                      "markdown significant digits (default 6)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (app.got_subcommand(bf_cmd)) return run_bf(bf);
    if (app.got_subcommand(batch_cmd)) return run_batch(batch);
    if (app.got_subcommand(anova_cmd)) return run_anova(anova);
    if (app.got_subcommand(sim_cmd)) return run_simulate(sim);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const parse_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitComputation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitComputation;
  }
  return kExitUsage;
}
