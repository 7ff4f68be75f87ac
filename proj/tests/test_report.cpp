#include <catch2/catch_amalgamated.hpp>

#include <sstream>
#include <string>
#include <vector>

#include "anovabf/format.hpp"
#include "anovabf/simulation.hpp"

#include "json.hpp"

using namespace anovabf;

namespace {

int count_lines(const std::string& text) {
  int lines = 0;
  for (const char c : text) {
    if (c == '\n') ++lines;
  }
  return lines;
}

ConditionResult sample_result() {
  ConditionResult r;
  r.effect = EffectId::AB;
  r.cell_n = 50;
  r.g = 0.2;
  r.df1 = 2;
  r.n_effective = 300;
  r.five_number = {-3.4, -0.19, 3.62, 11.24, 55.32};
  r.alt_decision_rate = 0.655;
  r.path_consistency = 1.0;
  r.degenerate_count = 0;
  return r;
}

}  // namespace

TEST_CASE("empty report is header-only") {
  CHECK(count_lines(render_report({}, ReportFormat::Csv)) == 1);
  CHECK(count_lines(render_report({}, ReportFormat::Markdown)) == 2);
  CHECK(render_report({}, ReportFormat::Json) == "[]\n");
}

TEST_CASE("single condition renders one row with identical numbers everywhere") {
  const std::vector<ConditionResult> results{sample_result()};

  const std::string csv = render_report(results, ReportFormat::Csv);
  CHECK(count_lines(csv) == 2);
  CHECK(csv.rfind("cell_n,g,effect,min,q1,median,q3,max,"
                  "alt_decision_rate,path_consistency,degenerate_count\n",
                  0) == 0);

  const std::string json_text = render_report(results, ReportFormat::Json);
  const auto doc = nlohmann::json::parse(json_text);
  REQUIRE(doc.is_array());
  REQUIRE(doc.size() == 1);
  const auto& obj = doc[0];
  CHECK(obj["cell_n"] == 50);
  CHECK(obj["effect"] == "AB");
  CHECK(obj["g"].get<double>() == 0.2);
  CHECK(obj["min"].get<double>() == -3.4);
  CHECK(obj["median"].get<double>() == 3.62);
  CHECK(obj["max"].get<double>() == 55.32);
  CHECK(obj["alt_decision_rate"].get<double>() == 0.655);
  CHECK(obj["path_consistency"].get<double>() == 1.0);
  CHECK(obj["degenerate_count"] == 0);

  // CSV carries the same full-precision values.
  std::istringstream csv_stream(csv);
  std::string header, row;
  std::getline(csv_stream, header);
  std::getline(csv_stream, row);
  CHECK(row.find(format_shortest(0.2)) != std::string::npos);
  CHECK(row.find(format_shortest(3.62)) != std::string::npos);
  CHECK(row.find(format_shortest(0.655)) != std::string::npos);

  const std::string md = render_report(results, ReportFormat::Markdown);
  CHECK(count_lines(md) == 3);
  CHECK(md.find("| AB |") != std::string::npos);
}

TEST_CASE("rows are ordered by cell size, then g, then effect") {
  std::vector<ConditionResult> results;
  for (const int cell : {80, 20}) {
    for (const double g : {0.2, 0.0}) {
      for (const auto effect : {EffectId::AB, EffectId::A}) {
        auto r = sample_result();
        r.cell_n = cell;
        r.g = g;
        r.effect = effect;
        results.push_back(r);
      }
    }
  }
  const std::string csv = render_report(results, ReportFormat::Csv);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);  // header
  std::vector<std::string> rows;
  while (std::getline(in, line)) rows.push_back(line);
  REQUIRE(rows.size() == 8);
  CHECK(rows[0].rfind("20,0,A,", 0) == 0);
  CHECK(rows[1].rfind("20,0,AB,", 0) == 0);
  CHECK(rows[2].rfind("20,0.2,A,", 0) == 0);
  CHECK(rows[4].rfind("80,0,A,", 0) == 0);
  CHECK(rows[7].rfind("80,0.2,AB,", 0) == 0);
}

TEST_CASE("full grid cardinality via a miniature run") {
  SimulationConfig config;
  config.cell_sizes = {2, 3, 4};
  config.effect_variances = {0.0, 0.05, 0.2};
  config.replications = 3;
  config.master_seed = 5;
  const auto results = run_simulation(config, 1);
  CHECK(results.size() == 27);
  CHECK(count_lines(render_report(results, ReportFormat::Csv)) == 28);
  CHECK(count_lines(render_report(results, ReportFormat::Markdown)) == 29);
  const auto doc =
      nlohmann::json::parse(render_report(results, ReportFormat::Json));
  CHECK(doc.size() == 27);
}

TEST_CASE("markdown respects the precision knob") {
  auto r = sample_result();
  r.five_number.median = 3.6251111;
  const std::string md4 = render_report({r}, ReportFormat::Markdown, 4);
  CHECK(md4.find("3.625") != std::string::npos);
  const std::string md2 = render_report({r}, ReportFormat::Markdown, 2);
  CHECK(md2.find("3.6 |") != std::string::npos);
}
