#include <algorithm>
#include <sstream>

#include "anovabf/format.hpp"
#include "anovabf/simulation.hpp"

#include "json.hpp"

namespace anovabf {
namespace {

std::vector<const ConditionResult*> sorted_rows(
    const std::vector<ConditionResult>& results) {
  std::vector<const ConditionResult*> rows;
  rows.reserve(results.size());
  for (const auto& r : results) rows.push_back(&r);
  std::stable_sort(rows.begin(), rows.end(),
                   [](const ConditionResult* lhs, const ConditionResult* rhs) {
                     if (lhs->cell_n != rhs->cell_n) return lhs->cell_n < rhs->cell_n;
                     if (lhs->g != rhs->g) return lhs->g < rhs->g;
                     return static_cast<int>(lhs->effect) <
                            static_cast<int>(rhs->effect);
                   });
  return rows;
}

constexpr const char* kColumns[] = {
    "cell_n", "g",      "effect", "min", "q1", "median", "q3", "max",
    "alt_decision_rate", "path_consistency", "degenerate_count"};

std::string render_csv(const std::vector<const ConditionResult*>& rows) {
  std::ostringstream out;
  for (std::size_t i = 0; i < std::size(kColumns); ++i) {
    out << (i ? "," : "") << kColumns[i];
  }
  out << '\n';
  for (const auto* r : rows) {
    out << r->cell_n << ',' << format_shortest(r->g) << ','
        << to_string(r->effect) << ',' << format_shortest(r->five_number.min)
        << ',' << format_shortest(r->five_number.q1) << ','
        << format_shortest(r->five_number.median) << ','
        << format_shortest(r->five_number.q3) << ','
        << format_shortest(r->five_number.max) << ','
        << format_shortest(r->alt_decision_rate) << ','
        << format_shortest(r->path_consistency) << ',' << r->degenerate_count
        << '\n';
  }
  return out.str();
}

std::string render_json(const std::vector<const ConditionResult*>& rows) {
  nlohmann::ordered_json doc = nlohmann::ordered_json::array();
  for (const auto* r : rows) {
    nlohmann::ordered_json obj;
    obj["cell_n"] = r->cell_n;
    obj["g"] = r->g;
    obj["effect"] = to_string(r->effect);
    obj["min"] = r->five_number.min;
    obj["q1"] = r->five_number.q1;
    obj["median"] = r->five_number.median;
    obj["q3"] = r->five_number.q3;
    obj["max"] = r->five_number.max;
    obj["alt_decision_rate"] = r->alt_decision_rate;
    obj["path_consistency"] = r->path_consistency;
    obj["degenerate_count"] = r->degenerate_count;
    doc.push_back(std::move(obj));
  }
  return doc.dump(2) + "\n";
}

std::string render_markdown(const std::vector<const ConditionResult*>& rows,
                            int precision) {
  std::ostringstream out;
  out << "| cell_n | g | effect | min | q1 | median | q3 | max "
         "| alt_decision_rate | path_consistency | degenerate_count |\n";
  out << "|---:|---:|:---|---:|---:|---:|---:|---:|---:|---:|---:|\n";
  for (const auto* r : rows) {
    out << "| " << r->cell_n << " | " << format_sig(r->g, precision) << " | "
        << to_string(r->effect) << " | "
        << format_sig(r->five_number.min, precision) << " | "
        << format_sig(r->five_number.q1, precision) << " | "
        << format_sig(r->five_number.median, precision) << " | "
        << format_sig(r->five_number.q3, precision) << " | "
        << format_sig(r->five_number.max, precision) << " | "
        << format_sig(r->alt_decision_rate, precision) << " | "
        << format_sig(r->path_consistency, precision) << " | "
        << r->degenerate_count << " |\n";
  }
  return out.str();
}

}  // namespace

std::string render_report(const std::vector<ConditionResult>& results,
                          ReportFormat format, int precision) {
  const auto rows = sorted_rows(results);
  switch (format) {
    case ReportFormat::Csv: return render_csv(rows);
    case ReportFormat::Json: return render_json(rows);
    case ReportFormat::Markdown: return render_markdown(rows, precision);
  }
  return {};
}

}  // namespace anovabf
