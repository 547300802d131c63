#include "dunify/report.hpp"

#include <algorithm>
#include <ostream>

namespace dunify {

const char* outcome_name(const SolveOutcome& outcome) {
  if (std::holds_alternative<Unified>(outcome)) return "unified";
  if (std::holds_alternative<FailDependencyCycle>(outcome))
    return "fail_dependency_cycle";
  if (std::holds_alternative<FailPropagationCycle>(outcome))
    return "fail_propagation_cycle";
  return "budget_exceeded";
}

nlohmann::json report_to_json(const SolveReport& report, const VariablePool& pool,
                              const std::vector<VariableId>& input_vars) {
  nlohmann::json j;
  j["outcome"] = outcome_name(report.outcome);
  j["sum_transformations"] = report.sum_transformations;
  j["rule_applications"] = {{"a", report.rules.a},
                            {"b", report.rules.b},
                            {"c", report.rules.c}};
  j["m_input"] = report.m_input;
  j["p_input"] = report.p_input;

  nlohmann::json levels = nlohmann::json::object();
  for (const auto& [level, count] : report.per_level_transformations)
    levels[std::to_string(level)] = count;
  j["per_level_transformations"] = levels;

  nlohmann::json peaks = nlohmann::json::array();
  for (VariableId v : report.peak_sequence) peaks.push_back(pool.name(v));
  j["peak_sequence"] = peaks;
  j["wall_time_ms"] = report.wall_time.count();

  if (const TriangularSubstitution* mgu = report.mgu()) {
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& entry : mgu->entries())
      entries.push_back({pool.name(entry.var),
                         render_term(FlatEquation{entry.var, entry.rhs}.rhs_term(), pool)});
    nlohmann::json sizes = nlohmann::json::object();
    std::vector<std::string> names;
    for (VariableId v : input_vars) names.push_back(pool.name(v));
    std::sort(names.begin(), names.end());
    for (const auto& name : names)
      sizes[name] = mgu->expanded_size(*pool.lookup(name)).str();
    j["mgu"] = {{"entries", entries}, {"expanded_sizes", sizes}};
  } else {
    j["mgu"] = nullptr;
  }
  return j;
}

void TraceWriter::on_rule(char tag, VariableId context,
                          const std::vector<FlatEquation>& consumed,
                          const std::vector<FlatEquation>& produced) {
  auto render_list = [&](const std::vector<FlatEquation>& eqs) {
    std::string out = "[";
    for (std::size_t i = 0; i < eqs.size(); ++i) {
      if (i) out += " | ";
      out += render_equation(eqs[i], pool_);
    }
    out += "]";
    return out;
  };
  const char* role = tag == 'd' ? "peak" : (tag == 'a' ? "var" : "lhs");
  os_ << "rule=" << tag << ' ' << role << '=' << pool_.name(context)
      << " consumed=" << render_list(consumed)
      << " produced=" << render_list(produced) << '\n';
}

void write_bench_csv_header(std::ostream& os) {
  os << "n,m,p,claimed_bound,predicted_steps,actual_steps,wall_time_ms,"
        "mgu_expanded_size_of_x\n";
}

void write_bench_csv_row(std::ostream& os, const BenchRow& row) {
  os << row.n << ',' << row.m << ',' << row.p << ',' << row.claimed.str() << ','
     << row.predicted.str() << ',' << row.actual << ',' << row.wall_time_ms
     << ',' << row.mgu_size_of_x.str() << '\n';
}

}  // namespace dunify
