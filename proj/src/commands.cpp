#include "dunify/commands.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>
#include <unordered_set>

#include "dunify/families.hpp"
#include "dunify/flatten.hpp"
#include "dunify/graphs.hpp"
#include "dunify/parser.hpp"
#include "dunify/report.hpp"

namespace dunify {

namespace {

std::vector<VariableId> variables_of(const TermPairs& pairs) {
  std::unordered_set<VariableId> seen;
  for (const auto& [l, r] : pairs) {
    collect_variables(l, seen);
    collect_variables(r, seen);
  }
  std::vector<VariableId> vars(seen.begin(), seen.end());
  std::sort(vars.begin(), vars.end());
  return vars;
}

int exit_code_for(const SolveOutcome& outcome) {
  if (std::holds_alternative<Unified>(outcome)) return kExitUnified;
  if (std::holds_alternative<BudgetExceeded>(outcome)) return kExitBudget;
  return kExitFailure;
}

void print_human_report(const SolveReport& report, const VariablePool& pool,
                        std::ostream& out) {
  out << "outcome: " << outcome_name(report.outcome) << '\n';
  out << "sum_transformations: " << report.sum_transformations << '\n';
  out << "rule_applications: a=" << report.rules.a << " b=" << report.rules.b
      << " c=" << report.rules.c << '\n';
  out << "m_input: " << report.m_input << '\n';
  out << "p_input: " << report.p_input << '\n';
  if (!report.per_level_transformations.empty()) {
    out << "per_level:";
    for (const auto& [level, count] : report.per_level_transformations)
      out << ' ' << level << ':' << count;
    out << '\n';
  }
  out << "peaks:";
  const std::size_t shown = std::min<std::size_t>(report.peak_sequence.size(), 16);
  for (std::size_t i = 0; i < shown; ++i)
    out << ' ' << pool.name(report.peak_sequence[i]);
  if (report.peak_sequence.size() > shown)
    out << " ... (" << report.peak_sequence.size() << " total)";
  out << '\n';
  out << "wall_time_ms: " << report.wall_time.count() << '\n';
  if (const TriangularSubstitution* mgu = report.mgu()) {
    out << "mgu:\n";
    for (const auto& entry : mgu->entries())
      out << "  " << render_equation(FlatEquation{entry.var, entry.rhs}, pool)
          << '\n';
  }
}

bool write_text_file(const std::string& path, const std::string& text,
                     std::ostream& err) {
  std::ofstream os(path, std::ios::binary);
  if (!os) {
    err << "cannot write " << path << '\n';
    return false;
  }
  os << text;
  return true;
}

}  // namespace

namespace {

// Keeps a copy of the most recent simple state, i.e. the state the final
// cycle checks ran on.
struct LastStateCapture : SolverObserver {
  EquationSet last;
  void on_simple(const EquationSet& eqs) override { last = eqs; }
};

struct FanoutObserver : SolverObserver {
  std::vector<SolverObserver*> sinks;
  void on_rule(char tag, VariableId context,
               const std::vector<FlatEquation>& consumed,
               const std::vector<FlatEquation>& produced) override {
    for (auto* s : sinks) s->on_rule(tag, context, consumed, produced);
  }
  void on_simple(const EquationSet& eqs) override {
    for (auto* s : sinks) s->on_simple(eqs);
  }
};

}  // namespace

int cmd_solve(const SolveArgs& args, std::ostream& out, std::ostream& err) {
  VariablePool pool;
  TermPairs input;
  try {
    input = parse_equations_file(pool, args.file);
  } catch (const std::exception& e) {
    err << args.file << ":" << e.what() << '\n';
    return kExitUsage;
  }

  SimpleSystem system = flatten_system(pool, input);
  SolverOptions opts;
  opts.max_transformations = args.max_steps;
  TraceWriter tracer(pool, err);
  LastStateCapture capture;
  FanoutObserver fanout;
  if (args.trace) fanout.sinks.push_back(&tracer);
  if (args.dump_graphs) fanout.sinks.push_back(&capture);
  if (!fanout.sinks.empty()) opts.observer = &fanout;

  SolveReport report = unify(pool, system, opts);

  if (args.dump_graphs) {
    // Graphs of the state the solver stopped in.
    std::ostringstream dep_text, prop_text;
    DependencyGraph dep = build_dependency_graph(capture.last);
    PropagationGraph prop = build_propagation_graph(dep);
    dump_dot(dep, pool, dep_text);
    dump_dot(prop, pool, prop_text);
    if (!write_text_file(*args.dump_graphs + ".dependency.dot", dep_text.str(), err) ||
        !write_text_file(*args.dump_graphs + ".propagation.dot", prop_text.str(), err))
      return kExitUsage;
  }

  if (args.check && report.unified()) {
    if (!check_unifier(input, report.mgu()->expand())) {
      err << "check failed: mgu does not unify the input modulo the theory\n";
      return kExitFailure;
    }
  }

  if (args.json) {
    out << report_to_json(report, pool, variables_of(input)).dump(2) << '\n';
  } else {
    print_human_report(report, pool, out);
  }

  if (args.expand && report.unified()) {
    const TriangularSubstitution& mgu = *report.mgu();
    BigInt total = 0;
    std::vector<VariableId> vars = variables_of(input);
    for (VariableId v : vars) total += mgu.expanded_size(v);
    if (total > BigInt(args.expand_limit)) {
      err << "refusing to expand: " << total.str()
          << " symbols exceed the limit of " << args.expand_limit << '\n';
      return kExitUsage;
    }
    Substitution expanded = mgu.expand();
    out << "expanded:\n";
    for (VariableId v : vars) {
      const Term* t = expanded.lookup(v);
      out << "  " << pool.name(v) << " = "
          << render_term(t ? *t : Term::var(v), pool) << '\n';
    }
  }

  return exit_code_for(report.outcome);
}

int cmd_gen(const GenArgs& args, std::ostream& out, std::ostream& err) {
  VariablePool pool;
  SimpleSystem system;
  if (args.family == "sigma") {
    system = gen_sigma(pool, args.sigma_n);
  } else if (args.family == "fail-prop") {
    system = gen_failure_propagation(pool);
  } else if (args.family == "random") {
    system = gen_random_simple(pool, args.seed, args.num_vars, args.num_eqs);
  } else {
    err << "unknown family: " << args.family << " (expected sigma | fail-prop | random)\n";
    return kExitUsage;
  }
  std::string text = render_system(system, pool);
  if (args.output) {
    if (!write_text_file(*args.output, text, err)) return kExitUsage;
  } else {
    out << text;
  }
  return kExitUnified;
}

int cmd_bench(const BenchArgs& args, std::ostream& out, std::ostream& err) {
  if (args.family != "sigma") {
    err << "bench supports only --family sigma\n";
    return kExitUsage;
  }
  if (args.from > args.to) {
    err << "bench: --from must not exceed --to\n";
    return kExitUsage;
  }

  std::ostringstream csv;
  write_bench_csv_header(csv);
  for (unsigned n = args.from; n <= args.to; ++n) {
    VariablePool pool;
    SimpleSystem system = gen_sigma(pool, n);
    SolverOptions opts;
    opts.max_transformations = args.max_steps;
    SolveReport report = unify(pool, system, opts);
    if (!report.unified()) {
      err << "bench: sigma(" << n << ") ended with "
          << outcome_name(report.outcome) << '\n';
      return std::holds_alternative<BudgetExceeded>(report.outcome) ? kExitBudget
                                                                    : kExitFailure;
    }
    BenchRow row{n,
                 report.m_input,
                 report.p_input,
                 claimed_bound(n),
                 predicted_steps(n),
                 report.sum_transformations,
                 report.wall_time.count(),
                 report.mgu()->expanded_size(*pool.lookup("x"))};
    write_bench_csv_row(csv, row);
  }
  if (args.csv) {
    if (!write_text_file(*args.csv, csv.str(), err)) return kExitUsage;
  } else {
    out << csv.str();
  }
  return kExitUnified;
}

int cmd_verify(const VerifyArgs& args, std::ostream& out, std::ostream& err) {
  VariablePool pool;
  TermPairs system;
  Substitution mgu;
  try {
    system = parse_equations_file(pool, args.system_file);
  } catch (const std::exception& e) {
    err << args.system_file << ":" << e.what() << '\n';
    return kExitUsage;
  }
  try {
    mgu = parse_substitution_file(pool, args.mgu_file);
  } catch (const std::exception& e) {
    err << args.mgu_file << ":" << e.what() << '\n';
    return kExitUsage;
  }
  if (check_unifier(system, mgu)) {
    out << "verified: substitution unifies the system\n";
    return kExitUnified;
  }
  out << "failed: substitution does not unify the system\n";
  return kExitFailure;
}

}  // namespace dunify
