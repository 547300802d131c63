#include "dunify/solver.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "dunify/graphs.hpp"

namespace dunify {

namespace {

VariableId substituted(VariableId v, VariableId from, VariableId to) {
  return v == from ? to : v;
}

FlatEquation substitute(const FlatEquation& eq, VariableId from, VariableId to) {
  FlatEquation out = eq;
  out.lhs = substituted(eq.lhs, from, to);
  out.rhs.a = substituted(eq.rhs.a, from, to);
  if (!eq.is_var()) out.rhs.b = substituted(eq.rhs.b, from, to);
  return out;
}

// Rule (a): first var-var equation (in insertion order) whose left side
// occurs in another equation. Rewrites all other occurrences.
bool apply_rule_a(EquationSet& eqs, RuleCounts& counts, SolverObserver* obs) {
  FlatEquation def{};
  bool found = false;
  eqs.for_each([&](const EquationSet::Entry& e) {
    if (found || !e.eq.is_var()) return;
    bool occurs_elsewhere = false;
    eqs.for_each([&](const EquationSet::Entry& other) {
      if (occurs_elsewhere || other.eq == e.eq) return;
      if (other.eq.mentions(e.eq.lhs)) occurs_elsewhere = true;
    });
    if (occurs_elsewhere) {
      def = e.eq;
      found = true;
    }
  });
  if (!found) return false;

  std::vector<FlatEquation> consumed;
  eqs.for_each([&](const EquationSet::Entry& e) {
    if (e.eq == def) return;
    if (e.eq.mentions(def.lhs)) consumed.push_back(e.eq);
  });
  std::vector<FlatEquation> produced;
  produced.reserve(consumed.size());
  for (const auto& eq : consumed) {
    eqs.erase(eq);
    FlatEquation rewritten = substitute(eq, def.lhs, def.rhs.a);
    produced.push_back(rewritten);
    eqs.insert(rewritten);  // may collapse into an existing equation or vanish
  }
  ++counts.a;
  if (obs) obs->on_rule('a', def.lhs, consumed, produced);
  return true;
}

// Reused between fixpoint iterations; only ever read after a fresh assign.
struct ScanScratch {
  std::vector<std::uint32_t> first;
  std::vector<FlatEquation> ordered;
  std::vector<std::uint8_t> has_sum;
  std::vector<std::uint64_t> prod_serial;
};

// Rules (b)/(c): two operator equations of the same kind with one left-hand
// side. Keeps the older equation and equates the arguments of the newer one.
bool apply_rule_bc(EquationSet& eqs, RhsKind kind, RuleCounts& counts,
                   SolverObserver* obs, ScanScratch& scratch) {
  const std::uint32_t bound = id_upper_bound(eqs);
  scratch.first.assign(bound, UINT32_MAX);
  scratch.ordered.clear();
  FlatEquation keep{}, drop{};
  bool found = false;
  eqs.for_each([&](const EquationSet::Entry& e) {
    if (found || e.eq.rhs.kind != kind) return;
    std::uint32_t lhs = e.eq.lhs.raw();
    if (scratch.first[lhs] == UINT32_MAX) {
      scratch.first[lhs] = static_cast<std::uint32_t>(scratch.ordered.size());
      scratch.ordered.push_back(e.eq);
      return;
    }
    keep = scratch.ordered[scratch.first[lhs]];
    drop = e.eq;
    found = true;
  });
  if (!found) return false;

  eqs.erase(drop);
  std::vector<FlatEquation> produced = {
      FlatEquation::var_eq(keep.rhs.a, drop.rhs.a),
      FlatEquation::var_eq(keep.rhs.b, drop.rhs.b)};
  for (const auto& eq : produced) eqs.insert(eq);
  if (kind == RhsKind::Prod)
    ++counts.b;
  else
    ++counts.c;
  if (obs) obs->on_rule(kind == RhsKind::Prod ? 'b' : 'c', keep.lhs, {drop}, produced);
  return true;
}

void simplify_inplace(EquationSet& eqs, RuleCounts& counts, SolverObserver* obs,
                      ScanScratch& scratch) {
  for (;;) {
    if (apply_rule_a(eqs, counts, obs)) continue;
    if (apply_rule_bc(eqs, RhsKind::Prod, counts, obs, scratch)) continue;
    if (apply_rule_bc(eqs, RhsKind::Sum, counts, obs, scratch)) continue;
    break;
  }
}

bool is_index_named(const std::string& name) {
  std::size_t end = name.size();
  while (end > 0 && (name[end - 1] == '1' || name[end - 1] == '2')) --end;
  if (end == 0) return false;  // digits only
  for (std::size_t i = 0; i < end; ++i)
    if (name[i] >= '0' && name[i] <= '9') return false;
  return true;
}

// Names for the two fresh variables of rule (d). When the multiplicand W is
// index-named, its children are W1 and W2 so that traces follow the x/y
// index notation; this is only done when both names are unused or when the
// very equation W = W1 + W2 is already present (then the split's new sum
// collapses into it). Anything else falls back to counter names, which keeps
// splits sound on inputs that happen to reuse index-style names.
std::pair<VariableId, VariableId> fresh_split_children(VariablePool& pool,
                                                       const EquationSet& eqs,
                                                       VariableId w) {
  const std::string& name = pool.name(w);
  if (is_index_named(name)) {
    std::string n1 = name + "1", n2 = name + "2";
    auto e1 = pool.lookup(n1), e2 = pool.lookup(n2);
    if (!e1 && !e2) return {pool.intern(n1), pool.intern(n2)};
    if (e1 && e2 && eqs.contains(FlatEquation::sum_eq(w, *e1, *e2)))
      return {*e1, *e2};
  }
  VariableId w1 = pool.fresh();
  VariableId w2 = pool.fresh();
  return {w1, w2};
}

struct PeakEquations {
  FlatEquation prod;
  FlatEquation sum;
};

std::optional<PeakEquations> find_peak_equations(const EquationSet& eqs,
                                                 VariableId peak) {
  std::optional<FlatEquation> prod, sum;
  eqs.for_each([&](const EquationSet::Entry& e) {
    if (e.eq.lhs != peak) return;
    if (e.eq.is_prod()) prod = e.eq;
    if (e.eq.is_sum()) sum = e.eq;
  });
  if (!prod || !sum) return std::nullopt;
  return PeakEquations{*prod, *sum};
}

void split_inplace(VariablePool& pool, EquationSet& eqs, VariableId peak,
                   SolverObserver* obs) {
  auto found = find_peak_equations(eqs, peak);
  if (!found)
    throw std::invalid_argument("split_peak: " + pool.name(peak) +
                                " is not a peak");
  const VariableId v = found->prod.rhs.a;
  const VariableId w = found->prod.rhs.b;
  const VariableId x = found->sum.rhs.a;
  const VariableId y = found->sum.rhs.b;
  auto [w1, w2] = fresh_split_children(pool, eqs, w);

  eqs.erase(found->sum);
  std::vector<FlatEquation> produced = {FlatEquation::sum_eq(w, w1, w2),
                                        FlatEquation::prod_eq(x, v, w1),
                                        FlatEquation::prod_eq(y, v, w2)};
  for (const auto& eq : produced) eqs.insert(eq);
  if (obs) obs->on_rule('d', peak, {found->sum}, produced);
}

std::optional<VariableId> select_peak_impl(const EquationSet& eqs,
                                           ScanScratch& scratch) {
  const std::uint32_t bound = id_upper_bound(eqs);
  scratch.has_sum.assign(bound, 0);
  scratch.prod_serial.assign(bound, UINT64_MAX);
  eqs.for_each([&](const EquationSet::Entry& e) {
    if (e.eq.is_sum()) scratch.has_sum[e.eq.lhs.raw()] = 1;
    if (e.eq.is_prod()) scratch.prod_serial[e.eq.lhs.raw()] = e.serial;
  });
  std::optional<VariableId> best;
  std::uint64_t best_serial = UINT64_MAX;
  for (std::uint32_t id = 0; id < bound; ++id) {
    if (!scratch.has_sum[id] || scratch.prod_serial[id] == UINT64_MAX) continue;
    if (scratch.prod_serial[id] < best_serial) {
      best_serial = scratch.prod_serial[id];
      best = VariableId(id);
    }
  }
  return best;
}

TriangularSubstitution extract_mgu_impl(const EquationSet& eqs) {
  const std::uint32_t bound = id_upper_bound(eqs);
  constexpr std::uint32_t kNone = UINT32_MAX;
  std::vector<std::uint32_t> def_of(bound, kNone);
  std::vector<FlatEquation> defs;
  eqs.for_each([&](const EquationSet::Entry& e) {
    std::uint32_t lhs = e.eq.lhs.raw();
    if (def_of[lhs] != kNone)
      throw std::invalid_argument("extract_mgu: variable defined twice (peak left)");
    def_of[lhs] = static_cast<std::uint32_t>(defs.size());
    defs.push_back(e.eq);
  });

  // Reverse post-order DFS gives an order where every right-hand side only
  // references later entries or free variables.
  enum : std::uint8_t { White, Gray, Black };
  std::vector<std::uint8_t> color(bound, White);
  std::vector<FlatEquation> post;
  post.reserve(defs.size());
  std::vector<std::pair<std::uint32_t, int>> stack;  // (var id, next child 0..1)
  for (std::uint32_t root = 0; root < bound; ++root) {
    if (def_of[root] == kNone || color[root] != White) continue;
    color[root] = Gray;
    stack.emplace_back(root, 0);
    while (!stack.empty()) {
      auto& [v, next] = stack.back();
      const FlatEquation& def = defs[def_of[v]];
      int arity = def.is_var() ? 1 : 2;
      if (next == arity) {
        color[v] = Black;
        post.push_back(def);
        stack.pop_back();
        continue;
      }
      VariableId child = (next == 0) ? def.rhs.a : def.rhs.b;
      ++next;
      std::uint32_t c = child.raw();
      if (def_of[c] == kNone) continue;  // free variable
      if (color[c] == Gray)
        throw std::invalid_argument("extract_mgu: cyclic system");
      if (color[c] == White) {
        color[c] = Gray;
        stack.emplace_back(c, 0);
      }
    }
  }

  std::vector<TriangularSubstitution::Entry> entries;
  entries.reserve(post.size());
  for (auto it = post.rbegin(); it != post.rend(); ++it)
    entries.push_back({it->lhs, it->rhs});
  return TriangularSubstitution::from_entries(std::move(entries));
}

}  // namespace

std::pair<SimpleSystem, RuleCounts> simplify_fixpoint(EquationSet eqs,
                                                      SolverObserver* obs) {
  RuleCounts counts;
  ScanScratch scratch;
  simplify_inplace(eqs, counts, obs, scratch);
  return {SimpleSystem::adopt_unchecked(std::move(eqs)), counts};
}

EquationSet split_peak(VariablePool& pool, const SimpleSystem& s, VariableId peak,
                       SolverObserver* obs) {
  EquationSet eqs = s.equations();
  split_inplace(pool, eqs, peak, obs);
  return eqs;
}

SimpleSystem sum_transformation(VariablePool& pool, const SimpleSystem& s,
                                VariableId peak, RuleCounts* counts,
                                SolverObserver* obs) {
  EquationSet eqs = s.equations();
  split_inplace(pool, eqs, peak, obs);
  RuleCounts local;
  ScanScratch scratch;
  simplify_inplace(eqs, counts ? *counts : local, obs, scratch);
  return SimpleSystem::adopt_unchecked(std::move(eqs));
}

std::optional<VariableId> select_peak(const SimpleSystem& s) {
  ScanScratch scratch;
  return select_peak_impl(s.equations(), scratch);
}

TriangularSubstitution extract_mgu(const SimpleSystem& s) {
  return extract_mgu_impl(s.equations());
}

std::optional<int> index_level(const std::string& name) {
  if (name.empty() || (name[0] != 'x' && name[0] != 'y')) return std::nullopt;
  for (std::size_t i = 1; i < name.size(); ++i)
    if (name[i] != '1' && name[i] != '2') return std::nullopt;
  return static_cast<int>(name.size());  // base letter is level 1
}

SolveReport unify(VariablePool& pool, const SimpleSystem& input,
                  const SolverOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  if (auto violation = validate_simple(input, pool))
    throw std::invalid_argument("unify: input is not simple: " + *violation);

  SolveReport report;
  EquationSet eqs = input.equations();
  eqs.for_each([&](const EquationSet::Entry& e) {
    if (e.eq.is_prod()) ++report.m_input;
    if (e.eq.is_sum()) ++report.p_input;
  });
  if (opts.observer) opts.observer->on_simple(eqs);

  bool levels_tracked = true;
  CycleChecker checker;
  ScanScratch scratch;
  for (;;) {
    CycleCheck cycle = checker.check(eqs);
    if (cycle == CycleCheck::Dependency) {
      report.outcome = FailDependencyCycle{};
      break;
    }
    if (cycle == CycleCheck::Propagation) {
      report.outcome = FailPropagationCycle{};
      break;
    }
    std::optional<VariableId> peak = select_peak_impl(eqs, scratch);
    if (!peak) {
      report.outcome = Unified{extract_mgu_impl(eqs)};
      break;
    }
    if (report.sum_transformations >= opts.max_transformations) {
      report.outcome = BudgetExceeded{};
      break;
    }
    split_inplace(pool, eqs, *peak, opts.observer);
    simplify_inplace(eqs, report.rules, opts.observer, scratch);
    ++report.sum_transformations;
    report.peak_sequence.push_back(*peak);
    if (levels_tracked) {
      if (auto level = index_level(pool.name(*peak))) {
        ++report.per_level_transformations[*level];
      } else {
        levels_tracked = false;
        report.per_level_transformations.clear();
      }
    }
    if (opts.observer) opts.observer->on_simple(eqs);
  }

  report.wall_time = std::chrono::steady_clock::now() - start;
  return report;
}

}  // namespace dunify
