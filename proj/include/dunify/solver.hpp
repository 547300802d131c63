#pragma once

#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <variant>
#include <vector>

#include "dunify/flat.hpp"
#include "dunify/triangular.hpp"
#include "dunify/variable.hpp"

namespace dunify {

inline constexpr std::uint64_t kDefaultBudget = 1ull << 21;

struct Unified {
  TriangularSubstitution mgu;
};
struct FailDependencyCycle {};
struct FailPropagationCycle {};
struct BudgetExceeded {};

using SolveOutcome =
    std::variant<Unified, FailDependencyCycle, FailPropagationCycle, BudgetExceeded>;

struct RuleCounts {
  std::uint64_t a = 0, b = 0, c = 0;
};

struct SolveReport {
  SolveOutcome outcome = BudgetExceeded{};
  std::uint64_t sum_transformations = 0;
  RuleCounts rules;
  // Keyed by tree level (x and y sit at level 1). Populated only while every
  // peak follows x/y index naming; cleared otherwise.
  std::map<int, std::uint64_t> per_level_transformations;
  std::vector<VariableId> peak_sequence;
  std::chrono::duration<double, std::milli> wall_time{0};
  std::uint64_t m_input = 0;  // product equations in the initial system
  std::uint64_t p_input = 0;  // sum equations in the initial system

  bool unified() const { return std::holds_alternative<Unified>(outcome); }
  const TriangularSubstitution* mgu() const {
    auto* u = std::get_if<Unified>(&outcome);
    return u ? &u->mgu : nullptr;
  }
};

// Hooks for tracing and instrumented test runs. Callbacks fire while the
// solver mutates its working set; observers must not hold references into it.
class SolverObserver {
 public:
  virtual ~SolverObserver() = default;
  // One call per deduction rule application. tag is one of 'a','b','c','d'
  // or 't' for a trivial-equation deletion. context is the substituted
  // variable for (a), the shared left-hand side for (b)/(c), the peak for (d).
  virtual void on_rule(char tag, VariableId context,
                       const std::vector<FlatEquation>& consumed,
                       const std::vector<FlatEquation>& produced) {
    (void)tag, (void)context, (void)consumed, (void)produced;
  }
  // Fired with the full equation set each time it is (back) in simple form:
  // once on entry to unify and once after every sum transformation.
  virtual void on_simple(const EquationSet& eqs) { (void)eqs; }
};

struct SolverOptions {
  std::uint64_t max_transformations = kDefaultBudget;
  SolverObserver* observer = nullptr;
};

// Exhausts rules (a)-(c). Returns the resulting simple system and how often
// each rule fired.
std::pair<SimpleSystem, RuleCounts> simplify_fixpoint(EquationSet eqs,
                                                      SolverObserver* obs = nullptr);

// Rule (d) at the given peak: removes the peak's sum equation and adds the
// split sum plus the two new products. The result is generally not simple.
// Throws std::invalid_argument when `peak` is not a peak of s.
EquationSet split_peak(VariablePool& pool, const SimpleSystem& s, VariableId peak,
                       SolverObserver* obs = nullptr);

// split_peak followed by simplify_fixpoint.
SimpleSystem sum_transformation(VariablePool& pool, const SimpleSystem& s,
                                VariableId peak, RuleCounts* counts = nullptr,
                                SolverObserver* obs = nullptr);

// The eligible peak whose product equation is oldest (FIFO), if any.
std::optional<VariableId> select_peak(const SimpleSystem& s);

// Back substitution on a simple, peakless, acyclic system. Throws
// std::invalid_argument on cyclic input or when a peak remains.
TriangularSubstitution extract_mgu(const SimpleSystem& s);

// The main loop: cycle checks on both graphs before the loop and before
// every transformation, sum transformations until no peak remains, then
// back substitution.
SolveReport unify(VariablePool& pool, const SimpleSystem& input,
                  const SolverOptions& opts = {});

// Level of an x/y index-named variable: x -> 1, x1 -> 2, y21 -> 3.
// nullopt for any other name.
std::optional<int> index_level(const std::string& name);

}  // namespace dunify
