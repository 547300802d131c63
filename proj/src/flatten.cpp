#include "dunify/flatten.hpp"

#include <map>

#include "dunify/solver.hpp"

namespace dunify {

namespace {

struct TermKeyLess {
  bool operator()(const Term& a, const Term& b) const { return less(a, b); }
  static bool less(const Term& a, const Term& b) {
    if (a.kind() != b.kind()) return a.kind() < b.kind();
    if (a.is_var()) return a.var_id() < b.var_id();
    if (less(a.left(), b.left())) return true;
    if (less(b.left(), a.left())) return false;
    return less(a.right(), b.right());
  }
};

class Flattener {
 public:
  Flattener(VariablePool& pool, EquationSet& out) : pool_(pool), out_(out) {}

  // Name of a term: the variable itself, or a memoized fresh variable whose
  // defining equation is emitted on first sight.
  VariableId name_of(const Term& t) {
    if (t.is_var()) return t.var_id();
    if (auto it = memo_.find(t); it != memo_.end()) return it->second;
    VariableId a = name_of(t.left());
    VariableId b = name_of(t.right());
    VariableId w = pool_.fresh();
    memo_.emplace(t, w);
    out_.insert(t.is_sum() ? FlatEquation::sum_eq(w, a, b)
                           : FlatEquation::prod_eq(w, a, b));
    return w;
  }

  // Flat equation lhs = <top of t>, naming only proper subterms of t.
  void emit_defined_as(VariableId lhs, const Term& t) {
    if (t.is_var()) {
      out_.insert(FlatEquation::var_eq(lhs, t.var_id()));
      return;
    }
    VariableId a = name_of(t.left());
    VariableId b = name_of(t.right());
    out_.insert(t.is_sum() ? FlatEquation::sum_eq(lhs, a, b)
                           : FlatEquation::prod_eq(lhs, a, b));
  }

 private:
  VariablePool& pool_;
  EquationSet& out_;
  std::map<Term, VariableId, TermKeyLess> memo_;
};

}  // namespace

SimpleSystem flatten_system(VariablePool& pool, const TermPairs& input) {
  EquationSet flat;
  Flattener flattener(pool, flat);
  for (const auto& [lhs, rhs] : input) {
    if (lhs.is_var()) {
      flattener.emit_defined_as(lhs.var_id(), rhs);
    } else if (rhs.is_var()) {
      flattener.emit_defined_as(rhs.var_id(), lhs);
    } else {
      VariableId w = flattener.name_of(lhs);
      flattener.emit_defined_as(w, rhs);
    }
  }
  return simplify_fixpoint(std::move(flat)).first;
}

}  // namespace dunify
