#include "dunify/triangular.hpp"

#include <stdexcept>

namespace dunify {

TriangularSubstitution TriangularSubstitution::from_entries(
    std::vector<Entry> entries) {
  TriangularSubstitution ts;
  ts.entries_ = std::move(entries);
  for (std::size_t i = 0; i < ts.entries_.size(); ++i) {
    auto [it, fresh] = ts.index_.emplace(ts.entries_[i].var, i);
    if (!fresh)
      throw std::invalid_argument("triangular substitution: variable defined twice");
  }
  for (std::size_t i = 0; i < ts.entries_.size(); ++i) {
    const auto& e = ts.entries_[i];
    auto check = [&](VariableId v) {
      auto it = ts.index_.find(v);
      if (it != ts.index_.end() && it->second <= i)
        throw std::invalid_argument(
            "triangular substitution: entry references an earlier definition");
    };
    check(e.rhs.a);
    if (e.rhs.kind != RhsKind::Var) check(e.rhs.b);
  }
  return ts;
}

const FlatRhs* TriangularSubstitution::rhs_of(VariableId v) const {
  auto it = index_.find(v);
  return it == index_.end() ? nullptr : &entries_[it->second].rhs;
}

Substitution TriangularSubstitution::expand() const {
  Substitution s;
  std::unordered_map<VariableId, Term> built;
  auto term_for = [&](VariableId v) {
    auto it = built.find(v);
    return it == built.end() ? Term::var(v) : it->second;
  };
  for (auto it = entries_.rbegin(); it != entries_.rend(); ++it) {
    Term t = [&] {
      switch (it->rhs.kind) {
        case RhsKind::Var:
          return term_for(it->rhs.a);
        case RhsKind::Sum:
          return Term::sum(term_for(it->rhs.a), term_for(it->rhs.b));
        case RhsKind::Prod:
          return Term::prod(term_for(it->rhs.a), term_for(it->rhs.b));
      }
      return term_for(it->rhs.a);
    }();
    built.emplace(it->var, t);
    s.bind(it->var, t);
  }
  return s;
}

BigInt TriangularSubstitution::expanded_size(VariableId v) const {
  std::unordered_map<VariableId, BigInt> memo;
  // Entries only reference later entries, so one backward sweep settles
  // every variable this binding can reach.
  for (auto it = entries_.rbegin(); it != entries_.rend(); ++it) {
    auto value_of = [&](VariableId w) -> BigInt {
      auto found = memo.find(w);
      return found == memo.end() ? BigInt(1) : found->second;
    };
    switch (it->rhs.kind) {
      case RhsKind::Var:
        memo[it->var] = value_of(it->rhs.a);
        break;
      case RhsKind::Sum:
      case RhsKind::Prod:
        memo[it->var] = value_of(it->rhs.a) + value_of(it->rhs.b) + 1;
        break;
    }
  }
  auto it = memo.find(v);
  return it == memo.end() ? BigInt(1) : it->second;
}

BigInt TriangularSubstitution::expanded_depth(VariableId v) const {
  std::unordered_map<VariableId, BigInt> memo;
  for (auto it = entries_.rbegin(); it != entries_.rend(); ++it) {
    auto value_of = [&](VariableId w) -> BigInt {
      auto found = memo.find(w);
      return found == memo.end() ? BigInt(0) : found->second;
    };
    switch (it->rhs.kind) {
      case RhsKind::Var:
        memo[it->var] = value_of(it->rhs.a);
        break;
      case RhsKind::Sum:
      case RhsKind::Prod: {
        BigInt l = value_of(it->rhs.a), r = value_of(it->rhs.b);
        memo[it->var] = (l > r ? l : r) + 1;
        break;
      }
    }
  }
  auto it = memo.find(v);
  return it == memo.end() ? BigInt(0) : it->second;
}

}  // namespace dunify
