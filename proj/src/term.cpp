#include "dunify/term.hpp"

#include <stdexcept>

namespace dunify {

namespace {

struct PtrPairHash {
  std::size_t operator()(const std::pair<const void*, const void*>& p) const {
    auto a = reinterpret_cast<std::uintptr_t>(p.first);
    auto b = reinterpret_cast<std::uintptr_t>(p.second);
    return std::hash<std::uintptr_t>{}(a * 0x9e3779b97f4a7c15ull ^ b);
  }
};

}  // namespace

Term Term::var(VariableId v) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Var;
  n->var = v;
  return Term(std::move(n));
}

Term Term::sum(Term left, Term right) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Sum;
  n->left = std::move(left.node_);
  n->right = std::move(right.node_);
  return Term(std::move(n));
}

Term Term::prod(Term left, Term right) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Prod;
  n->left = std::move(left.node_);
  n->right = std::move(right.node_);
  return Term(std::move(n));
}

VariableId Term::var_id() const {
  if (!is_var()) throw std::logic_error("var_id on operator node");
  return node_->var;
}

Term Term::left() const {
  if (is_var()) throw std::logic_error("left of a variable");
  return Term(node_->left);
}

Term Term::right() const {
  if (is_var()) throw std::logic_error("right of a variable");
  return Term(node_->right);
}

bool operator==(const Term& a, const Term& b) {
  // Structural equality with sharing-aware memoization, so comparing two
  // expanded DAGs does not retraverse shared subterms exponentially often.
  std::unordered_set<std::pair<const void*, const void*>, PtrPairHash> equal_memo;
  struct Rec {
    std::unordered_set<std::pair<const void*, const void*>, PtrPairHash>& memo;
    bool run(const Term& x, const Term& y) {
      if (x.node_key() == y.node_key()) return true;
      if (x.kind() != y.kind()) return false;
      if (x.is_var()) return x.var_id() == y.var_id();
      auto key = std::make_pair(x.node_key(), y.node_key());
      if (memo.count(key)) return true;
      memo.insert(key);
      if (!run(x.left(), y.left()) || !run(x.right(), y.right())) {
        // A failed comparison ends the whole equality check, so a stale
        // memo entry can never be observed.
        return false;
      }
      return true;
    }
  } rec{equal_memo};
  return rec.run(a, b);
}

void Substitution::bind(VariableId v, Term t) {
  bindings_.insert_or_assign(v, std::move(t));
}

const Term* Substitution::lookup(VariableId v) const {
  auto it = bindings_.find(v);
  return it == bindings_.end() ? nullptr : &it->second;
}

bool Substitution::is_idempotent() const {
  std::unordered_set<VariableId> range_vars;
  for (const auto& [v, t] : bindings_) collect_variables(t, range_vars);
  for (const auto& [v, t] : bindings_)
    if (range_vars.count(v)) return false;
  return true;
}

Term apply_substitution(const Substitution& s, const Term& t) {
  std::unordered_map<const void*, Term> memo;
  struct Rec {
    const Substitution& s;
    std::unordered_map<const void*, Term>& memo;
    Term run(const Term& t) {
      if (auto it = memo.find(t.node_key()); it != memo.end()) return it->second;
      Term result = [&] {
        if (t.is_var()) {
          if (const Term* b = s.lookup(t.var_id())) return *b;
          return t;
        }
        Term l = run(t.left());
        Term r = run(t.right());
        return t.is_sum() ? Term::sum(l, r) : Term::prod(l, r);
      }();
      memo.emplace(t.node_key(), result);
      return result;
    }
  } rec{s, memo};
  return rec.run(t);
}

Term NormalizeContext::normalize(const Term& t) {
  roots_.push_back(t);
  return norm(t);
}

Term NormalizeContext::norm(const Term& t) {
  if (auto it = norm_memo_.find(t.node_key()); it != norm_memo_.end())
    return it->second;
  Term result = [&] {
    if (t.is_var()) return t;
    Term l = norm(t.left());
    Term r = norm(t.right());
    if (t.is_sum()) return Term::sum(l, r);
    return distribute(l, r);
  }();
  norm_memo_.emplace(t.node_key(), result);
  return result;
}

// Product of two normal forms: push p over sums in q.
Term NormalizeContext::distribute(const Term& p, const Term& q) {
  if (!q.is_sum()) return Term::prod(p, q);
  auto key = std::make_pair(p.node_key(), q.node_key());
  if (auto it = dist_memo_.find(key); it != dist_memo_.end()) return it->second;
  Term result = Term::sum(distribute(p, q.left()), distribute(p, q.right()));
  dist_memo_.emplace(key, result);
  return result;
}

Term normalize(const Term& t) {
  NormalizeContext ctx;
  return ctx.normalize(t);
}

bool is_normal_form(const Term& t) {
  std::unordered_set<const void*> seen;
  struct Rec {
    std::unordered_set<const void*>& seen;
    bool run(const Term& t) {
      if (t.is_var()) return true;
      if (seen.count(t.node_key())) return true;
      seen.insert(t.node_key());
      if (t.is_prod() && t.right().is_sum()) return false;
      return run(t.left()) && run(t.right());
    }
  } rec{seen};
  return rec.run(t);
}

bool equal_mod_theory(const Term& a, const Term& b) {
  NormalizeContext ctx;
  return ctx.normalize(a) == ctx.normalize(b);
}

bool check_unifier(const TermPairs& original, const Substitution& s) {
  NormalizeContext ctx;
  for (const auto& [lhs, rhs] : original) {
    Term l = ctx.normalize(apply_substitution(s, lhs));
    Term r = ctx.normalize(apply_substitution(s, rhs));
    if (!(l == r)) return false;
  }
  return true;
}

void collect_variables(const Term& t, std::unordered_set<VariableId>& out) {
  std::unordered_set<const void*> seen;
  struct Rec {
    std::unordered_set<VariableId>& out;
    std::unordered_set<const void*>& seen;
    void run(const Term& t) {
      if (t.is_var()) {
        out.insert(t.var_id());
        return;
      }
      if (!seen.insert(t.node_key()).second) return;
      run(t.left());
      run(t.right());
    }
  } rec{out, seen};
  rec.run(t);
}

std::size_t term_depth(const Term& t) {
  std::unordered_map<const void*, std::size_t> memo;
  struct Rec {
    std::unordered_map<const void*, std::size_t>& memo;
    std::size_t run(const Term& t) {
      if (t.is_var()) return 0;
      if (auto it = memo.find(t.node_key()); it != memo.end()) return it->second;
      std::size_t d = 1 + std::max(run(t.left()), run(t.right()));
      memo.emplace(t.node_key(), d);
      return d;
    }
  } rec{memo};
  return rec.run(t);
}

std::size_t term_symbols(const Term& t) {
  std::unordered_map<const void*, std::size_t> memo;
  struct Rec {
    std::unordered_map<const void*, std::size_t>& memo;
    std::size_t run(const Term& t) {
      if (t.is_var()) return 1;
      if (auto it = memo.find(t.node_key()); it != memo.end()) return it->second;
      std::size_t n = 1 + run(t.left()) + run(t.right());
      memo.emplace(t.node_key(), n);
      return n;
    }
  } rec{memo};
  return rec.run(t);
}

}  // namespace dunify
