#pragma once

#include <cstddef>
#include <memory>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "dunify/variable.hpp"

namespace dunify {

// Immutable binary term over variables, + and *. Copies share structure, so
// large expansions stay cheap as long as they are built with sharing.
// Equality is structural.
class Term {
 public:
  enum class Kind : std::uint8_t { Var, Sum, Prod };

  static Term var(VariableId v);
  static Term sum(Term left, Term right);
  static Term prod(Term left, Term right);

  Kind kind() const;
  bool is_var() const { return kind() == Kind::Var; }
  bool is_sum() const { return kind() == Kind::Sum; }
  bool is_prod() const { return kind() == Kind::Prod; }

  VariableId var_id() const;  // requires is_var()
  Term left() const;          // requires operator node
  Term right() const;

  // Stable identity of the underlying node, for memo tables.
  const void* node_key() const { return node_.get(); }

  friend bool operator==(const Term& a, const Term& b);
  friend bool operator!=(const Term& a, const Term& b) { return !(a == b); }

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct Term::Node {
  Kind kind;
  VariableId var;
  std::shared_ptr<const Node> left;
  std::shared_ptr<const Node> right;
};

inline Term::Kind Term::kind() const { return node_->kind; }

// Finite map from variables to terms, applied simultaneously.
class Substitution {
 public:
  void bind(VariableId v, Term t);
  const Term* lookup(VariableId v) const;
  const std::unordered_map<VariableId, Term>& bindings() const {
    return bindings_;
  }
  bool empty() const { return bindings_.empty(); }
  std::size_t size() const { return bindings_.size(); }

  // True when no domain variable occurs in any range term.
  bool is_idempotent() const;

 private:
  std::unordered_map<VariableId, Term> bindings_;
};

using TermPairs = std::vector<std::pair<Term, Term>>;

// Replaces every free occurrence of a domain variable by its binding, all at
// once; other variables are untouched.
Term apply_substitution(const Substitution& s, const Term& t);

// Shared rewrite caches for normalization. One context can serve several
// normalize calls so that identical subterms normalize once and compare by
// pointer afterwards.
class NormalizeContext {
 public:
  Term normalize(const Term& t);

 private:
  struct PtrPairHash {
    std::size_t operator()(const std::pair<const void*, const void*>& p) const {
      auto a = reinterpret_cast<std::uintptr_t>(p.first);
      auto b = reinterpret_cast<std::uintptr_t>(p.second);
      return std::hash<std::uintptr_t>{}(a * 0x9e3779b97f4a7c15ull ^ b);
    }
  };
  Term norm(const Term& t);
  Term distribute(const Term& p, const Term& q);  // p, q already normal
  // Memo keys are node addresses. Pinning every normalized root keeps all
  // keyed nodes alive, so addresses cannot be recycled while the context is.
  std::vector<Term> roots_;
  std::unordered_map<const void*, Term> norm_memo_;
  std::unordered_map<std::pair<const void*, const void*>, Term, PtrPairHash>
      dist_memo_;
};

// Rewrites x*(y+z) -> x*y + x*z to fixpoint. The result contains no product
// whose right child is a sum and is equal to t modulo the theory.
Term normalize(const Term& t);

// True iff the term contains no product with a sum as right child.
bool is_normal_form(const Term& t);

// Decides the word problem by comparing normal forms.
bool equal_mod_theory(const Term& a, const Term& b);

// True iff s makes both sides of every pair equal modulo the theory.
// Expects an idempotent substitution (it is applied once).
bool check_unifier(const TermPairs& original, const Substitution& s);

// Helpers used across modules and tests.
void collect_variables(const Term& t, std::unordered_set<VariableId>& out);
std::size_t term_depth(const Term& t);   // variables have depth 0
std::size_t term_symbols(const Term& t); // counted as a tree, memoized over shared nodes

}  // namespace dunify
