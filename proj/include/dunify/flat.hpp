#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "dunify/term.hpp"
#include "dunify/variable.hpp"

namespace dunify {

enum class RhsKind : std::uint8_t { Var, Sum, Prod };

struct FlatRhs {
  RhsKind kind = RhsKind::Var;
  VariableId a;
  VariableId b;  // unused for RhsKind::Var
  friend bool operator==(const FlatRhs&, const FlatRhs&) = default;
};

// One equation of the three flat shapes: x = y, x = y + z, x = y * z.
struct FlatEquation {
  VariableId lhs;
  FlatRhs rhs;
  friend bool operator==(const FlatEquation&, const FlatEquation&) = default;

  static FlatEquation var_eq(VariableId l, VariableId v) {
    return {l, {RhsKind::Var, v, VariableId()}};
  }
  static FlatEquation sum_eq(VariableId l, VariableId a, VariableId b) {
    return {l, {RhsKind::Sum, a, b}};
  }
  static FlatEquation prod_eq(VariableId l, VariableId a, VariableId b) {
    return {l, {RhsKind::Prod, a, b}};
  }

  bool is_var() const { return rhs.kind == RhsKind::Var; }
  bool is_sum() const { return rhs.kind == RhsKind::Sum; }
  bool is_prod() const { return rhs.kind == RhsKind::Prod; }
  bool is_trivial() const { return is_var() && lhs == rhs.a; }
  bool mentions(VariableId v) const {
    return lhs == v || rhs.a == v || (!is_var() && rhs.b == v);
  }
  Term rhs_term() const;
};

struct FlatEquationHash {
  std::size_t operator()(const FlatEquation& e) const noexcept {
    std::uint64_t h = e.lhs.raw();
    h = h * 0x9e3779b97f4a7c15ull + static_cast<std::uint64_t>(e.rhs.kind);
    h = h * 0x9e3779b97f4a7c15ull + e.rhs.a.raw();
    h = h * 0x9e3779b97f4a7c15ull + (e.is_var() ? 0u : e.rhs.b.raw());
    return static_cast<std::size_t>(h ^ (h >> 32));
  }
};

// Insertion-ordered set of flat equations with stable creation serials.
// Structural duplicates collapse into the existing entry and trivial
// equations x = x are dropped on sight.
class EquationSet {
 public:
  struct Entry {
    FlatEquation eq;
    std::uint64_t serial;
  };

  bool insert(const FlatEquation& eq);  // false when dropped (duplicate/trivial)
  bool erase(const FlatEquation& eq);
  bool contains(const FlatEquation& eq) const;
  std::optional<std::uint64_t> serial_of(const FlatEquation& eq) const;

  std::size_t size() const { return alive_; }
  bool empty() const { return alive_ == 0; }

  std::vector<FlatEquation> equations() const;  // insertion order

  template <typename F>
  void for_each(F&& f) const {  // f(const Entry&), insertion order
    for (const auto& slot : slots_)
      if (slot.alive) f(Entry{slot.eq, slot.serial});
  }

 private:
  struct Slot {
    FlatEquation eq;
    std::uint64_t serial;
    bool alive;
  };
  void compact_if_needed();

  std::vector<Slot> slots_;
  std::unordered_map<FlatEquation, std::size_t, FlatEquationHash> index_;
  std::size_t alive_ = 0;
  std::uint64_t next_serial_ = 0;
};

bool same_equations(const EquationSet& a, const EquationSet& b);

// Largest variable id mentioned plus one; 0 for an empty set.
std::uint32_t id_upper_bound(const EquationSet& eqs);

// A flat system on which rules (a)-(c) are exhausted. Instances come out of
// simplify_fixpoint; adopt_unchecked is for generators whose output is
// simple by construction.
class SimpleSystem {
 public:
  SimpleSystem() = default;
  static SimpleSystem adopt_unchecked(EquationSet eqs) {
    return SimpleSystem(std::move(eqs));
  }
  const EquationSet& equations() const { return eqs_; }
  std::size_t size() const { return eqs_.size(); }

  // The system as term equations, for theory-level checks.
  TermPairs term_pairs() const;

 private:
  explicit SimpleSystem(EquationSet e) : eqs_(std::move(e)) {}
  EquationSet eqs_;
};

// Returns a violation description, or nullopt when every simple-system
// invariant holds: no var-var equation whose left side occurs elsewhere,
// and per variable at most one sum and at most one product equation.
std::optional<std::string> validate_simple(const EquationSet& eqs,
                                           const VariablePool& pool);
std::optional<std::string> validate_simple(const SimpleSystem& s,
                                           const VariablePool& pool);

}  // namespace dunify
