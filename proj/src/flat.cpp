#include "dunify/flat.hpp"

#include <algorithm>

namespace dunify {

Term FlatEquation::rhs_term() const {
  switch (rhs.kind) {
    case RhsKind::Var:
      return Term::var(rhs.a);
    case RhsKind::Sum:
      return Term::sum(Term::var(rhs.a), Term::var(rhs.b));
    case RhsKind::Prod:
      return Term::prod(Term::var(rhs.a), Term::var(rhs.b));
  }
  return Term::var(rhs.a);
}

bool EquationSet::insert(const FlatEquation& eq) {
  if (eq.is_trivial()) return false;
  if (index_.count(eq)) return false;
  slots_.push_back(Slot{eq, next_serial_++, true});
  index_.emplace(eq, slots_.size() - 1);
  ++alive_;
  return true;
}

bool EquationSet::erase(const FlatEquation& eq) {
  auto it = index_.find(eq);
  if (it == index_.end()) return false;
  slots_[it->second].alive = false;
  index_.erase(it);
  --alive_;
  compact_if_needed();
  return true;
}

bool EquationSet::contains(const FlatEquation& eq) const {
  return index_.count(eq) != 0;
}

std::optional<std::uint64_t> EquationSet::serial_of(const FlatEquation& eq) const {
  auto it = index_.find(eq);
  if (it == index_.end()) return std::nullopt;
  return slots_[it->second].serial;
}

std::vector<FlatEquation> EquationSet::equations() const {
  std::vector<FlatEquation> out;
  out.reserve(alive_);
  for (const auto& slot : slots_)
    if (slot.alive) out.push_back(slot.eq);
  return out;
}

void EquationSet::compact_if_needed() {
  if (slots_.size() < 64 || alive_ * 2 > slots_.size()) return;
  std::vector<Slot> packed;
  packed.reserve(alive_);
  for (auto& slot : slots_)
    if (slot.alive) packed.push_back(std::move(slot));
  slots_ = std::move(packed);
  index_.clear();
  for (std::size_t i = 0; i < slots_.size(); ++i) index_.emplace(slots_[i].eq, i);
}

bool same_equations(const EquationSet& a, const EquationSet& b) {
  if (a.size() != b.size()) return false;
  bool same = true;
  a.for_each([&](const EquationSet::Entry& e) {
    if (!b.contains(e.eq)) same = false;
  });
  return same;
}

std::uint32_t id_upper_bound(const EquationSet& eqs) {
  std::uint32_t hi = 0;
  eqs.for_each([&](const EquationSet::Entry& e) {
    hi = std::max(hi, e.eq.lhs.raw() + 1);
    hi = std::max(hi, e.eq.rhs.a.raw() + 1);
    if (!e.eq.is_var()) hi = std::max(hi, e.eq.rhs.b.raw() + 1);
  });
  return hi;
}

TermPairs SimpleSystem::term_pairs() const {
  TermPairs pairs;
  pairs.reserve(eqs_.size());
  eqs_.for_each([&](const EquationSet::Entry& e) {
    pairs.emplace_back(Term::var(e.eq.lhs), e.eq.rhs_term());
  });
  return pairs;
}

std::optional<std::string> validate_simple(const EquationSet& eqs,
                                           const VariablePool& pool) {
  const std::uint32_t n = id_upper_bound(eqs);
  std::vector<std::uint8_t> has_sum(n, 0), has_prod(n, 0);
  std::vector<FlatEquation> var_eqs;
  std::optional<std::string> violation;

  eqs.for_each([&](const EquationSet::Entry& e) {
    if (violation) return;
    const auto& eq = e.eq;
    switch (eq.rhs.kind) {
      case RhsKind::Var:
        if (eq.is_trivial()) violation = "trivial equation " + pool.name(eq.lhs);
        var_eqs.push_back(eq);
        break;
      case RhsKind::Sum:
        if (has_sum[eq.lhs.raw()]++)
          violation = "two sum equations for " + pool.name(eq.lhs);
        break;
      case RhsKind::Prod:
        if (has_prod[eq.lhs.raw()]++)
          violation = "two product equations for " + pool.name(eq.lhs);
        break;
    }
  });
  if (violation) return violation;

  // Rule (a) must be inapplicable: the left side of a var-var equation may
  // not occur in any equation other than that definition itself.
  for (const FlatEquation& def : var_eqs) {
    eqs.for_each([&](const EquationSet::Entry& e) {
      if (violation) return;
      if (e.eq == def) return;
      if (e.eq.mentions(def.lhs))
        violation = "rule (a) applicable to " + pool.name(def.lhs);
    });
    if (violation) return violation;
  }
  return std::nullopt;
}

std::optional<std::string> validate_simple(const SimpleSystem& s,
                                           const VariablePool& pool) {
  return validate_simple(s.equations(), pool);
}

}  // namespace dunify
