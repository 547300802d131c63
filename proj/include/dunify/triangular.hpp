#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <unordered_map>
#include <vector>

#include "dunify/flat.hpp"
#include "dunify/term.hpp"
#include "dunify/variable.hpp"

namespace dunify {

using BigInt = boost::multiprecision::cpp_int;

// Ordered solved form: each entry's right-hand side mentions only variables
// defined by later entries or free variables. Expanding later entries into
// earlier ones yields an idempotent substitution, without ever storing the
// (possibly exponential) expansion here.
class TriangularSubstitution {
 public:
  struct Entry {
    VariableId var;
    FlatRhs rhs;
  };

  TriangularSubstitution() = default;

  // Validates the triangular order.
  static TriangularSubstitution from_entries(std::vector<Entry> entries);

  const std::vector<Entry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  bool defines(VariableId v) const { return index_.count(v) != 0; }
  const FlatRhs* rhs_of(VariableId v) const;

  // Fully expanded idempotent substitution. Bindings share structure, so
  // the result is linear in the number of entries even when the expansions
  // printed as trees would be exponential.
  Substitution expand() const;

  // Symbol count of the fully expanded binding of v, computed by recurrence
  // without materializing the expansion. Free variables count as 1.
  BigInt expanded_size(VariableId v) const;

  // Depth of the fully expanded binding of v (variables have depth 0).
  BigInt expanded_depth(VariableId v) const;

 private:
  std::vector<Entry> entries_;
  std::unordered_map<VariableId, std::size_t> index_;
};

}  // namespace dunify
