#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include "dunify/flat.hpp"
#include "dunify/solver.hpp"
#include "dunify/term.hpp"
#include "dunify/triangular.hpp"
#include "dunify/variable.hpp"

namespace dunify {

// Subscript of an x/y family variable: a nonempty string over {1,2}.
class IndexString {
 public:
  explicit IndexString(std::string digits);
  const std::string& digits() const { return digits_; }
  std::size_t length() const { return digits_.size(); }
  friend bool operator==(const IndexString&, const IndexString&) = default;

 private:
  std::string digits_;
};

// Successor in right-to-left lexicographic order at the same length: the
// leftmost digit is least significant. Rejects all-2 input, which has no
// successor of its length.
IndexString revlex(const IndexString& i);

// The equation family sigma(n): for 0 <= i <= n the five schemas over
// x/y index variables and the unique multiplicand T. Simple by construction,
// with n+2 product equations and 2n+3 sum equations.
SimpleSystem gen_sigma(VariablePool& pool, unsigned n);

// Exact number of sum transformations a sigma(n) run takes: 2^(n+3) - (n+4).
BigInt predicted_steps(unsigned n);

// The quadratic bound m * p evaluated on sigma(n): (n+2) * (2n+3).
BigInt claimed_bound(unsigned n);

// The two-equation system Z = V2 + V3, Z = V1 * V3: not unifiable, its
// dependency graph stays acyclic, and its propagation graph has a self-loop.
SimpleSystem gen_failure_propagation(VariablePool& pool);

// Deterministic random simple system over at most num_vars variables. Half
// of the product equations are biased toward a T left factor.
SimpleSystem gen_random_simple(VariablePool& pool, std::uint64_t seed,
                               int num_vars, int num_eqs);

struct UnifiableWitness {
  Substitution witness;
};
struct NoUnifierUpToDepth {};
struct Inconclusive {};

using OracleResult = std::variant<UnifiableWitness, NoUnifierUpToDepth, Inconclusive>;

// Exhaustive search for a unifier that assigns every variable a normal-form
// term of at most the given depth over a pool of four fresh leaves.
// UnifiableWitness carries a verified assignment; NoUnifierUpToDepth means
// the whole space was exhausted; Inconclusive is returned only if the search
// tree exceeds branch_budget.
OracleResult bounded_unifier_oracle(VariablePool& pool, const SimpleSystem& s,
                                    int depth,
                                    std::uint64_t branch_budget = 1'000'000);

}  // namespace dunify
