#pragma once

#include "dunify/flat.hpp"
#include "dunify/term.hpp"
#include "dunify/variable.hpp"

namespace dunify {

// Turns arbitrary term equations into a simple system: one fresh variable
// per non-variable proper subterm (identical subterms share one), then
// rules (a)-(c) to fixpoint. The result is unifiable iff the input is, and
// every unifier of the result restricted to the input variables unifies the
// input.
SimpleSystem flatten_system(VariablePool& pool, const TermPairs& input);

}  // namespace dunify
