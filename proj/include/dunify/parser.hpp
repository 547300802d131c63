#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "dunify/flat.hpp"
#include "dunify/term.hpp"
#include "dunify/variable.hpp"

namespace dunify {

// Parse failure with 1-based position information.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int col, const std::string& what)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(col) +
                           ": " + what),
        line_(line),
        col_(col) {}
  int line() const { return line_; }
  int col() const { return col_; }

 private:
  int line_, col_;
};

// Equation text: one `LHS = RHS` per line, terms over identifiers, `+`, `*`
// and parentheses; `*` binds tighter than `+`, both left-associative.
// `#` starts a line comment; blank lines are ignored.
TermPairs parse_equations(VariablePool& pool, std::string_view text);
TermPairs parse_equations_file(VariablePool& pool, const std::string& path);

// Substitution text: one `var = term` binding per line, same term grammar.
Substitution parse_substitution(VariablePool& pool, std::string_view text);
Substitution parse_substitution_file(VariablePool& pool, const std::string& path);

// Renderers. parse(render(x)) reproduces x exactly.
std::string render_term(const Term& t, const VariablePool& pool);
std::string render_equation(const FlatEquation& eq, const VariablePool& pool);
std::string render_system(const SimpleSystem& s, const VariablePool& pool);

}  // namespace dunify
