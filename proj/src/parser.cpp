#include "dunify/parser.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace dunify {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

// Recursive-descent parser over one line.
//   term   := factor ('+' factor)*
//   factor := atom ('*' atom)*
//   atom   := identifier | '(' term ')'
class LineParser {
 public:
  LineParser(VariablePool& pool, std::string_view text, int line)
      : pool_(pool), text_(text), line_(line) {}

  Term parse_term_line() {
    Term t = parse_term();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return t;
  }

  Term parse_term() {
    Term t = parse_factor();
    for (;;) {
      skip_ws();
      if (!eat('+')) return t;
      t = Term::sum(t, parse_factor());
    }
  }

 private:
  Term parse_factor() {
    Term t = parse_atom();
    for (;;) {
      skip_ws();
      if (!eat('*')) return t;
      t = Term::prod(t, parse_atom());
    }
  }

  Term parse_atom() {
    skip_ws();
    if (pos_ >= text_.size()) fail("expected a term");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Term inner = parse_term();
      skip_ws();
      if (!eat(')')) fail("expected ')'");
      return inner;
    }
    if (!ident_start(c)) fail(std::string("unexpected character '") + c + "'");
    std::size_t start = pos_;
    while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
    return Term::var(pool_.intern(text_.substr(start, pos_ - start)));
  }

  void skip_ws() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t'))
      ++pos_;
  }

  bool eat(char c) {
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& msg) {
    throw ParseError(line_, static_cast<int>(pos_) + 1, msg);
  }

  VariablePool& pool_;
  std::string_view text_;
  int line_;
  std::size_t pos_ = 0;
};

// Strips comment and whitespace; returns false for lines with no content.
bool content_of(std::string_view line, std::string_view& out) {
  if (auto hash = line.find('#'); hash != std::string_view::npos)
    line = line.substr(0, hash);
  std::size_t end = line.size();
  while (end > 0 && std::isspace(static_cast<unsigned char>(line[end - 1]))) --end;
  line = line.substr(0, end);
  out = line;
  for (char c : line)
    if (!std::isspace(static_cast<unsigned char>(c))) return true;
  return false;
}

template <typename PerLine>
void for_each_content_line(std::string_view text, PerLine&& per_line) {
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t next = text.find('\n', pos);
    std::size_t end = next == std::string_view::npos ? text.size() : next;
    ++line_no;
    std::string_view content;
    if (content_of(text.substr(pos, end - pos), content))
      per_line(line_no, content);
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
}

std::pair<std::string_view, std::string_view> split_on_equals(
    std::string_view content, int line_no) {
  auto eq = content.find('=');
  if (eq == std::string_view::npos)
    throw ParseError(line_no, static_cast<int>(content.size()) + 1,
                     "expected '=' in equation");
  if (content.find('=', eq + 1) != std::string_view::npos)
    throw ParseError(line_no, static_cast<int>(content.find('=', eq + 1)) + 1,
                     "more than one '=' on a line");
  return {content.substr(0, eq), content.substr(eq + 1)};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return std::move(ss).str();
}

}  // namespace

TermPairs parse_equations(VariablePool& pool, std::string_view text) {
  TermPairs pairs;
  for_each_content_line(text, [&](int line_no, std::string_view content) {
    auto [lhs_text, rhs_text] = split_on_equals(content, line_no);
    Term lhs = LineParser(pool, lhs_text, line_no).parse_term_line();
    Term rhs = LineParser(pool, rhs_text, line_no).parse_term_line();
    pairs.emplace_back(lhs, rhs);
  });
  return pairs;
}

TermPairs parse_equations_file(VariablePool& pool, const std::string& path) {
  return parse_equations(pool, read_file(path));
}

Substitution parse_substitution(VariablePool& pool, std::string_view text) {
  Substitution s;
  for_each_content_line(text, [&](int line_no, std::string_view content) {
    auto [lhs_text, rhs_text] = split_on_equals(content, line_no);
    Term lhs = LineParser(pool, lhs_text, line_no).parse_term_line();
    if (!lhs.is_var())
      throw ParseError(line_no, 1, "binding left side must be a variable");
    if (s.lookup(lhs.var_id()))
      throw ParseError(line_no, 1,
                       "duplicate binding for " + pool.name(lhs.var_id()));
    s.bind(lhs.var_id(), LineParser(pool, rhs_text, line_no).parse_term_line());
  });
  return s;
}

Substitution parse_substitution_file(VariablePool& pool, const std::string& path) {
  return parse_substitution(pool, read_file(path));
}

namespace {

void render_rec(const Term& t, const VariablePool& pool, std::string& out) {
  if (t.is_var()) {
    out += pool.name(t.var_id());
    return;
  }
  const bool sum = t.is_sum();
  const Term l = t.left(), r = t.right();

  // Left child: products need parens under a product only if they are sums.
  bool paren_l = sum ? false : l.is_sum();
  // Right child: parenthesize same-or-lower precedence so that rendering is
  // parsed back to the identical tree.
  bool paren_r = sum ? r.is_sum() : !r.is_var();

  if (paren_l) out += '(';
  render_rec(l, pool, out);
  if (paren_l) out += ')';
  out += sum ? " + " : " * ";
  if (paren_r) out += '(';
  render_rec(r, pool, out);
  if (paren_r) out += ')';
}

}  // namespace

std::string render_term(const Term& t, const VariablePool& pool) {
  std::string out;
  render_rec(t, pool, out);
  return out;
}

std::string render_equation(const FlatEquation& eq, const VariablePool& pool) {
  return pool.name(eq.lhs) + " = " + render_term(eq.rhs_term(), pool);
}

std::string render_system(const SimpleSystem& s, const VariablePool& pool) {
  std::string out;
  s.equations().for_each([&](const EquationSet::Entry& e) {
    out += render_equation(e.eq, pool);
    out += '\n';
  });
  return out;
}

}  // namespace dunify
