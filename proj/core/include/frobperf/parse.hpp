#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "frobperf/errors.hpp"
#include "frobperf/polynomial.hpp"

namespace frobperf {

struct ParseError {
  std::size_t line = 1, column = 1;
  std::string message;
  std::vector<std::string> expected;
};

class parse_error : public structural_error {
public:
  explicit parse_error(ParseError e);
  const ParseError& details() const { return err_; }

private:
  ParseError err_;
};

// Token stream over the shared DSL surface syntax. Identifiers are
// [A-Za-z_][A-Za-z0-9_]*; `pi0-ring`, `gpd-close`, `gpd-verify` lex as single
// identifiers. Strings are double-quoted with no escapes. `#` starts a
// comment to end of line.
struct Token {
  enum class Kind { ident, integer, punct, string, newline, eof };
  Kind kind;
  std::string text;
  std::uint64_t value = 0; // for integer
  std::size_t line = 1, column = 1;
};

class Lexer {
public:
  explicit Lexer(std::string_view text);
  const Token& peek() const { return tokens_[pos_]; }
  const Token& peek2() const;
  Token next();
  bool at_end() const { return peek().kind == Token::Kind::eof; }
  // Skip newline tokens (used where line breaks are insignificant).
  void skip_newlines();

  [[noreturn]] void fail(const std::string& message,
                         std::vector<std::string> expected = {}) const;

private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

// Parse a polynomial expression from the lexer in the given ring. Stops at
// the first token that cannot extend the expression. Grammar:
//   expr    := term (('+'|'-') term)*
//   term    := factor ('*' factor)*
//   factor  := '-' factor | primary ('^' INT)?
//   primary := INT | IDENT | '(' expr ')'
Polynomial parse_polynomial_expr(Lexer& lx, const RingPtr& ring);

// Parse a complete string as one polynomial (the corering external surface).
Polynomial parse_polynomial(std::string_view text, const RingPtr& ring);

} // namespace frobperf
