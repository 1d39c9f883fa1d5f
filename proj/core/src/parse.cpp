#include "frobperf/parse.hpp"

#include <cctype>
#include <sstream>

namespace frobperf {

namespace {

std::string render(const ParseError& e) {
  std::ostringstream os;
  os << "parse error at " << e.line << ":" << e.column << ": " << e.message;
  // a one-element expectation that the message already spells out adds nothing
  if (!e.expected.empty() &&
      !(e.expected.size() == 1 &&
        e.message.find(e.expected.front()) != std::string::npos)) {
    os << " (expected ";
    for (std::size_t i = 0; i < e.expected.size(); ++i) {
      if (i) os << " | ";
      os << e.expected[i];
    }
    os << ")";
  }
  return os.str();
}

} // namespace

parse_error::parse_error(ParseError e) : structural_error(render(e)), err_(std::move(e)) {}

Lexer::Lexer(std::string_view text) {
  std::size_t line = 1, col = 1;
  std::size_t i = 0;
  auto bump = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (text[i + k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    i += n;
  };
  while (i < text.size()) {
    char c = text[i];
    std::size_t tl = line, tc = col;
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') bump(1);
      continue;
    }
    if (c == '\n') {
      tokens_.push_back({Token::Kind::newline, "\n", 0, tl, tc});
      bump(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      bump(1);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      std::string s(text.substr(i, j - i));
      Token t{Token::Kind::integer, s, 0, tl, tc};
      t.value = std::stoull(s);
      tokens_.push_back(std::move(t));
      bump(j - i);
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
        ++j;
      std::string s(text.substr(i, j - i));
      // Command names containing '-': pi0-ring, gpd-close, gpd-verify.
      if ((s == "pi0" || s == "gpd") && j < text.size() && text[j] == '-') {
        std::size_t k = j + 1;
        while (k < text.size() &&
               (std::isalnum(static_cast<unsigned char>(text[k])) || text[k] == '_'))
          ++k;
        std::string full(text.substr(i, k - i));
        if (full == "pi0-ring" || full == "gpd-close" || full == "gpd-verify") {
          s = full;
          j = k;
        }
      }
      tokens_.push_back({Token::Kind::ident, std::move(s), 0, tl, tc});
      bump(j - i);
      continue;
    }
    if (c == '"') {
      std::size_t j = i + 1;
      while (j < text.size() && text[j] != '"' && text[j] != '\n') ++j;
      if (j >= text.size() || text[j] != '"')
        throw parse_error({tl, tc, "unterminated string literal", {}});
      tokens_.push_back(
          {Token::Kind::string, std::string(text.substr(i + 1, j - i - 1)), 0, tl, tc});
      bump(j - i + 1);
      continue;
    }
    if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') {
      tokens_.push_back({Token::Kind::punct, "->", 0, tl, tc});
      bump(2);
      continue;
    }
    static const std::string punct = "+-*^()[]{}/=,;:.";
    if (punct.find(c) != std::string::npos) {
      tokens_.push_back({Token::Kind::punct, std::string(1, c), 0, tl, tc});
      bump(1);
      continue;
    }
    throw parse_error({tl, tc, std::string("unexpected character '") + c + "'", {}});
  }
  tokens_.push_back({Token::Kind::eof, "", 0, line, col});
}

const Token& Lexer::peek2() const {
  std::size_t j = pos_ + 1 < tokens_.size() ? pos_ + 1 : tokens_.size() - 1;
  return tokens_[j];
}

Token Lexer::next() {
  Token t = tokens_[pos_];
  if (pos_ + 1 < tokens_.size()) ++pos_;
  return t;
}

void Lexer::skip_newlines() {
  while (peek().kind == Token::Kind::newline) next();
}

void Lexer::fail(const std::string& message, std::vector<std::string> expected) const {
  const Token& t = peek();
  throw parse_error({t.line, t.column, message, std::move(expected)});
}

namespace {

bool is_punct(const Token& t, const char* s) {
  return t.kind == Token::Kind::punct && t.text == s;
}

Polynomial parse_primary(Lexer& lx, const RingPtr& ring);

Polynomial parse_factor(Lexer& lx, const RingPtr& ring) {
  if (is_punct(lx.peek(), "-")) {
    lx.next();
    return -parse_factor(lx, ring);
  }
  Polynomial base = parse_primary(lx, ring);
  if (is_punct(lx.peek(), "^")) {
    lx.next();
    if (lx.peek().kind != Token::Kind::integer)
      lx.fail("exponent must be a non-negative integer", {"integer"});
    std::uint64_t e = lx.next().value;
    return base.pow(e);
  }
  return base;
}

Polynomial parse_term(Lexer& lx, const RingPtr& ring) {
  Polynomial acc = parse_factor(lx, ring);
  while (is_punct(lx.peek(), "*")) {
    lx.next();
    acc = acc * parse_factor(lx, ring);
  }
  return acc;
}

Polynomial parse_primary(Lexer& lx, const RingPtr& ring) {
  const Token& t = lx.peek();
  if (t.kind == Token::Kind::integer) {
    std::uint64_t v = lx.next().value;
    return Polynomial::constant(ring, static_cast<std::uint32_t>(v % ring->field.p()));
  }
  if (t.kind == Token::Kind::ident) {
    auto idx = ring->var_index(t.text);
    if (!idx) lx.fail("unknown variable '" + t.text + "'", {"variable name"});
    lx.next();
    return Polynomial::variable(ring, *idx);
  }
  if (is_punct(t, "(")) {
    lx.next();
    Polynomial inner = parse_polynomial_expr(lx, ring);
    if (!is_punct(lx.peek(), ")")) lx.fail("unbalanced parenthesis", {")"});
    lx.next();
    return inner;
  }
  lx.fail("expected a polynomial", {"integer", "variable", "("});
}

} // namespace

Polynomial parse_polynomial_expr(Lexer& lx, const RingPtr& ring) {
  Polynomial acc = parse_term(lx, ring);
  while (is_punct(lx.peek(), "+") || is_punct(lx.peek(), "-")) {
    bool plus = lx.next().text == "+";
    Polynomial rhs = parse_term(lx, ring);
    acc = plus ? acc + rhs : acc - rhs;
  }
  return acc;
}

Polynomial parse_polynomial(std::string_view text, const RingPtr& ring) {
  Lexer lx(text);
  lx.skip_newlines();
  Polynomial p = parse_polynomial_expr(lx, ring);
  lx.skip_newlines();
  if (!lx.at_end()) lx.fail("trailing input after polynomial", {"end of input"});
  return p;
}

} // namespace frobperf
