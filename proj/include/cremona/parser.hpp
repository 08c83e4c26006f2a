#pragma once

#include <cctype>
#include <string>
#include <string_view>

#include "cremona/errors.hpp"
#include "cremona/poly.hpp"

namespace cremona {

namespace detail {

// Recursive-descent parser for
//   expr   := term (("+" | "-") term)*
//   term   := unary (("*" | "/") unary)*
//   unary  := ("+" | "-") unary | power
//   power  := atom ("^" integer)?
//   atom   := integer | variable | "(" expr ")"
// Division is only allowed by a nonzero constant.
class Parser {
 public:
  Parser(std::string_view text, int nvars) : text_(text), nvars_(nvars) {}

  MultiPoly parse() {
    skip_space();
    if (at_end()) fail("empty input");
    MultiPoly p = expr();
    skip_space();
    if (!at_end()) fail(std::string("unexpected '") + peek() + "'");
    return p;
  }

 private:
  MultiPoly expr() {
    MultiPoly acc = term();
    for (;;) {
      skip_space();
      if (accept('+')) {
        acc += term();
      } else if (accept('-')) {
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  MultiPoly term() {
    MultiPoly acc = unary();
    for (;;) {
      skip_space();
      if (accept('*')) {
        acc *= unary();
      } else if (peek() == '/') {
        int line = line_, col = col_;
        advance();
        MultiPoly d = unary();
        if (!d.is_constant() || d.is_zero()) fail_at("division by a non-constant or zero", line, col);
        acc = acc * (Scalar(1) / d.terms().front().second);
      } else {
        return acc;
      }
    }
  }

  MultiPoly unary() {
    skip_space();
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  MultiPoly power() {
    MultiPoly base = atom();
    skip_space();
    if (accept('^')) {
      skip_space();
      if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("exponent must be a nonnegative integer");
      int line = line_, col = col_;
      std::string digits = read_digits();
      if (digits.size() > 4) fail_at("exponent too large", line, col);
      return base.pow(std::stoi(digits));
    }
    return base;
  }

  MultiPoly atom() {
    skip_space();
    if (at_end()) fail("unexpected end of input");
    char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Scalar v{Integer(read_digits())};
      return MultiPoly::constant(nvars_, v);
    }
    if (accept('(')) {
      MultiPoly inner = expr();
      skip_space();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) return variable();
    fail(std::string("unexpected '") + c + "'");
  }

  MultiPoly variable() {
    int line = line_, col = col_;
    std::string name;
    while (!at_end() && std::isalnum(static_cast<unsigned char>(peek()))) {
      name += peek();
      advance();
    }
    int index = -1;
    if (name == "x") index = 0;
    else if (name == "y") index = 1;
    else if (name == "z") index = 2;
    else if (name == "w") index = 3;
    else if (name.size() == 2 && name[0] == 'x' && std::isdigit(static_cast<unsigned char>(name[1])))
      index = name[1] - '0';
    if (index < 0) fail_at("unknown variable '" + name + "'", line, col);
    if (index >= nvars_)
      fail_at("variable '" + name + "' outside the " + std::to_string(nvars_) + "-variable ring", line, col);
    return MultiPoly::variable(nvars_, index);
  }

  std::string read_digits() {
    std::string d;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
      d += peek();
      advance();
    }
    return d;
  }

  void skip_space() {
    while (!at_end()) {
      char c = peek();
      if (c == '#') {
        while (!at_end() && peek() != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        return;
      }
    }
  }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }
  bool accept(char c) {
    if (peek() != c || at_end()) return false;
    advance();
    return true;
  }
  [[noreturn]] void fail(const std::string& what) const { fail_at(what, line_, col_); }
  [[noreturn]] void fail_at(const std::string& what, int line, int col) const {
    throw ParseError(what, line, col);
  }

  std::string_view text_;
  int nvars_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

}  // namespace detail

/// Parses a polynomial in x0..x9 (aliases x, y, z, w for x0..x3) into the
/// ring with `nvars` variables.
inline MultiPoly parse_polynomial(std::string_view text, int nvars) {
  return detail::Parser(text, nvars).parse();
}

/// Parses and requires a nonzero homogeneous result.
inline MultiPoly parse_form(std::string_view text, int nvars) {
  MultiPoly f = parse_polynomial(text, nvars);
  if (f.is_zero()) throw InvalidInput("the zero polynomial is not a valid form");
  if (!f.is_homogeneous()) throw InvalidInput("input is not homogeneous");
  return f;
}

}  // namespace cremona
