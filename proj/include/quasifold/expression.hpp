#pragma once

// Parser for scalar expressions:
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := ('+' | '-') unary | power
//   power   := primary ('^' exponent)?
//   exponent:= ['-'] integer | '(' ['-'] integer ')'
//   primary := integer | 'theta' | 'θ' | '(' expr ')'
//
// Rationals are written as quotients ("3/4"); decimal literals are rejected.

#include "quasifold/error.hpp"
#include "quasifold/scalar.hpp"

#include <cctype>
#include <regex>
#include <string>
#include <string_view>

namespace quasifold {

namespace detail {

class ExpressionParser {
 public:
  ExpressionParser(std::string_view text, FieldPtr field) : text_(text), field_(std::move(field)) {}

  Scalar parse() {
    Scalar value = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return value;
  }

 private:
  Scalar expr() {
    Scalar acc = term();
    for (;;) {
      if (accept('+'))
        acc += term();
      else if (accept_minus())
        acc -= term();
      else
        return acc;
    }
  }

  Scalar term() {
    Scalar acc = unary();
    for (;;) {
      if (accept('*')) {
        acc *= unary();
      } else if (accept('/')) {
        Scalar d = unary();
        if (d.is_zero()) throw Error(ErrorKind::DivisionByZeroScalar, "in expression \"" + std::string(text_) + "\"");
        acc /= d;
      } else {
        return acc;
      }
    }
  }

  Scalar unary() {
    if (accept('+')) return unary();
    if (accept_minus()) return -unary();
    return power();
  }

  Scalar power() {
    Scalar base = primary();
    if (!accept('^')) return base;
    long e = 0;
    if (accept('(')) {
      e = signed_integer();
      if (!accept(')')) fail("expected ')' after exponent");
    } else {
      e = signed_integer();
    }
    if (e < 0 && base.is_zero()) throw Error(ErrorKind::DivisionByZeroScalar, "negative power of zero");
    return base.pow(e);
  }

  Scalar primary() {
    skip_space();
    if (accept('(')) {
      Scalar inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (accept_symbol()) return Scalar::generator(field_);
    if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      return Scalar(field_, mpq_class(digits()));
    }
    fail("expected number, theta or '('");
  }

  long signed_integer() {
    skip_space();
    bool neg = accept_minus();
    skip_space();
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
      fail("exponent must be an integer");
    const mpz_class v = digits();
    if (!v.fits_slong_p()) fail("exponent too large");
    return neg ? -v.get_si() : v.get_si();
  }

  mpz_class digits() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ < text_.size() && (text_[pos_] == '.' || text_[pos_] == 'e' || text_[pos_] == 'E'))
      fail("decimal literals are not allowed; write rationals as p/q");
    return mpz_class(std::string(text_.substr(start, pos_ - start)));
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  bool accept_literal(std::string_view lit) {
    skip_space();
    if (text_.substr(pos_, lit.size()) == lit) {
      pos_ += lit.size();
      return true;
    }
    return false;
  }

  bool accept_minus() { return accept('-') || accept_literal("\xE2\x88\x92"); }  // U+2212

  bool accept_symbol() {
    if (accept_literal("\xCE\xB8")) return true;  // θ
    skip_space();
    if (text_.substr(pos_, 5) == "theta") {
      const std::size_t after = pos_ + 5;
      if (after < text_.size() && std::isalnum(static_cast<unsigned char>(text_[after]))) return false;
      pos_ = after;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorKind::SyntaxError,
                what + " at offset " + std::to_string(pos_) + " in \"" + std::string(text_) + "\"");
  }

  std::string_view text_;
  FieldPtr field_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Scalar parse_scalar(std::string_view text, const FieldPtr& field) {
  return detail::ExpressionParser(text, field).parse();
}

/// Rational literal "p/q" or integer "p" (the field schema's coefficient format).
inline mpq_class parse_rational(std::string_view text) {
  static const std::regex pattern(R"(\s*(-?[0-9]+)(?:\s*/\s*([0-9]+))?\s*)");
  const std::string s(text);
  std::smatch m;
  if (!std::regex_match(s, m, pattern)) throw Error(ErrorKind::SyntaxError, "not a rational literal: \"" + s + "\"");
  const mpz_class den = m[2].matched ? mpz_class(m[2].str()) : mpz_class(1);
  if (den == 0) throw Error(ErrorKind::DivisionByZeroScalar, "zero denominator in \"" + s + "\"");
  mpq_class q(mpz_class(m[1].str()), den);
  q.canonicalize();
  return q;
}

}  // namespace quasifold
