#pragma once

// Polynomial text format.
//
//   expr    := term (('+' | '-') term)*
//   term    := unary ('*' unary)*
//   unary   := ('+' | '-') unary | power
//   power   := atom ('^' integer)?
//   atom    := integer ('/' integer)? | 'x' | 'y' | 'z' | '(' expr ')'
//
// `z` is the generator zeta_r of the declared field and is rejected over Q.
// Juxtaposition is not accepted; products need an explicit '*'.

#include <cctype>
#include <cstdint>
#include <sstream>
#include <string>
#include <string_view>

#include "lfed/bipoly.hpp"
#include "lfed/error.hpp"
#include "lfed/field.hpp"

namespace lfed {

namespace detail {

class Parser {
 public:
  Parser(std::string_view text, Field field) : text_(text), field_(std::move(field)) {}

  BiPoly run() {
    skipSpace();
    if (pos_ >= text_.size()) fail("empty input");
    BiPoly result = expr();
    skipSpace();
    if (pos_ < text_.size()) fail(std::string("unexpected '") + text_[pos_] + "'");
    return result;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(pos_ + 1, msg); }

  void skipSpace() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skipSpace();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  BiPoly expr() {
    BiPoly acc = term();
    for (;;) {
      if (accept('+')) {
        acc += term();
      } else if (accept('-')) {
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  BiPoly term() {
    BiPoly acc = unary();
    while (accept('*')) acc = acc * unary();
    return acc;
  }

  BiPoly unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  BiPoly power() {
    BiPoly base = atom();
    if (accept('^')) {
      skipSpace();
      if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
        fail("expected a nonnegative integer exponent");
      mpz_class e = integer();
      if (e > 1'000'000) fail("exponent too large");
      return pow(base, e.get_si());
    }
    return base;
  }

  mpz_class integer() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return mpz_class(std::string(text_.substr(start, pos_ - start)));
  }

  BiPoly atom() {
    skipSpace();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Rational value(integer());
      if (accept('/')) {
        skipSpace();
        if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
          fail("expected an integer denominator");
        const std::size_t denomPos = pos_;
        mpz_class den = integer();
        if (den == 0) {
          pos_ = denomPos;
          fail("zero denominator");
        }
        value /= Rational(den);
        value.canonicalize();
      }
      return BiPoly::constant(field_, value);
    }
    if (c == 'x') {
      ++pos_;
      return BiPoly::x(field_);
    }
    if (c == 'y') {
      ++pos_;
      return BiPoly::y(field_);
    }
    if (c == 'z') {
      if (field_.conductor() == 1) fail("'z' is not in the declared field Q");
      ++pos_;
      return BiPoly::constant(Coeff::zeta(field_));
    }
    if (c == '(') {
      ++pos_;
      BiPoly inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    fail(std::string("unexpected '") + c + "'");
  }

  std::string_view text_;
  Field field_;
  std::size_t pos_ = 0;
};

inline std::string rationalText(const Rational& q) {
  std::ostringstream out;
  out << q;  // gmp prints canonical "p/q" or "p"
  return out.str();
}

inline std::string powerText(char var, std::int64_t e) {
  if (e == 1) return std::string(1, var);
  return std::string(1, var) + "^" + std::to_string(e);
}

// One signed z-term of a residue, e.g. "-1/2*z^2".
inline std::string zTermBody(const Rational& mag, std::size_t k) {
  if (k == 0) return rationalText(mag);
  std::string z = powerText('z', static_cast<std::int64_t>(k));
  if (mag == 1) return z;
  return rationalText(mag) + "*" + z;
}

}  // namespace detail

/// Parse polynomial text over the given field.
inline BiPoly parse(std::string_view text, const Field& field) {
  return detail::Parser(text, field).run();
}

/// Canonical text of a field element, z-powers descending.
inline std::string toString(const Coeff& c) {
  const Residue& v = c.residue();
  std::string out;
  bool first = true;
  for (std::size_t k = v.size(); k-- > 0;) {
    if (v[k] == 0) continue;
    const bool neg = v[k] < 0;
    const Rational mag = neg ? Rational(-v[k]) : v[k];
    if (first) {
      out += neg ? "-" : "";
    } else {
      out += neg ? " - " : " + ";
    }
    out += detail::zTermBody(mag, k);
    first = false;
  }
  return first ? "0" : out;
}

/// Canonical text: terms in descending lex order, e.g. "2*x - y^3 - y".
/// Coefficients with more than one z-term are parenthesised.
inline std::string toString(const BiPoly& f) {
  if (f.isZero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, v] : f.terms()) {
    std::size_t nonzero = 0, k0 = 0;
    for (std::size_t k = 0; k < v.size(); ++k)
      if (v[k] != 0) {
        ++nonzero;
        k0 = k;
      }
    std::vector<std::string> factors;
    bool neg = false;
    if (nonzero == 1) {
      neg = v[k0] < 0;
      const Rational mag = neg ? Rational(-v[k0]) : v[k0];
      if (mag != 1) factors.push_back(detail::rationalText(mag));
      if (k0 > 0) factors.push_back(detail::powerText('z', static_cast<std::int64_t>(k0)));
    } else {
      factors.push_back("(" + toString(Coeff(f.field(), v)) + ")");
    }
    if (m.i > 0) factors.push_back(detail::powerText('x', m.i));
    if (m.j > 0) factors.push_back(detail::powerText('y', m.j));
    if (factors.empty()) factors.push_back("1");

    if (first) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    for (std::size_t k = 0; k < factors.size(); ++k) {
      if (k > 0) out += "*";
      out += factors[k];
    }
    first = false;
  }
  return out;
}

/// Parse text that must denote a constant.
inline Coeff parseCoeff(std::string_view text, const Field& field) {
  BiPoly p = parse(text, field);
  if (!p.isConstant()) throw ParseError(1, "expected a constant, got '" + std::string(text) + "'");
  return p.coeff({0, 0});
}

}  // namespace lfed
