#pragma once

// Sparse bivariate polynomials over Q(zeta_r).

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "lfed/error.hpp"
#include "lfed/field.hpp"

namespace lfed {

/// x^i y^j. The defaulted ordering is lex with x > y.
struct Monomial {
  std::int64_t i = 0;
  std::int64_t j = 0;

  std::int64_t degree() const noexcept { return i + j; }

  friend auto operator<=>(const Monomial&, const Monomial&) = default;
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

inline Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial m;
  if (__builtin_add_overflow(a.i, b.i, &m.i) || __builtin_add_overflow(a.j, b.j, &m.j))
    throw PreconditionError("monomial exponent overflow");
  return m;
}

/// Terms are kept in descending lex order; no stored coefficient is zero.
class BiPoly {
 public:
  using TermMap = std::map<Monomial, Residue, std::greater<Monomial>>;

  explicit BiPoly(Field field = Field()) : field_(std::move(field)) {}

  static BiPoly constant(const Coeff& c) { return monomial({0, 0}, c); }
  static BiPoly constant(const Field& field, const Rational& q) {
    return constant(Coeff(field, q));
  }
  static BiPoly one(const Field& field) { return constant(field, 1); }
  static BiPoly x(const Field& field) { return monomial({1, 0}, Coeff(field, 1L)); }
  static BiPoly y(const Field& field) { return monomial({0, 1}, Coeff(field, 1L)); }
  static BiPoly monomial(Monomial m, const Coeff& c) {
    BiPoly p(c.field());
    if (!c.isZero()) p.terms_.emplace(m, c.residue());
    return p;
  }
  static BiPoly monomial(const Field& field, Monomial m) { return monomial(m, Coeff(field, 1L)); }

  const Field& field() const noexcept { return field_; }
  const TermMap& terms() const noexcept { return terms_; }
  bool isZero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }

  /// Sup(f), descending lex.
  std::vector<Monomial> support() const {
    std::vector<Monomial> out;
    out.reserve(terms_.size());
    for (const auto& [m, c] : terms_) out.push_back(m);
    return out;
  }

  Coeff coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Coeff(field_) : Coeff(field_, it->second);
  }

  bool contains(const Monomial& m) const { return terms_.count(m) != 0; }

  /// Total degree; -1 for the zero polynomial.
  std::int64_t totalDegree() const {
    std::int64_t d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
    return d;
  }
  std::int64_t degreeX() const {
    std::int64_t d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, m.i);
    return d;
  }
  std::int64_t degreeY() const {
    std::int64_t d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, m.j);
    return d;
  }
  /// No x appears (a polynomial in K[y]).
  bool isUnivariateY() const {
    for (const auto& [m, c] : terms_)
      if (m.i != 0) return false;
    return true;
  }
  bool isConstant() const { return terms_.empty() || (size() == 1 && terms_.begin()->first == Monomial{}); }

  /// this += c * m * other
  void addScaledShifted(const BiPoly& other, const Residue& c, const Monomial& shift) {
    field_.requireSame(other.field_);
    for (const auto& [m, v] : other.terms_) accumulate(m * shift, field_.mul(v, c));
  }

  /// this += c * x^m
  void addTerm(const Monomial& m, const Residue& c) { accumulate(m, c); }
  void addTerm(const Monomial& m, const Coeff& c) {
    field_.requireSame(c.field());
    accumulate(m, c.residue());
  }

  BiPoly& operator+=(const BiPoly& o) {
    field_.requireSame(o.field_);
    for (const auto& [m, v] : o.terms_) accumulate(m, v);
    return *this;
  }
  BiPoly& operator-=(const BiPoly& o) {
    field_.requireSame(o.field_);
    for (const auto& [m, v] : o.terms_) accumulate(m, Field::neg(v));
    return *this;
  }

  friend BiPoly operator+(BiPoly a, const BiPoly& b) { return a += b; }
  friend BiPoly operator-(BiPoly a, const BiPoly& b) { return a -= b; }
  BiPoly operator-() const {
    BiPoly out(field_);
    for (const auto& [m, v] : terms_) out.terms_.emplace_hint(out.terms_.end(), m, Field::neg(v));
    return out;
  }

  friend BiPoly operator*(const BiPoly& a, const BiPoly& b) {
    a.field_.requireSame(b.field_);
    BiPoly out(a.field_);
    const BiPoly& small = a.size() <= b.size() ? a : b;
    const BiPoly& large = a.size() <= b.size() ? b : a;
    for (const auto& [m, v] : small.terms_) out.addScaledShifted(large, v, m);
    return out;
  }

  BiPoly scaled(const Coeff& c) const {
    field_.requireSame(c.field());
    BiPoly out(field_);
    if (c.isZero()) return out;
    for (const auto& [m, v] : terms_) out.terms_.emplace_hint(out.terms_.end(), m, field_.mul(v, c.residue()));
    return out;
  }

  BiPoly shifted(const Monomial& s) const {
    BiPoly out(field_);
    for (const auto& [m, v] : terms_) out.terms_.emplace_hint(out.terms_.end(), m * s, v);
    return out;
  }

  friend bool operator==(const BiPoly& a, const BiPoly& b) {
    return a.field_ == b.field_ && a.terms_ == b.terms_;
  }

 private:
  void accumulate(const Monomial& m, const Residue& v) {
    if (Field::isZero(v)) return;
    auto [it, inserted] = terms_.try_emplace(m, v);
    if (inserted) return;
    Field::addInPlace(it->second, v);
    if (Field::isZero(it->second)) terms_.erase(it);
  }

  Field field_;
  TermMap terms_;
};

inline BiPoly add(const BiPoly& f, const BiPoly& g) { return f + g; }
inline BiPoly mul(const BiPoly& f, const BiPoly& g) { return f * g; }
inline BiPoly scale(const BiPoly& f, const Coeff& c) { return f.scaled(c); }

inline BiPoly pow(const BiPoly& f, std::int64_t e) {
  if (e < 0) throw PreconditionError("negative polynomial exponent");
  BiPoly result = BiPoly::one(f.field());
  if (e == 0) return result;
  // A single term needs no multiplication.
  if (f.size() == 1) {
    const auto& [m, v] = *f.terms().begin();
    Monomial me;
    if (__builtin_mul_overflow(m.i, e, &me.i) || __builtin_mul_overflow(m.j, e, &me.j))
      throw PreconditionError("monomial exponent overflow");
    return BiPoly::monomial(me, Coeff(f.field(), v).pow(e));
  }
  BiPoly base = f;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

/// The lex-greatest term of a nonzero polynomial.
inline std::pair<Monomial, Coeff> leadingTerm(const BiPoly& f) {
  if (f.isZero()) throw PreconditionError("leadingTerm of the zero polynomial");
  const auto& [m, v] = *f.terms().begin();
  return {m, Coeff(f.field(), v)};
}

/// f(px, py).
inline BiPoly substitute(const BiPoly& f, const BiPoly& px, const BiPoly& py) {
  f.field().requireSame(px.field());
  f.field().requireSame(py.field());
  std::map<std::int64_t, BiPoly> xPowers, yPowers;
  auto powerOf = [](std::map<std::int64_t, BiPoly>& cache, const BiPoly& base,
                    std::int64_t e) -> const BiPoly& {
    auto it = cache.find(e);
    if (it != cache.end()) return it->second;
    // Reuse the largest cached power below e when the gap is small.
    auto below = cache.lower_bound(e);
    if (below != cache.begin()) {
      --below;
      if (e - below->first <= 2) {
        BiPoly p = below->second;
        for (std::int64_t k = below->first; k < e; ++k) p = p * base;
        return cache.emplace(e, std::move(p)).first->second;
      }
    }
    return cache.emplace(e, pow(base, e)).first->second;
  };
  // Ascending exponents keep the incremental path cheap.
  std::vector<std::int64_t> xs, ys;
  for (const auto& [m, v] : f.terms()) {
    xs.push_back(m.i);
    ys.push_back(m.j);
  }
  std::sort(xs.begin(), xs.end());
  std::sort(ys.begin(), ys.end());
  for (auto e : xs) powerOf(xPowers, px, e);
  for (auto e : ys) powerOf(yPowers, py, e);

  // Group by x-exponent: f = sum_i x^i f_i(y).
  BiPoly out(f.field());
  auto it = f.terms().begin();
  while (it != f.terms().end()) {
    const std::int64_t i = it->first.i;
    BiPoly inner(f.field());
    for (; it != f.terms().end() && it->first.i == i; ++it)
      inner.addScaledShifted(yPowers.at(it->first.j), it->second, Monomial{});
    out += xPowers.at(i) * inner;
  }
  return out;
}

inline BiPoly partialX(const BiPoly& f) {
  BiPoly out(f.field());
  for (const auto& [m, v] : f.terms()) {
    if (m.i == 0) continue;
    out.addTerm({m.i - 1, m.j}, f.field().mul(v, f.field().fromRational(Rational(m.i))));
  }
  return out;
}

inline BiPoly partialY(const BiPoly& f) {
  BiPoly out(f.field());
  for (const auto& [m, v] : f.terms()) {
    if (m.j == 0) continue;
    out.addTerm({m.i, m.j - 1}, f.field().mul(v, f.field().fromRational(Rational(m.j))));
  }
  return out;
}

/// Coefficient of the highest y-power of a polynomial in K[y].
inline Coeff leadingCoeffY(const BiPoly& g) {
  if (g.isZero()) throw PreconditionError("leading coefficient of the zero polynomial");
  // Descending lex on x^0 y^j puts the highest y-power first.
  return Coeff(g.field(), g.terms().begin()->second);
}

/// Division by g in K[y], treating f as a polynomial in y over K[x].
/// Returns (q, rem) with f = q*g + rem and deg_y rem < deg_y g.
inline std::pair<BiPoly, BiPoly> divmodY(const BiPoly& f, const BiPoly& g) {
  f.field().requireSame(g.field());
  if (g.isZero() || !g.isUnivariateY())
    throw PreconditionError("divmodY: divisor must be a nonzero polynomial in y");
  const Field& field = f.field();
  const std::size_t dg = static_cast<std::size_t>(g.degreeY());
  std::vector<Residue> den(dg + 1, field.zero());
  for (const auto& [m, v] : g.terms()) den[static_cast<std::size_t>(m.j)] = v;
  const Residue leadInv = field.inverse(den[dg]);

  // Group f by x-degree; each slice is an independent univariate division.
  std::map<std::int64_t, std::vector<Residue>> slices;
  for (const auto& [m, v] : f.terms()) {
    auto& s = slices[m.i];
    const auto j = static_cast<std::size_t>(m.j);
    if (s.size() <= j) s.resize(j + 1, field.zero());
    s[j] = v;
  }
  BiPoly quot(field), rem(field);
  for (auto& [i, num] : slices) {
    for (std::size_t top = num.size(); top-- > dg;) {
      if (Field::isZero(num[top])) continue;
      const Residue c = field.mul(num[top], leadInv);
      for (std::size_t k = 0; k <= dg; ++k) {
        if (Field::isZero(den[k])) continue;
        Field::subInPlace(num[top - dg + k], field.mul(c, den[k]));
      }
      quot.addTerm({i, static_cast<std::int64_t>(top - dg)}, c);
    }
    for (std::size_t j = 0; j < std::min(num.size(), dg); ++j)
      rem.addTerm({i, static_cast<std::int64_t>(j)}, num[j]);
  }
  return {std::move(quot), std::move(rem)};
}

/// f / g when g divides f exactly in K[y] (over K[x]); nullopt otherwise.
inline std::optional<BiPoly> exactDivideY(const BiPoly& f, const BiPoly& g) {
  auto [q, r] = divmodY(f, g);
  if (!r.isZero()) return std::nullopt;
  return q;
}

/// Scale a polynomial in K[y] to have leading coefficient 1.
inline BiPoly monicY(const BiPoly& g) {
  if (g.isZero()) return g;
  return g.scaled(leadingCoeffY(g).inverse());
}

/// Monic gcd of two polynomials in K[y].
inline BiPoly gcdY(BiPoly a, BiPoly b) {
  if (!a.isUnivariateY() || !b.isUnivariateY()) throw PreconditionError("gcdY: arguments must lie in K[y]");
  while (!b.isZero()) {
    BiPoly r = divmodY(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return monicY(a);
}

/// p(y^r) for p in K[y].
inline BiPoly composeYPower(const BiPoly& p, std::int64_t r) {
  BiPoly out(p.field());
  for (const auto& [m, v] : p.terms()) out.addTerm({m.i, m.j * r}, v);
  return out;
}

}  // namespace lfed
