#pragma once

// Endomorphisms and E-derivations of K[x,y], the seven normal forms of
// locally finite endomorphisms, and the closed forms of delta on monomials.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "lfed/bipoly.hpp"
#include "lfed/echelon.hpp"
#include "lfed/error.hpp"
#include "lfed/field.hpp"
#include "lfed/parse.hpp"

namespace lfed {

/// The algebra endomorphism with x -> imageX, y -> imageY.
class Endomorphism {
 public:
  Endomorphism(BiPoly imageX, BiPoly imageY) : x_(std::move(imageX)), y_(std::move(imageY)) {
    x_.field().requireSame(y_.field());
  }

  static Endomorphism identity(const Field& field) {
    return Endomorphism(BiPoly::x(field), BiPoly::y(field));
  }

  const BiPoly& imageX() const noexcept { return x_; }
  const BiPoly& imageY() const noexcept { return y_; }
  const Field& field() const noexcept { return x_.field(); }

  BiPoly operator()(const BiPoly& f) const { return substitute(f, x_, y_); }

  /// this o other: f -> this(other(f)).
  Endomorphism after(const Endomorphism& other) const {
    return Endomorphism((*this)(other.x_), (*this)(other.y_));
  }

  friend bool operator==(const Endomorphism&, const Endomorphism&) = default;

 private:
  BiPoly x_;
  BiPoly y_;
};

/// delta = id - phi.
class EDerivation {
 public:
  explicit EDerivation(Endomorphism phi) : phi_(std::move(phi)) {}

  const Endomorphism& phi() const noexcept { return phi_; }
  const Field& field() const noexcept { return phi_.field(); }

  BiPoly operator()(const BiPoly& f) const { return f - phi_(f); }
  BiPoly operator()(const Monomial& m) const { return (*this)(BiPoly::monomial(field(), m)); }

 private:
  Endomorphism phi_;
};

inline BiPoly applyEndo(const Endomorphism& phi, const BiPoly& f) { return phi(f); }
inline BiPoly applyDelta(const EDerivation& delta, const BiPoly& f) { return delta(f); }

// ---------------------------------------------------------------------------
// Normal forms

/// phi(x) = b x, phi(y) = a y.
struct Case1 {
  Coeff a, b;
};
/// phi(x) = b x, phi(y) = y + 1.
struct Case2 {
  Coeff b;
};
/// phi(x) = b^s x + a y^s, phi(y) = b y, b not a root of unity.
struct Case3 {
  std::int64_t s;
  Coeff a, b;
};
/// phi(x) = b^s x + y^s p(y^r), phi(y) = b y, b a primitive r-th root of unity, p monic.
struct Case4 {
  std::int64_t r;
  std::int64_t s;
  Coeff b;
  BiPoly p;
};
/// phi^2 = phi^3. A property, not a formula.
struct Case5 {};
/// phi(x) = lambda x + y g, phi(y) = 0.
struct Case6 {
  Coeff lambda;
  BiPoly g;
};
/// phi(x) = x + lambda + y g, phi(y) = 0.
struct Case7 {
  Coeff lambda;
  BiPoly g;
};

using NormalForm = std::variant<Case1, Case2, Case3, Case4, Case5, Case6, Case7>;

inline int caseNumber(const NormalForm& nf) { return static_cast<int>(nf.index()) + 1; }

inline bool operator==(const Case1& l, const Case1& r) { return l.a == r.a && l.b == r.b; }
inline bool operator==(const Case2& l, const Case2& r) { return l.b == r.b; }
inline bool operator==(const Case3& l, const Case3& r) { return l.s == r.s && l.a == r.a && l.b == r.b; }
inline bool operator==(const Case4& l, const Case4& r) {
  return l.r == r.r && l.s == r.s && l.b == r.b && l.p == r.p;
}
inline bool operator==(const Case5&, const Case5&) { return true; }
inline bool operator==(const Case6& l, const Case6& r) { return l.lambda == r.lambda && l.g == r.g; }
inline bool operator==(const Case7& l, const Case7& r) { return l.lambda == r.lambda && l.g == r.g; }

/// Monic with leading coefficient 1 in K[y].
inline bool isMonicY(const BiPoly& p) {
  return !p.isZero() && p.isUnivariateY() && leadingCoeffY(p).isOne();
}

/// Throws InvalidParameter naming the first violated constraint.
inline void validate(const NormalForm& nf) {
  struct Visitor {
    void operator()(const Case1& c) const {
      if (c.a.isZero()) throw InvalidParameter("case 1: a must be nonzero");
      if (c.b.isZero()) throw InvalidParameter("case 1: b must be nonzero");
      c.a.field().requireSame(c.b.field());
    }
    void operator()(const Case2& c) const {
      if (c.b.isZero()) throw InvalidParameter("case 2: b must be nonzero");
    }
    void operator()(const Case3& c) const {
      if (c.s < 1) throw InvalidParameter("case 3: s must be a positive integer");
      c.a.field().requireSame(c.b.field());
      if (c.b.isZero()) throw InvalidParameter("case 3: b must be nonzero");
      if (isRootOfUnity(c.b))
        throw InvalidParameter("case 3: b is a root of unity (order " +
                               std::to_string(*isRootOfUnity(c.b)) + ")");
    }
    void operator()(const Case4& c) const {
      if (c.r < 1) throw InvalidParameter("case 4: r must be a positive integer");
      if (c.s < 0) throw InvalidParameter("case 4: s must be nonnegative");
      c.b.field().requireSame(c.p.field());
      if (c.b.isZero()) throw InvalidParameter("case 4: b must be nonzero");
      const auto order = isRootOfUnity(c.b);
      if (order != c.r)
        throw InvalidParameter("case 4: b is not a primitive " + std::to_string(c.r) +
                               "-th root of unity");
      if (!isMonicY(c.p)) throw InvalidParameter("case 4: p must be a monic polynomial in y");
    }
    void operator()(const Case5&) const {}
    void operator()(const Case6& c) const {
      c.lambda.field().requireSame(c.g.field());
      if (c.lambda.isZero()) throw InvalidParameter("case 6: lambda must be nonzero");
    }
    void operator()(const Case7& c) const {
      c.lambda.field().requireSame(c.g.field());
      if (c.lambda.isZero()) throw InvalidParameter("case 7: lambda must be nonzero");
    }
  };
  std::visit(Visitor{}, nf);
}

/// The endomorphism of a normal form. Case 5 has no canonical images.
inline Endomorphism buildNormalForm(const NormalForm& nf) {
  validate(nf);
  struct Visitor {
    Endomorphism operator()(const Case1& c) const {
      const Field& k = c.b.field();
      return {BiPoly::x(k).scaled(c.b), BiPoly::y(k).scaled(c.a)};
    }
    Endomorphism operator()(const Case2& c) const {
      const Field& k = c.b.field();
      return {BiPoly::x(k).scaled(c.b), BiPoly::y(k) + BiPoly::one(k)};
    }
    Endomorphism operator()(const Case3& c) const {
      const Field& k = c.b.field();
      return {BiPoly::x(k).scaled(c.b.pow(c.s)) + BiPoly::monomial({0, c.s}, c.a),
              BiPoly::y(k).scaled(c.b)};
    }
    Endomorphism operator()(const Case4& c) const {
      const Field& k = c.b.field();
      return {BiPoly::x(k).scaled(c.b.pow(c.s)) + composeYPower(c.p, c.r).shifted({0, c.s}),
              BiPoly::y(k).scaled(c.b)};
    }
    Endomorphism operator()(const Case5&) const {
      throw InvalidParameter("case 5 is the relation phi^2 = phi^3 and has no normal-form images");
    }
    Endomorphism operator()(const Case6& c) const {
      const Field& k = c.lambda.field();
      return {BiPoly::x(k).scaled(c.lambda) + c.g.shifted({0, 1}), BiPoly(k)};
    }
    Endomorphism operator()(const Case7& c) const {
      const Field& k = c.lambda.field();
      return {BiPoly::x(k) + BiPoly::constant(c.lambda) + c.g.shifted({0, 1}), BiPoly(k)};
    }
  };
  return std::visit(Visitor{}, nf);
}

/// phi^2 = phi^3, checked on the generators.
inline bool checkIdempotentCube(const Endomorphism& phi) {
  const Endomorphism phi2 = phi.after(phi);
  const Endomorphism phi3 = phi.after(phi2);
  return phi2 == phi3;
}

inline BiPoly jacobianDeterminant(const Endomorphism& phi) {
  return partialX(phi.imageX()) * partialY(phi.imageY()) -
         partialY(phi.imageX()) * partialX(phi.imageY());
}

namespace detail {

// f == c * x^m exactly (c may be any nonzero constant).
inline std::optional<Coeff> singleTermCoeff(const BiPoly& f, const Monomial& m) {
  if (f.size() != 1 || f.terms().begin()->first != m) return std::nullopt;
  return f.coeff(m);
}

}  // namespace detail

/// Syntactic match against the seven shapes; no conjugation search.
inline std::optional<NormalForm> recognizeNormalForm(const Endomorphism& phi) {
  const Field& k = phi.field();
  const BiPoly& px = phi.imageX();
  const BiPoly& py = phi.imageY();

  if (py.isZero()) {
    // phi(x) = l1 x + l2 + y g
    Coeff l1 = px.coeff({1, 0});
    Coeff l2 = px.coeff({0, 0});
    BiPoly rest = px - BiPoly::monomial({1, 0}, l1) - BiPoly::constant(l2);
    bool yDivides = true;
    for (const auto& [m, v] : rest.terms())
      if (m.j == 0) yDivides = false;
    if (yDivides && !l1.isZero()) {
      BiPoly g(k);
      for (const auto& [m, v] : rest.terms()) g.addTerm({m.i, m.j - 1}, v);
      if (l2.isZero()) return Case6{l1, g};
      if (l1.isOne()) return Case7{l2, g};
    }
  }

  const auto xCoeff = detail::singleTermCoeff(px, {1, 0});
  if (xCoeff && !xCoeff->isZero()) {
    if (py == BiPoly::y(k) + BiPoly::one(k)) return Case2{*xCoeff};
    if (auto a = detail::singleTermCoeff(py, {0, 1})) return Case1{*a, *xCoeff};
  }

  // Cases 3 and 4 share phi(y) = b y and phi(x) = c x + (polynomial in y).
  if (auto b = detail::singleTermCoeff(py, {0, 1})) {
    const Coeff c = px.coeff({1, 0});
    const BiPoly rest = px - BiPoly::monomial({1, 0}, c);
    if (!c.isZero() && !rest.isZero() && rest.isUnivariateY()) {
      const auto order = isRootOfUnity(*b);
      const std::int64_t lowest = rest.terms().rbegin()->first.j;
      if (!order) {
        if (rest.size() == 1 && lowest >= 1 && b->pow(lowest) == c)
          return Case3{lowest, rest.coeff({0, lowest}), *b};
      } else {
        const std::int64_t r = *order;
        bool residuesMatch = b->pow(lowest) == c;
        BiPoly p(k);
        for (const auto& [m, v] : rest.terms()) {
          if ((m.j - lowest) % r != 0) residuesMatch = false;
          p.addTerm({0, (m.j - lowest) / r}, v);
        }
        if (residuesMatch && isMonicY(p)) return Case4{r, lowest, *b, p};
      }
    }
  }

  if (checkIdempotentCube(phi)) return Case5{};
  return std::nullopt;
}

/// Text form used by reports and configuration, e.g.
/// case4 { r = 2, s = 1, b = "-1", p = "y + 1" }.
inline std::string toString(const NormalForm& nf) {
  struct Visitor {
    std::string q(const Coeff& c) const { return "\"" + toString(c) + "\""; }
    std::string q(const BiPoly& f) const { return "\"" + lfed::toString(f) + "\""; }
    std::string operator()(const Case1& c) const { return "case1 { a = " + q(c.a) + ", b = " + q(c.b) + " }"; }
    std::string operator()(const Case2& c) const { return "case2 { b = " + q(c.b) + " }"; }
    std::string operator()(const Case3& c) const {
      return "case3 { s = " + std::to_string(c.s) + ", a = " + q(c.a) + ", b = " + q(c.b) + " }";
    }
    std::string operator()(const Case4& c) const {
      return "case4 { r = " + std::to_string(c.r) + ", s = " + std::to_string(c.s) + ", b = " + q(c.b) +
             ", p = " + q(c.p) + " }";
    }
    std::string operator()(const Case5&) const { return "case5 {}"; }
    std::string operator()(const Case6& c) const { return "case6 { lambda = " + q(c.lambda) + ", g = " + q(c.g) + " }"; }
    std::string operator()(const Case7& c) const { return "case7 { lambda = " + q(c.lambda) + ", g = " + q(c.g) + " }"; }
  };
  return std::visit(Visitor{}, nf);
}

// ---------------------------------------------------------------------------
// Closed forms

inline mpz_class binomial(std::int64_t n, std::int64_t k) {
  mpz_class out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return out;
}

/// delta(x^m y^n) for a case 4 normal form:
///   (1 - b^(ms+n)) x^m y^n - sum_{i=1..m} C(m,i) b^((m-i)s+n) x^(m-i) y^(is+n) p(y^r)^i.
inline BiPoly deltaMonomialClosedForm(std::int64_t m, std::int64_t n, const NormalForm& nf) {
  const auto* c4 = std::get_if<Case4>(&nf);
  if (c4 == nullptr) throw PreconditionError("deltaMonomialClosedForm requires a case 4 normal form");
  if (m < 0 || n < 0) throw PreconditionError("exponents must be nonnegative");
  const Field& k = c4->b.field();
  const Coeff one(k, 1L);
  BiPoly out = BiPoly::monomial({m, n}, one - c4->b.pow(m * c4->s + n));
  const BiPoly pr = composeYPower(c4->p, c4->r);
  BiPoly prPower = BiPoly::one(k);
  for (std::int64_t i = 1; i <= m; ++i) {
    prPower = prPower * pr;
    const Coeff coef = Coeff(k, Rational(binomial(m, i))) * c4->b.pow((m - i) * c4->s + n);
    out -= prPower.shifted({m - i, i * c4->s + n}).scaled(coef);
  }
  return out;
}

/// delta(x^m y^n) for a case 6 normal form: x^m y^n when n > 0, and
/// (1 - lambda^m) x^m + y f_m when n = 0 with f_m obtained by expansion.
inline BiPoly deltaCase6ClosedForm(std::int64_t m, std::int64_t n, const NormalForm& nf) {
  const auto* c6 = std::get_if<Case6>(&nf);
  if (c6 == nullptr) throw PreconditionError("deltaCase6ClosedForm requires a case 6 normal form");
  if (m < 0 || n < 0) throw PreconditionError("exponents must be nonnegative");
  if (m == 0 && n == 0) throw PreconditionError("deltaCase6ClosedForm: (0,0) excluded, delta(1) = 0");
  const Field& k = c6->lambda.field();
  if (n > 0) return BiPoly::monomial(k, {m, n});
  const BiPoly head = BiPoly::monomial({m, 0}, Coeff(k, 1L) - c6->lambda.pow(m));
  const BiPoly image = BiPoly::x(k).scaled(c6->lambda) + c6->g.shifted({0, 1});
  const BiPoly full = BiPoly::monomial(k, {m, 0}) - pow(image, m);
  const BiPoly tail = full - head;
  for (const auto& [mono, v] : tail.terms())
    if (mono.j == 0) throw std::logic_error("deltaCase6ClosedForm: remainder not divisible by y");
  return head + tail;
}

// ---------------------------------------------------------------------------
// Local finiteness

/// Outcome of iterating phi on one polynomial.
struct LFEntry {
  enum class Verdict { FiniteDimensional, CutoffExceeded };
  Verdict verdict = Verdict::CutoffExceeded;
  std::size_t dimension = 0;               // valid when finite
  std::vector<std::size_t> trajectory;     // span dimension after each iterate
  bool sizeBudgetHit = false;              // stopped because an iterate grew past maxTerms
};

struct LFReport {
  LFEntry x;
  LFEntry y;
};

/// dim span{f, phi f, phi^2 f, ...}. A finite verdict is exact: the next
/// iterate was found to be linearly dependent, so the span is invariant.
/// Iteration also stops, inconclusively, once an iterate has more than
/// maxTerms terms, since degrees can grow geometrically.
inline LFEntry localFiniteProbe(const Endomorphism& phi, const BiPoly& f, std::size_t maxDim,
                                std::size_t maxIter, std::size_t maxTerms = 512) {
  if (maxDim < 1 || maxIter < 1) throw PreconditionError("localFiniteProbe: cutoffs must be >= 1");
  phi.field().requireSame(f.field());
  LFEntry entry;
  EchelonBasis span(f.field());
  BiPoly current = f;
  span.insert(current);
  entry.trajectory.push_back(span.dimension());
  for (std::size_t iter = 0; iter < maxIter; ++iter) {
    if (current.size() > maxTerms) {
      entry.sizeBudgetHit = true;
      break;
    }
    current = phi(current);
    if (!span.insert(current)) {
      entry.verdict = LFEntry::Verdict::FiniteDimensional;
      entry.dimension = span.dimension();
      return entry;
    }
    entry.trajectory.push_back(span.dimension());
    if (span.dimension() > maxDim) break;
  }
  return entry;
}

inline LFReport localFiniteReport(const Endomorphism& phi, std::size_t maxDim, std::size_t maxIter) {
  return {localFiniteProbe(phi, BiPoly::x(phi.field()), maxDim, maxIter),
          localFiniteProbe(phi, BiPoly::y(phi.field()), maxDim, maxIter)};
}

}  // namespace lfed
