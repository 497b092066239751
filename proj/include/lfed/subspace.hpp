#pragma once

// Monomial-spanned subspaces, finite windows onto images of E-derivations,
// and membership in C + <h(y)>.

#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "lfed/bipoly.hpp"
#include "lfed/check.hpp"
#include "lfed/echelon.hpp"
#include "lfed/endo.hpp"
#include "lfed/error.hpp"
#include "lfed/parse.hpp"

namespace lfed {

namespace detail {
inline bool divides(std::int64_t r, std::int64_t v) { return ((v % r) + r) % r == 0; }
}  // namespace detail

/// A subspace of K[x,y] spanned by an arithmetically described set of monomials.
class MonomialPattern {
 public:
  enum class Kind { C, B, B1, Cprime, FullIdealXY, Custom };

  /// r does not divide is + j.
  static MonomialPattern C(std::int64_t r, std::int64_t s) { return {Kind::C, r, s}; }
  /// r divides is + j.
  static MonomialPattern B(std::int64_t r, std::int64_t s) { return {Kind::B, r, s}; }
  /// r divides is + j and i > 0.
  static MonomialPattern B1(std::int64_t r, std::int64_t s) { return {Kind::B1, r, s}; }
  /// x^m with r not dividing m.
  static MonomialPattern Cprime(std::int64_t r) { return {Kind::Cprime, r, 0}; }
  /// Every monomial except 1.
  static MonomialPattern fullIdealXY() { return {Kind::FullIdealXY, 1, 0}; }
  /// An explicit table; monomials above the degree bound are never members.
  static MonomialPattern custom(std::set<Monomial> members, std::int64_t degreeBound) {
    MonomialPattern p{Kind::Custom, 1, 0};
    p.members_ = std::move(members);
    p.degreeBound_ = degreeBound;
    return p;
  }

  Kind kind() const noexcept { return kind_; }
  std::int64_t r() const noexcept { return r_; }
  std::int64_t s() const noexcept { return s_; }

  bool contains(const Monomial& m) const {
    switch (kind_) {
      case Kind::C:
        return !detail::divides(r_, m.i * s_ + m.j);
      case Kind::B:
        return detail::divides(r_, m.i * s_ + m.j);
      case Kind::B1:
        return m.i > 0 && detail::divides(r_, m.i * s_ + m.j);
      case Kind::Cprime:
        return m.j == 0 && !detail::divides(r_, m.i);
      case Kind::FullIdealXY:
        return m != Monomial{};
      case Kind::Custom:
        return m.degree() <= degreeBound_ && members_.count(m) != 0;
    }
    return false;
  }

  std::string name() const {
    const auto rs = "(" + std::to_string(r_) + "," + std::to_string(s_) + ")";
    switch (kind_) {
      case Kind::C:
        return "C" + rs;
      case Kind::B:
        return "B" + rs;
      case Kind::B1:
        return "B1" + rs;
      case Kind::Cprime:
        return "C'(" + std::to_string(r_) + ")";
      case Kind::FullIdealXY:
        return "<x,y>";
      case Kind::Custom:
        return "custom";
    }
    return "?";
  }

 private:
  MonomialPattern(Kind kind, std::int64_t r, std::int64_t s) : kind_(kind), r_(r), s_(s) {
    if (r < 1) throw InvalidParameter("pattern modulus r must be >= 1");
  }

  Kind kind_;
  std::int64_t r_;
  std::int64_t s_;
  std::set<Monomial> members_;
  std::int64_t degreeBound_ = 0;
};

inline bool patternContains(const MonomialPattern& p, const Monomial& m) { return p.contains(m); }

/// Sup(f) is contained in the pattern.
inline bool supportMembership(const BiPoly& f, const MonomialPattern& p) {
  for (const auto& [m, v] : f.terms())
    if (!p.contains(m)) return false;
  return true;
}

/// Monomials with weighted degree wx*i + wy*j <= bound, ascending in i then j.
inline std::vector<Monomial> monomialsUpTo(std::int64_t bound, MonomialOrder grading = MonomialOrder::graded()) {
  if (grading.wx < 1 || grading.wy < 1) throw PreconditionError("grading weights must be positive");
  std::vector<Monomial> out;
  for (std::int64_t i = 0; grading.wx * i <= bound; ++i)
    for (std::int64_t j = 0; grading.wx * i + grading.wy * j <= bound; ++j) out.push_back({i, j});
  return out;
}

// ---------------------------------------------------------------------------
// Triangular solver

/// The leading term of delta(u) is not a nonzero multiple of u, or delta(u) leaves the pattern.
class LeadingTermViolation : public PreconditionError {
 public:
  LeadingTermViolation(const Monomial& m, const std::string& why)
      : PreconditionError("leading-term condition violated at x^" + std::to_string(m.i) + "*y^" +
                          std::to_string(m.j) + ": " + why),
        monomial_(m) {}
  const Monomial& monomial() const noexcept { return monomial_; }

 private:
  Monomial monomial_;
};

class DegreeBoundExceeded : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

using MonomialMap = std::function<BiPoly(const Monomial&)>;

/// Solve map(h) = target with Sup(h) in the pattern, by descending-lex
/// back-substitution. Requires LT(map(u)) = c_u u with c_u != 0 and
/// Sup(map(u)) inside the pattern for every pattern monomial u reached.
inline BiPoly triangularPreimageSolve(const MonomialMap& map, const MonomialPattern& pattern,
                                      const BiPoly& target, std::int64_t degreeBound) {
  if (!supportMembership(target, pattern))
    throw PreconditionError("target support is not contained in " + pattern.name());
  const Field& k = target.field();
  std::map<Monomial, BiPoly> cache;
  BiPoly solution(k), remainder = target;
  while (!remainder.isZero()) {
    const auto [u, c] = leadingTerm(remainder);
    if (u.degree() > degreeBound)
      throw DegreeBoundExceeded("preimage needs monomial x^" + std::to_string(u.i) + "*y^" +
                                std::to_string(u.j) + " beyond degree bound " + std::to_string(degreeBound));
    auto it = cache.find(u);
    if (it == cache.end()) {
      BiPoly img = map(u);
      if (!supportMembership(img, pattern)) throw LeadingTermViolation(u, "image leaves " + pattern.name());
      if (img.isZero() || leadingTerm(img).first != u)
        throw LeadingTermViolation(u, "leading monomial of the image differs");
      it = cache.emplace(u, std::move(img)).first;
    }
    const Coeff factor = c / leadingTerm(it->second).second;
    solution.addTerm(u, factor);
    remainder -= it->second.scaled(factor);
  }
  return solution;
}

// ---------------------------------------------------------------------------
// Truncated spaces

/// A finite-dimensional subspace of polynomials of bounded (weighted) degree,
/// held as a lex echelon basis.
class TruncatedSpace {
 public:
  static constexpr std::int64_t kUnbounded = std::numeric_limits<std::int64_t>::max() / 4;

  TruncatedSpace(Field field, std::int64_t degreeBound, MonomialOrder grading = MonomialOrder::graded())
      : degreeBound_(degreeBound), grading_(grading), basis_(std::move(field)) {}

  std::int64_t degreeBound() const noexcept { return degreeBound_; }
  const MonomialOrder& grading() const noexcept { return grading_; }
  const EchelonBasis& basis() const noexcept { return basis_; }
  std::size_t dimension() const noexcept { return basis_.dimension(); }
  const Field& field() const noexcept { return basis_.field(); }

  bool contains(const BiPoly& f) const { return basis_.contains(f); }

  /// Adds f, which must fit in the degree bound.
  bool add(const BiPoly& f) {
    for (const auto& [m, v] : f.terms())
      if (grading_.weight(m) > degreeBound_) throw PreconditionError("element exceeds the degree bound");
    return basis_.insert(f);
  }

  bool sameSpan(const TruncatedSpace& other) const {
    if (dimension() != other.dimension()) return false;
    for (const auto& row : basis_.rows())
      if (!other.contains(row)) return false;
    return true;
  }

 private:
  std::int64_t degreeBound_;
  MonomialOrder grading_;
  EchelonBasis basis_;
};

/// span{delta(u) : deg u <= inBound} intersected with the polynomials of
/// degree <= outBound, degrees taken in the given grading. Always a subspace
/// of Im delta.
inline TruncatedSpace truncatedImage(const EDerivation& delta, std::int64_t inBound, std::int64_t outBound,
                                     MonomialOrder grading = MonomialOrder::graded()) {
  if (inBound < outBound && outBound != TruncatedSpace::kUnbounded)
    throw PreconditionError("truncatedImage: input bound must be >= output bound");
  const Field& k = delta.field();
  EchelonBasis graded(k, grading);
  for (const auto& u : monomialsUpTo(inBound, grading)) graded.insert(delta(u));
  TruncatedSpace out(k, outBound, grading);
  // Rows have distinct graded leads, so the rows whose lead fits span the intersection.
  const auto pivots = graded.pivots();
  const auto rows = graded.rows();
  for (std::size_t k = 0; k < rows.size(); ++k)
    if (grading.weight(pivots[k]) <= outBound) out.add(rows[k]);
  return out;
}

/// The span of all pattern monomials of degree <= bound.
inline TruncatedSpace patternSpace(const Field& field, const MonomialPattern& pattern, std::int64_t bound) {
  TruncatedSpace out(field, bound);
  for (const auto& u : monomialsUpTo(bound))
    if (pattern.contains(u)) out.add(BiPoly::monomial(field, u));
  return out;
}

// ---------------------------------------------------------------------------
// C + <h(y)>

/// The subspace C(r,s) + <h> of K[x,y] for a monic h in K[y].
///
/// Both C and the ideal are sums of x-slices, so membership is decided slice
/// by slice: the slice x^i f_i(y) is a member iff the remainder of f_i modulo h
/// lies in V_i = span{ y^j mod h : r does not divide is + j }. V_i depends only
/// on is mod r. Within one residue class of j the remainders are the Krylov
/// sequence of multiplication by y^r on K[y]/<h>, which spans its final space
/// after deg h steps, so j < r*(deg h + 1) generates V_i exactly.
class CPlusPrincipal {
 public:
  CPlusPrincipal(std::int64_t r, std::int64_t s, BiPoly h)
      : r_(r), s_(s), h_(std::move(h)), spans_() {
    if (r < 1) throw InvalidParameter("r must be >= 1");
    if (s < 0) throw InvalidParameter("s must be >= 0");
    if (!isMonicY(h_)) throw InvalidParameter("ideal generator must be monic in y");
    const std::int64_t d = h_.degreeY();
    const Field& k = h_.field();
    for (std::int64_t rho = 0; rho < r_; ++rho) {
      EchelonBasis span(k);
      if (d > 0) {
        for (std::int64_t j = 0; j < r_ * (d + 1) && static_cast<std::int64_t>(span.dimension()) < d; ++j) {
          if (detail::divides(r_, rho + j)) continue;
          span.insert(divmodY(BiPoly::monomial(k, {0, j}), h_).second);
        }
      }
      spans_.push_back(std::move(span));
    }
  }

  std::int64_t r() const noexcept { return r_; }
  std::int64_t s() const noexcept { return s_; }
  const BiPoly& generator() const noexcept { return h_; }

  /// Normal form modulo h; membership is invariant under it.
  BiPoly reduce(const BiPoly& f) const { return divmodY(f, h_).second; }

  bool contains(const BiPoly& f) const {
    h_.field().requireSame(f.field());
    if (h_.degreeY() == 0) return true;  // <1> is everything
    const BiPoly nf = reduce(f);
    auto it = nf.terms().begin();
    while (it != nf.terms().end()) {
      const std::int64_t i = it->first.i;
      BiPoly slice(nf.field());
      for (; it != nf.terms().end() && it->first.i == i; ++it) slice.addTerm({0, it->first.j}, it->second);
      const std::int64_t rho = ((i * s_) % r_ + r_) % r_;
      if (!spans_[static_cast<std::size_t>(rho)].contains(slice)) return false;
    }
    return true;
  }

 private:
  std::int64_t r_;
  std::int64_t s_;
  BiPoly h_;
  std::vector<EchelonBasis> spans_;
};

/// y^s p(y^r).
inline BiPoly idealGenerator(std::int64_t r, std::int64_t s, const BiPoly& p) {
  return composeYPower(p, r).shifted({0, s});
}

inline void requireImageParameters(const BiPoly& p) {
  if (!isMonicY(p)) throw PreconditionError("p must be a monic polynomial in y");
  if (p.coeff({0, 0}).isZero()) throw PreconditionError("p(0) must be nonzero");
}

/// f in C(r,s) + <y^s p(y^r)>.
inline bool membershipCPlusIdeal(const BiPoly& f, std::int64_t r, std::int64_t s, const BiPoly& p) {
  requireImageParameters(p);
  return CPlusPrincipal(r, s, idealGenerator(r, s, p)).contains(f);
}

// ---------------------------------------------------------------------------
// Image identity for case 4

struct ImageReport {
  bool passed = true;
  std::vector<Check> checks;
};

namespace detail {
inline std::string monoText(const Monomial& m) {
  return lfed::toString(BiPoly::monomial(Field(), m));
}
}  // namespace detail

/// Weight of x making delta of a case 4 normal form degree-nonincreasing when
/// y has weight 1: q = s + r deg p (at least 1).
inline std::int64_t case4Weight(std::int64_t r, std::int64_t s, const BiPoly& p) {
  return std::max<std::int64_t>(1, s + r * p.degreeY());
}

/// Checks Im delta = C + <y^s p(y^r)> on a window: every delta(x^m y^n) with
/// m + n <= D lies in the right side, and every C-monomial and every
/// x^m y^(n+s) p(y^r) of degree <= D lies in the span of delta-images of
/// monomials of weighted degree <= qD + margin (q as in case4Weight).
inline ImageReport verifyImageIdentity(const EDerivation& delta, std::int64_t r, std::int64_t s, const BiPoly& p,
                                       std::int64_t D, std::int64_t margin) {
  requireImageParameters(p);
  if (D < 0 || margin < 0) throw PreconditionError("degree bound and margin must be nonnegative");
  const Field& k = delta.field();
  const CPlusPrincipal target(r, s, idealGenerator(r, s, p));
  const MonomialPattern C = MonomialPattern::C(r, s);
  ImageReport report;

  Check subset{"image.subset", Status::Pass, std::nullopt, ""};
  std::size_t count = 0;
  for (const auto& u : monomialsUpTo(D)) {
    const BiPoly img = delta(u);
    ++count;
    if (!target.contains(img)) {
      subset.status = Status::Fail;
      subset.witness = img;
      subset.detail = "delta(" + detail::monoText(u) + ") is not in C + <y^s p(y^r)>";
      break;
    }
  }
  if (subset.status == Status::Pass)
    subset.detail = std::to_string(count) + " generator images lie in C + <y^s p(y^r)>";

  const std::int64_t q = case4Weight(r, s, p);
  const MonomialOrder grading = MonomialOrder::weighted(q, 1);
  const TruncatedSpace window = truncatedImage(delta, q * D + margin, TruncatedSpace::kUnbounded, grading);

  Check supC{"image.superset.C", Status::Pass, std::nullopt, ""};
  count = 0;
  for (const auto& u : monomialsUpTo(D)) {
    if (!C.contains(u)) continue;
    ++count;
    const BiPoly mono = BiPoly::monomial(k, u);
    if (!window.contains(mono)) {
      supC.status = Status::Fail;
      supC.witness = mono;
      supC.detail = "C-monomial not reached by the image window";
      break;
    }
  }
  if (supC.status == Status::Pass)
    supC.detail = std::to_string(count) + " C-monomials reached (window dim " +
                  std::to_string(window.dimension()) + ")";

  Check supI{"image.superset.ideal", Status::Pass, std::nullopt, ""};
  count = 0;
  const BiPoly gen = idealGenerator(r, s, p);
  const std::int64_t genDeg = gen.totalDegree();
  for (const auto& u : monomialsUpTo(D - genDeg)) {
    const BiPoly elem = gen.shifted(u);
    ++count;
    if (!window.contains(elem)) {
      supI.status = Status::Fail;
      supI.witness = elem;
      supI.detail = "ideal element not reached by the image window";
      break;
    }
  }
  if (supI.status == Status::Pass) supI.detail = std::to_string(count) + " ideal elements reached";

  report.checks = {subset, supC, supI};
  report.passed = allPassed(report.checks);
  return report;
}

inline ImageReport verifyImageIdentity(const NormalForm& nf, std::int64_t D, std::int64_t margin) {
  const auto* c4 = std::get_if<Case4>(&nf);
  if (c4 == nullptr) throw PreconditionError("verifyImageIdentity requires a case 4 normal form");
  const EDerivation delta(buildNormalForm(nf));
  return verifyImageIdentity(delta, c4->r, c4->s, c4->p, D, margin);
}

/// For every B1-monomial of degree <= D, delta(x^m y^n) is divisible by
/// y^s p(y^r) and x * quotient has support in B1.
inline Check checkBImageFactorization(const NormalForm& nf, std::int64_t D) {
  const auto* c4 = std::get_if<Case4>(&nf);
  if (c4 == nullptr) throw PreconditionError("checkBImageFactorization requires a case 4 normal form");
  const EDerivation delta(buildNormalForm(nf));
  const BiPoly gen = idealGenerator(c4->r, c4->s, c4->p);
  const MonomialPattern B1 = MonomialPattern::B1(c4->r, c4->s);
  Check check{"image.B-factorization", Status::Pass, std::nullopt, ""};
  std::size_t count = 0;
  for (const auto& u : monomialsUpTo(D)) {
    if (!B1.contains(u)) continue;
    ++count;
    const BiPoly img = delta(u);
    const auto quotient = exactDivideY(img, gen);
    if (!quotient) {
      check.status = Status::Fail;
      check.witness = img;
      check.detail = "delta(" + detail::monoText(u) + ") is not divisible by y^s p(y^r)";
      return check;
    }
    if (!supportMembership(quotient->shifted({1, 0}), B1)) {
      check.status = Status::Fail;
      check.witness = quotient->shifted({1, 0});
      check.detail = "x * delta(" + detail::monoText(u) + ") / (y^s p(y^r)) leaves B1";
      return check;
    }
  }
  check.detail = std::to_string(count) + " B1-monomials factor through y^s p(y^r) B1";
  return check;
}

// ---------------------------------------------------------------------------
// Closed-form images for cases 1, 3 and 6

/// The degree-<= D window of the image predicted for cases 1, 3 and 6.
inline TruncatedSpace expectedImageForCase(const NormalForm& nf, std::int64_t D) {
  if (const auto* c1 = std::get_if<Case1>(&nf)) {
    validate(nf);
    const Field& k = c1->b.field();
    TruncatedSpace out(k, D);
    for (const auto& u : monomialsUpTo(D))
      if (!(c1->b.pow(u.i) * c1->a.pow(u.j)).isOne()) out.add(BiPoly::monomial(k, u));
    return out;
  }
  if (const auto* c3 = std::get_if<Case3>(&nf)) {
    validate(nf);
    return patternSpace(c3->b.field(), MonomialPattern::fullIdealXY(), D);
  }
  if (const auto* c6 = std::get_if<Case6>(&nf)) {
    validate(nf);
    const Field& k = c6->lambda.field();
    const auto order = isRootOfUnity(c6->lambda);
    if (!order) return patternSpace(k, MonomialPattern::fullIdealXY(), D);
    TruncatedSpace out(k, D);
    const MonomialPattern cp = MonomialPattern::Cprime(*order);
    for (const auto& u : monomialsUpTo(D))
      if (u.j > 0 || cp.contains(u)) out.add(BiPoly::monomial(k, u));
    return out;
  }
  throw PreconditionError("expectedImageForCase supports cases 1, 3 and 6 only");
}

/// The degree-<= D window of the actual image for cases 1, 3 and 6, with an
/// input bound large enough that the window is exact: delta is diagonal in
/// case 1; in case 3 it preserves the grading deg x = s, deg y = 1; in case 6
/// delta(x^m) has degree m * deg phi(x) and the y-multiples are fixed.
inline TruncatedSpace imageWindowForCase(const NormalForm& nf, std::int64_t D) {
  const EDerivation delta(buildNormalForm(nf));
  std::int64_t inBound = D;
  if (const auto* c3 = std::get_if<Case3>(&nf)) inBound = c3->s * D;
  if (std::holds_alternative<Case6>(nf))
    inBound = D * std::max<std::int64_t>(1, delta.phi().imageX().totalDegree());
  if (!std::holds_alternative<Case1>(nf) && !std::holds_alternative<Case3>(nf) &&
      !std::holds_alternative<Case6>(nf))
    throw PreconditionError("imageWindowForCase supports cases 1, 3 and 6 only");
  return truncatedImage(delta, inBound, D);
}

}  // namespace lfed
