#pragma once

// Quotients K[x,y]/<h(y)>, their CRT splitting, the inverse DFT on
// K[y]/<y^r - 1>, and finite-window probes of the Mathieu-Zhao property.

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lfed/bipoly.hpp"
#include "lfed/check.hpp"
#include "lfed/echelon.hpp"
#include "lfed/endo.hpp"
#include "lfed/error.hpp"
#include "lfed/field.hpp"
#include "lfed/parse.hpp"
#include "lfed/subspace.hpp"

namespace lfed {

inline void requireMonicModulus(const BiPoly& h) {
  if (!isMonicY(h)) throw PreconditionError("modulus must be a monic polynomial in y");
}

/// Remainder of f modulo the monic h in K[y]; x-degrees are untouched.
inline BiPoly reduceMod(const BiPoly& f, const BiPoly& h) {
  requireMonicModulus(h);
  return divmodY(f, h).second;
}

/// h / gcd(h, h'), monic.
inline BiPoly squarefreePart(const BiPoly& h) {
  requireMonicModulus(h);
  if (h.degreeY() <= 0) return h;
  return monicY(divmodY(h, gcdY(h, partialY(h))).first);
}

/// K[x,y]/<h(y)> with elements in normal form (y-degree < deg h).
class PrincipalQuotient {
 public:
  explicit PrincipalQuotient(BiPoly modulus) : modulus_(std::move(modulus)) {
    requireMonicModulus(modulus_);
    squarefree_ = lfed::squarefreePart(modulus_);
  }

  const BiPoly& modulus() const noexcept { return modulus_; }
  const BiPoly& radicalModulus() const noexcept { return squarefree_; }

  BiPoly reduce(const BiPoly& f) const { return divmodY(f, modulus_).second; }
  BiPoly multiply(const BiPoly& a, const BiPoly& b) const { return reduce(a * b); }
  BiPoly power(const BiPoly& f, std::int64_t e) const {
    BiPoly result = reduce(BiPoly::one(modulus_.field()));
    BiPoly base = reduce(f);
    while (e > 0) {
      if (e & 1) result = multiply(result, base);
      e >>= 1;
      if (e > 0) base = multiply(base, base);
    }
    return result;
  }

  /// K[x][y]/<h> has nilradical generated by the squarefree part of h, since
  /// K[y]/<sqfree h> is a product of fields and stays reduced after adjoining x.
  bool isNilpotent(const BiPoly& f) const { return divmodY(f, squarefree_).second.isZero(); }

 private:
  BiPoly modulus_;
  BiPoly squarefree_;
};

inline bool isNilpotentInQuotient(const BiPoly& f, const BiPoly& h) { return PrincipalQuotient(h).isNilpotent(f); }

// ---------------------------------------------------------------------------
// CRT

struct RootFactor {
  Coeff root;              // a_i
  std::int64_t multiplicity;  // n_i
};

struct CRTComponent {
  BiPoly modulus;  // y^s or (y^r - a_i)^{n_i}
  std::string label;
  BiPoly project(const BiPoly& f) const { return divmodY(f, modulus).second; }
};

struct CRTDecomposition {
  BiPoly source;  // y^s p(y^r)
  std::vector<CRTComponent> components;

  std::vector<BiPoly> project(const BiPoly& f) const {
    std::vector<BiPoly> out;
    for (const auto& c : components) out.push_back(c.project(f));
    return out;
  }
};

/// Split K[x,y]/<y^s p(y^r)> with p = prod (y - a_i)^{n_i} into
/// K[x,y]/<y^s> x prod K[x,y]/<(y^r - a_i)^{n_i}>. When `declaredP` is given
/// the factorisation must reassemble to it.
inline CRTDecomposition crtDecompose(const Field& field, std::int64_t s, const std::vector<RootFactor>& factors,
                                     std::int64_t r, const std::optional<BiPoly>& declaredP = std::nullopt) {
  if (r < 1) throw InvalidParameter("r must be >= 1");
  if (s < 0) throw InvalidParameter("s must be >= 0");
  for (std::size_t a = 0; a < factors.size(); ++a) {
    field.requireSame(factors[a].root.field());
    if (factors[a].root.isZero()) throw InvalidParameter("crtDecompose: root a_i = 0 is not allowed");
    if (factors[a].multiplicity < 1) throw InvalidParameter("crtDecompose: multiplicities must be >= 1");
    for (std::size_t b = 0; b < a; ++b)
      if (factors[a].root == factors[b].root) throw InvalidParameter("crtDecompose: repeated root " + toString(factors[a].root));
  }
  const BiPoly y = BiPoly::y(field);
  BiPoly p = BiPoly::one(field);
  CRTDecomposition out{BiPoly(field), {}};
  if (s > 0) out.components.push_back({BiPoly::monomial(field, {0, s}), "y^" + std::to_string(s)});
  for (const auto& f : factors) {
    p = p * pow(y - BiPoly::constant(f.root), f.multiplicity);
    const BiPoly base = BiPoly::monomial(field, {0, r}) - BiPoly::constant(f.root);
    out.components.push_back({pow(base, f.multiplicity), "(" + toString(base) + ")^" + std::to_string(f.multiplicity)});
  }
  if (declaredP && !(*declaredP == p))
    throw InvalidParameter("crtDecompose: factorisation reassembles to " + toString(p) + ", not " +
                           toString(*declaredP));
  out.source = idealGenerator(r, s, p);

  for (std::size_t a = 0; a < out.components.size(); ++a)
    for (std::size_t b = 0; b < a; ++b)
      if (gcdY(out.components[a].modulus, out.components[b].modulus).degreeY() != 0)
        throw std::logic_error("crtDecompose: components are not coprime");

  // Injectivity on normal forms: projection is K[x]-linear and preserves
  // x-degree, so it suffices that the images of 1, y, ..., y^(deg-1) are
  // independent. Component c is encoded in the x-exponent.
  EchelonBasis image(field);
  const std::int64_t deg = out.source.degreeY();
  for (std::int64_t j = 0; j < deg; ++j) {
    BiPoly tuple(field);
    const auto parts = out.project(BiPoly::monomial(field, {0, j}));
    for (std::size_t c = 0; c < parts.size(); ++c)
      tuple += parts[c].shifted({static_cast<std::int64_t>(c), 0});
    image.insert(tuple);
  }
  if (static_cast<std::int64_t>(image.dimension()) != deg)
    throw std::logic_error("crtDecompose: projection is not injective");
  return out;
}

/// Roots of a monic p in K[y] found among rational-root candidates and +-zeta^k;
/// nullopt when these do not account for all of p.
inline std::optional<std::vector<RootFactor>> splitOverField(const BiPoly& p) {
  if (!isMonicY(p)) throw PreconditionError("splitOverField: p must be monic in y");
  const Field& k = p.field();
  std::vector<Coeff> candidates;
  bool rationalCoeffs = true;
  for (const auto& [m, v] : p.terms())
    if (!Coeff(k, v).isRational()) rationalCoeffs = false;
  if (rationalCoeffs && !p.isZero()) {
    // Clear denominators: roots of p are (divisor of a_0') / (divisor of lead').
    mpz_class lcmDen = 1;
    for (const auto& [m, v] : p.terms()) mpz_lcm(lcmDen.get_mpz_t(), lcmDen.get_mpz_t(), v[0].get_den_mpz_t());
    const BiPoly scaledP = p.scaled(Coeff(k, Rational(lcmDen)));
    // Lowest nonzero coefficient bounds the numerators (roots 0 handled separately).
    mpz_class low = abs(scaledP.terms().rbegin()->second[0].get_num());
    mpz_class lead = abs(scaledP.terms().begin()->second[0].get_num());
    auto divisorsOf = [](mpz_class n) {
      std::vector<mpz_class> out;
      if (n > 1'000'000) return out;  // keep the search desk-scale
      for (mpz_class d = 1; d <= n; ++d)
        if (n % d == 0) out.push_back(d);
      return out;
    };
    for (const auto& a : divisorsOf(low))
      for (const auto& b : divisorsOf(lead))
        for (int sign : {1, -1}) candidates.emplace_back(k, Rational(a * sign, b));
  }
  const Coeff z = Coeff::zeta(k);
  for (int e = 0; e < k.conductor(); ++e) {
    candidates.push_back(z.pow(e));
    candidates.push_back(-z.pow(e));
  }
  candidates.emplace_back(k, 0L);

  std::vector<RootFactor> roots;
  BiPoly rest = p;
  for (const auto& c : candidates) {
    bool seen = false;
    for (const auto& r : roots)
      if (r.root == c) seen = true;
    if (seen) continue;
    const BiPoly lin = BiPoly::y(k) - BiPoly::constant(c);
    std::int64_t mult = 0;
    while (rest.degreeY() > 0) {
      auto q = exactDivideY(rest, lin);
      if (!q) break;
      rest = std::move(*q);
      ++mult;
    }
    if (mult > 0) roots.push_back({c, mult});
  }
  if (rest.degreeY() != 0) return std::nullopt;
  return roots;
}

// ---------------------------------------------------------------------------
// DFT on K[y]/<y^r - 1>

/// K[y]/<y^r - 1> with basis 1, ybar, ..., ybar^(r-1).
class FiniteAlgebra {
 public:
  FiniteAlgebra(const Field& field, std::int64_t r)
      : r_(r), quotient_(BiPoly::monomial(field, {0, r}) - BiPoly::one(field)) {
    if (r < 1) throw InvalidParameter("r must be >= 1");
  }
  std::int64_t r() const noexcept { return r_; }
  const PrincipalQuotient& quotient() const noexcept { return quotient_; }

  /// sum b_j ybar^j.
  BiPoly element(const std::vector<Coeff>& b) const {
    BiPoly out(quotient_.modulus().field());
    for (std::size_t j = 0; j < b.size(); ++j) out.addTerm({0, static_cast<std::int64_t>(j)}, b[j]);
    return quotient_.reduce(out);
  }
  bool isIdempotent(const BiPoly& u) const { return quotient_.multiply(u, u) == quotient_.reduce(u); }

 private:
  std::int64_t r_;
  PrincipalQuotient quotient_;
};

inline Coeff requirePrimitiveRoot(const Field& field, std::int64_t r) {
  auto omega = primitiveRootOfUnity(field, static_cast<int>(r));
  if (!omega)
    throw PreconditionError("Q(zeta_" + std::to_string(field.conductor()) + ") has no primitive " +
                            std::to_string(r) + "-th root of unity");
  return *omega;
}

/// Evaluate f = sum b_j y^j at omega^i, i = 0..r-1.
inline std::vector<Coeff> forwardDFT(const std::vector<Coeff>& b, const Coeff& omega) {
  const std::size_t r = b.size();
  std::vector<Coeff> out;
  for (std::size_t i = 0; i < r; ++i) {
    Coeff acc(omega.field());
    for (std::size_t j = 0; j < r; ++j) acc = acc + b[j] * omega.pow(static_cast<std::int64_t>((i * j) % r));
    out.push_back(acc);
  }
  return out;
}

/// b_j = (1/r) sum_i values_i omega^(-ij).
inline std::vector<Coeff> inverseDFT(const std::vector<Coeff>& values, const Coeff& omega) {
  const std::size_t r = values.size();
  if (r == 0) return {};
  const Coeff invR(omega.field(), Rational(1, static_cast<long>(r)));
  const Coeff omegaInv = omega.inverse();
  std::vector<Coeff> out;
  for (std::size_t j = 0; j < r; ++j) {
    Coeff acc(omega.field());
    for (std::size_t i = 0; i < r; ++i) acc = acc + values[i] * omegaInv.pow(static_cast<std::int64_t>((i * j) % r));
    out.push_back(acc * invR);
  }
  return out;
}

inline std::vector<Coeff> inverseDFT(const std::vector<Coeff>& values) {
  if (values.empty()) return {};
  const Field& k = values.front().field();
  return inverseDFT(values, requirePrimitiveRoot(k, static_cast<std::int64_t>(values.size())));
}

/// All idempotents of K[y]/<y^r - 1> lying in span{ybar, ..., ybar^(r-1)}:
/// every idempotent takes values in {0,1} at the r-th roots of unity, so the
/// 2^r value vectors are inverted and those with b_0 = 0 are kept.
inline std::vector<BiPoly> idempotentSearchCprimeR(const Field& field, std::int64_t r) {
  if (r < 1 || r > 20) throw PreconditionError("idempotentSearchCprimeR: r must be in 1..20");
  const Coeff omega = requirePrimitiveRoot(field, r);
  const FiniteAlgebra algebra(field, r);
  std::vector<BiPoly> found;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << r); ++mask) {
    std::vector<Coeff> values;
    for (std::int64_t i = 0; i < r; ++i) values.emplace_back(field, static_cast<long>((mask >> i) & 1));
    const auto b = inverseDFT(values, omega);
    if (!b[0].isZero()) continue;
    const BiPoly u = algebra.element(b);
    if (!algebra.isIdempotent(u)) throw std::logic_error("inverse DFT of a 0/1 vector is not idempotent");
    found.push_back(u);
  }
  return found;
}

// ---------------------------------------------------------------------------
// Membership oracles and MZ probes

/// A named subspace given by its membership predicate. `reducer` maps an
/// element to a representative with the same membership (e.g. a normal form
/// modulo an ideal inside M) and keeps powers small; `project` transports the
/// subspace along K[x,y] -> K[x,y]/<h>.
struct MembershipOracle {
  std::string name;
  std::function<bool(const BiPoly&)> contains;
  std::function<BiPoly(const BiPoly&)> reducer;
  std::function<MembershipOracle(const BiPoly&)> project;

  BiPoly reduce(const BiPoly& f) const { return reducer ? reducer(f) : f; }
};

/// C(r,s) + <h>; the projection onto K[x,y]/<m> is C + <gcd(h, m)> read modulo m.
inline MembershipOracle cPlusPrincipalOracle(std::int64_t r, std::int64_t s, const BiPoly& h) {
  auto space = std::make_shared<const CPlusPrincipal>(r, s, h);
  MembershipOracle oracle;
  oracle.name = "C(" + std::to_string(r) + "," + std::to_string(s) + ") + <" + toString(h) + ">";
  oracle.contains = [space](const BiPoly& f) { return space->contains(f); };
  oracle.reducer = [space](const BiPoly& f) { return space->reduce(f); };
  oracle.project = [r, s, h](const BiPoly& m) {
    const BiPoly g = gcdY(h, m);
    MembershipOracle projected = cPlusPrincipalOracle(r, s, g);
    projected.name = "pi(" + toString(m) + ")[C(" + std::to_string(r) + "," + std::to_string(s) + ") + <" +
                     toString(h) + ">]";
    return projected;
  };
  return oracle;
}

/// C(r,s) + <y^s p(y^r)>.
inline MembershipOracle imageOracle(std::int64_t r, std::int64_t s, const BiPoly& p) {
  requireImageParameters(p);
  return cPlusPrincipalOracle(r, s, idealGenerator(r, s, p));
}

/// The span of a monomial pattern.
inline MembershipOracle patternOracle(const MonomialPattern& pattern) {
  MembershipOracle oracle;
  oracle.name = pattern.name();
  oracle.contains = [pattern](const BiPoly& f) { return supportMembership(f, pattern); };
  return oracle;
}

/// First m in 1..N with f^m not in M, if any.
inline std::optional<std::int64_t> weakRadicalFirstFailure(const BiPoly& f, const MembershipOracle& M, std::int64_t N) {
  if (N < 1) throw PreconditionError("weakRadicalProbe: N must be >= 1");
  const BiPoly base = M.reduce(f);
  BiPoly power = base;
  for (std::int64_t m = 1; m <= N; ++m) {
    if (m > 1) power = M.reduce(power * base);
    if (!M.contains(power)) return m;
  }
  return std::nullopt;
}

/// f^m in M for all 1 <= m <= N.
inline bool weakRadicalProbe(const BiPoly& f, const MembershipOracle& M, std::int64_t N) {
  return !weakRadicalFirstFailure(f, M, N).has_value();
}

struct TransferReport {
  std::size_t samples = 0;
  std::size_t inWeakRadical = 0;
  std::vector<BiPoly> violations;
};

/// For each sample in the N-window of wr(M), checks that its projection
/// modulo `modulus` lies in the N-window of wr(pi(M)).
inline TransferReport wrTransferCheck(const std::vector<BiPoly>& samples, const MembershipOracle& M,
                                      const BiPoly& modulus, std::int64_t N) {
  if (!M.project) throw PreconditionError("wrTransferCheck: oracle " + M.name + " cannot be projected");
  const MembershipOracle projected = M.project(modulus);
  TransferReport report;
  for (const auto& f : samples) {
    ++report.samples;
    if (!weakRadicalProbe(f, M, N)) continue;
    ++report.inWeakRadical;
    if (!weakRadicalProbe(reduceMod(f, modulus), projected, N)) report.violations.push_back(f);
  }
  return report;
}

struct MZProbeEntry {
  Monomial g;
  std::int64_t threshold = 0;          // least n with f^m g in M for n < m <= hi
  std::vector<std::int64_t> failing;   // exponents m with f^m g not in M
  bool violation = false;              // f^hi g not in M
};

struct MZProbeReport {
  std::vector<MZProbeEntry> entries;
  std::size_t violations() const {
    std::size_t n = 0;
    for (const auto& e : entries) n += e.violation ? 1 : 0;
    return n;
  }
};

/// For each monomial g of degree <= genDeg, the least n in [lo-1, hi] with
/// f^m g in M for all n < m <= hi. A g with f^hi g outside M is reported as a
/// candidate violation. Requires f in the hi-window of wr(M).
inline MZProbeReport mzFalsifierProbe(const BiPoly& f, const MembershipOracle& M, std::int64_t genDeg,
                                      std::int64_t lo, std::int64_t hi) {
  if (lo < 1 || hi < lo) throw PreconditionError("mzFalsifierProbe: need 1 <= lo <= hi");
  if (auto fail = weakRadicalFirstFailure(f, M, hi))
    throw PreconditionError("mzFalsifierProbe: f^" + std::to_string(*fail) + " is not in " + M.name);
  std::vector<BiPoly> powers;  // f^lo .. f^hi, reduced
  const BiPoly base = M.reduce(f);
  BiPoly power = M.reduce(pow(base, lo));
  for (std::int64_t m = lo; m <= hi; ++m) {
    powers.push_back(power);
    power = M.reduce(power * base);
  }
  MZProbeReport report;
  for (const auto& g : monomialsUpTo(genDeg)) {
    MZProbeEntry entry;
    entry.g = g;
    entry.threshold = lo - 1;
    for (std::int64_t m = lo; m <= hi; ++m) {
      const BiPoly prod = powers[static_cast<std::size_t>(m - lo)].shifted(g);
      if (!M.contains(M.reduce(prod))) {
        entry.failing.push_back(m);
        entry.threshold = m;
      }
    }
    entry.violation = !entry.failing.empty() && entry.failing.back() == hi;
    report.entries.push_back(std::move(entry));
  }
  return report;
}

}  // namespace lfed
