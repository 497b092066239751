// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "lfed/cli.hpp"
#include "lfed/lfed.hpp"

using namespace lfed;

namespace {

// Pinned parameters. All comparisons are exact; the only tolerances are the
// per-criterion wall-clock budgets below.
constexpr std::uint64_t kSeed = 7;
constexpr std::int64_t kClosedFormDegree = 10;
constexpr std::int64_t kImageD = 8;
constexpr std::int64_t kImageMargin = 6;
constexpr std::int64_t kPreimageDegree = 8;
constexpr int kDftVectors = 50;
constexpr int kNilpotentSamples = 50;
constexpr int kNewtonPairs = 100;
constexpr std::int64_t kNewtonMaxPower = 5;
constexpr int kLeibnizPairs = 100;
constexpr int kMZSamples = 50;

struct Outcome {
  bool ok = true;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double budgetMs;
  std::function<Outcome()> run;
};

std::vector<Case4> case4Sets() {
  const Field q, k3(3);
  return {Case4{2, 1, Coeff(q, -1), parse("y + 1", q)}, Case4{3, 0, Coeff::zeta(k3), parse("y + 1", k3)},
          Case4{2, 2, Coeff(q, -1), parse("y^2 + 2*y + 2", q)}};
}

std::string setName(const Case4& c) { return toString(NormalForm(c)); }

Outcome closedForm() {
  std::size_t n = 0;
  for (const auto& c : case4Sets()) {
    const EDerivation d(buildNormalForm(c));
    for (std::int64_t total = 0; total <= kClosedFormDegree; ++total)
      for (std::int64_t m = 0; m <= total; ++m) {
        ++n;
        if (deltaMonomialClosedForm(m, total - m, c) != d(Monomial{m, total - m}))
          return {false, setName(c) + " at x^" + std::to_string(m) + " y^" + std::to_string(total - m)};
      }
  }
  return {true, std::to_string(n) + " monomials over 3 parameter sets"};
}

Outcome imageIdentity() {
  std::string detail;
  for (const auto& c : case4Sets()) {
    const ImageReport rep = verifyImageIdentity(c, kImageD, kImageMargin);
    for (const auto& ch : rep.checks)
      if (ch.status != Status::Pass) return {false, setName(c) + ": " + ch.id + ": " + ch.detail};
    detail += (detail.empty() ? "" : "; ") + rep.checks[1].detail;
  }
  return {true, detail};
}

Outcome cPreimages() {
  std::size_t n = 0;
  for (const auto& c : case4Sets()) {
    const Field& k = c.p.field();
    const EDerivation d(buildNormalForm(c));
    const MonomialPattern C = MonomialPattern::C(c.r, c.s);
    const MonomialMap map = [&d](const Monomial& u) { return d(u); };
    for (const auto& u : monomialsUpTo(kPreimageDegree)) {
      if (!C.contains(u)) continue;
      const BiPoly target = BiPoly::monomial(k, u);
      BiPoly h(k);
      try {
        h = triangularPreimageSolve(map, C, target, TruncatedSpace::kUnbounded);
      } catch (const Error& e) {
        return {false, setName(c) + ": " + toString(target) + ": " + e.what()};
      }
      if (d(h) != target) return {false, setName(c) + ": delta(preimage) != " + toString(target)};
      ++n;
    }
  }
  return {true, std::to_string(n) + " C-monomials reproduced"};
}

Outcome bFactorization() {
  std::string detail;
  for (const auto& c : case4Sets()) {
    const Check ch = checkBImageFactorization(c, kPreimageDegree);
    if (ch.status != Status::Pass) return {false, setName(c) + ": " + ch.detail};
    detail += (detail.empty() ? "" : "; ") + ch.detail;
  }
  return {true, detail};
}

Outcome idempotents() {
  for (std::int64_t r = 1; r <= 6; ++r) {
    const auto found = idempotentSearchCprimeR(Field(static_cast<int>(r)), r);
    if (found.size() != 1 || !found[0].isZero()) return {false, "r = " + std::to_string(r) + " found a nonzero idempotent"};
  }
  return {true, "only 0 for r = 1..6"};
}

Outcome dftRoundTrip() {
  Rng rng(kSeed);
  for (int r : {2, 3, 4, 6}) {
    const Field k(r);
    const Coeff omega = requirePrimitiveRoot(k, r);
    for (int t = 0; t < kDftVectors; ++t) {
      std::vector<Coeff> values;
      for (int i = 0; i < r; ++i) values.push_back(randomCoeff(k, rng, 9));
      if (forwardDFT(inverseDFT(values), omega) != values)
        return {false, "r = " + std::to_string(r) + " vector " + std::to_string(t)};
    }
  }
  return {true, std::to_string(4 * kDftVectors) + " vectors"};
}

Outcome nilpotency() {
  Rng rng(kSeed);
  const Field k;
  std::size_t nil = 0;
  for (const char* text : {"y^2", "y^3 + y", "(y^2 - 1)^2"}) {
    const BiPoly h = parse(text, k);
    const PrincipalQuotient A(h);
    for (int t = 0; t < kNilpotentSamples; ++t) {
      BiPoly f = randomPoly(k, rng, {4, 5, 4, true});
      if (t % 2 == 1) f = f * A.radicalModulus();  // guarantees some nilpotents
      // Oracle: f is nilpotent mod h iff f^deg h vanishes mod h.
      BiPoly power = A.reduce(BiPoly::one(k));
      for (std::int64_t e = 0; e < h.degreeY(); ++e) power = A.multiply(power, f);
      const bool expected = power.isZero();
      nil += expected ? 1 : 0;
      if (A.isNilpotent(f) != expected) return {false, text + std::string(": ") + toString(f)};
    }
  }
  return {true, std::to_string(3 * kNilpotentSamples) + " elements, " + std::to_string(nil) + " nilpotent"};
}

Outcome newton() {
  Rng rng(kSeed);
  const Field k;
  for (int t = 0; t < kNewtonPairs; ++t) {
    const BiPoly f = randomPoly(k, rng, {8, 6, 5}), g = randomPoly(k, rng, {8, 6, 5});
    if (polygonOf(f * g) != minkowskiSum(polygonOf(f), polygonOf(g)))
      return {false, "Minkowski identity fails for " + toString(f) + " and " + toString(g)};
    for (std::int64_t m = 1; m <= kNewtonMaxPower; ++m)
      if (!allPassed(vertexPowerCheck(f, m))) return {false, "vertex power fails for " + toString(f)};
  }
  return {true, std::to_string(kNewtonPairs) + " pairs, m <= " + std::to_string(kNewtonMaxPower)};
}

Outcome sevenCases() {
  std::string detail;
  for (int c = 1; c <= 7; ++c) {
    cli::SessionConfig cfg;
    cfg.seed = static_cast<std::int64_t>(kSeed);
    if (c == 3 || c == 6) cfg.D = 6;
    const cli::Report rep = cli::cmdVerifySuite(c, cfg);
    for (const auto& ch : rep.checks)
      if (ch.status != Status::Pass)
        return {false, "case " + std::to_string(c) + ": " + ch.id + " " + toString(ch.status) + ": " + ch.detail};
    detail += (detail.empty() ? "" : ", ") + std::to_string(rep.checks.size());
  }
  return {true, "checks per case: " + detail};
}

Outcome localFiniteness() {
  const Field q, k3(3), k6(6);
  const std::vector<NormalForm> forms = {
      Case1{Coeff(q, 2), Coeff(q, 3)},
      Case2{Coeff(q, 5)},
      Case3{1, Coeff(q, 1), Coeff(q, 2)},
      Case3{2, Coeff(q, -3), Coeff(q, Rational(1, 3))},
      case4Sets()[0],
      case4Sets()[1],
      case4Sets()[2],
      Case4{6, 1, Coeff::zeta(k6), parse("y^2 - z*y + 1", k6)},
      Case6{Coeff(q, -1), parse("x", q)},
      Case6{Coeff::zeta(k3), parse("x^2 + y", k3)},
      Case7{Coeff(q, 2), parse("x", q)},
      Case7{Coeff(q, -1), parse("x*y + 1", q)},
  };
  for (const auto& nf : forms) {
    const LFReport rep = localFiniteReport(buildNormalForm(nf), 50, 100);
    if (rep.x.verdict != LFEntry::Verdict::FiniteDimensional || rep.y.verdict != LFEntry::Verdict::FiniteDimensional)
      return {false, toString(nf) + " not finite"};
  }
  const Endomorphism square(parse("x^2", q), parse("y", q));
  const LFEntry e = localFiniteProbe(square, BiPoly::x(q), 50, 100);
  if (e.verdict != LFEntry::Verdict::CutoffExceeded) return {false, "x -> x^2 reported finite"};
  for (std::size_t i = 1; i < e.trajectory.size(); ++i)
    if (e.trajectory[i] <= e.trajectory[i - 1]) return {false, "x -> x^2 trajectory not strictly increasing"};
  return {true, std::to_string(forms.size()) + " forms finite; x -> x^2 cut off after " +
                    std::to_string(e.trajectory.size()) + " dimensions"};
}

Outcome leibniz() {
  Rng rng(kSeed);
  std::size_t n = 0;
  for (const auto& nf : {NormalForm(case4Sets()[0]), NormalForm(case4Sets()[1]),
                         NormalForm(Case7{Coeff(Field(), 2), parse("x", Field())})}) {
    const EDerivation d(buildNormalForm(nf));
    const Field& k = d.field();
    for (int t = 0; t < kLeibnizPairs; ++t, ++n) {
      const BiPoly f = randomPoly(k, rng, {5, 6, 4}), g = randomPoly(k, rng, {5, 6, 4});
      if (d(f * g) != d(f) * g + d.phi()(f) * d(g)) return {false, toString(nf) + ": " + toString(f) + ", " + toString(g)};
    }
  }
  return {true, std::to_string(n) + " pairs"};
}

Outcome mzCoherence() {
  const Field k;
  const BiPoly p = parse("y + 1", k);
  const MembershipOracle M = cPlusPrincipalOracle(2, 1, parse("y^3 + y", k));
  cli::SessionConfig cfg;
  cfg.N = 12;
  cfg.genDeg = 3;
  cfg.mLo = 1;
  cfg.mHi = 12;
  const cli::MZSummary s = cli::runMZProbes(cli::mzSamples(k, 2, 1, p, kSeed, kMZSamples), M, cfg);
  if (s.violations != 0) return {false, std::to_string(s.violations) + " samples with persistent violations"};
  if (s.inWeakRadical == 0) return {false, "no sample passed the weak-radical window"};
  return {true, std::to_string(s.inWeakRadical) + " of " + std::to_string(s.samples) +
                    " samples in the weak radical; no violations"};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "closed-form delta on monomials", 5000, closedForm},
      {2, "image identity window", 60000, imageIdentity},
      {3, "C-monomial preimages", 60000, cPreimages},
      {4, "B1 factorization", 60000, bFactorization},
      {5, "idempotent search", 5000, idempotents},
      {6, "DFT round trip", 60000, dftRoundTrip},
      {7, "nilpotency agreement", 60000, nilpotency},
      {8, "Newton polygons", 10000, newton},
      {9, "seven-case suite", 60000, sevenCases},
      {10, "local finiteness", 60000, localFiniteness},
      {11, "Leibniz rule", 60000, leibniz},
      {12, "MZ probing", 60000, mzCoherence},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    if (o.ok && ms > c.budgetMs) o = {false, "over time budget: " + o.detail};
    failures += o.ok ? 0 : 1;
    std::printf("%s  [%2d] %-32s %9.1f ms  %s\n", o.ok ? "PASS" : "FAIL", c.id, c.name.c_str(), ms, o.detail.c_str());
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
