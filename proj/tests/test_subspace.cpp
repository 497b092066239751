#include <gtest/gtest.h>

#include "support.hpp"

using namespace lfed;
using lfed::testing::P;
using lfed::testing::Q;

namespace {

EDerivation deltaOf(const NormalForm& nf) { return EDerivation(buildNormalForm(nf)); }

MonomialMap mapOf(const EDerivation& d) {
  return [d](const Monomial& u) { return d(u); };
}

// Span of all C-monomials and all monomial multiples of y^s p(y^r), up to the bound.
EchelonBasis bruteForceCPlusIdeal(std::int64_t r, std::int64_t s, const BiPoly& p, std::int64_t bound) {
  const Field& k = p.field();
  EchelonBasis span(k);
  const MonomialPattern C = MonomialPattern::C(r, s);
  for (const auto& u : monomialsUpTo(bound))
    if (C.contains(u)) span.insert(BiPoly::monomial(k, u));
  const BiPoly gen = idealGenerator(r, s, p);
  for (const auto& u : monomialsUpTo(bound - gen.totalDegree())) span.insert(gen.shifted(u));
  return span;
}

}  // namespace

TEST(Pattern, Examples) {
  EXPECT_FALSE(patternContains(MonomialPattern::C(2, 1), {1, 1}));
  EXPECT_TRUE(patternContains(MonomialPattern::C(2, 1), {1, 0}));
  EXPECT_FALSE(patternContains(MonomialPattern::B1(2, 1), {0, 2}));
  EXPECT_TRUE(patternContains(MonomialPattern::B1(2, 1), {1, 1}));
  EXPECT_TRUE(patternContains(MonomialPattern::Cprime(2), {3, 0}));
  EXPECT_FALSE(patternContains(MonomialPattern::Cprime(2), {3, 1}));
  EXPECT_FALSE(patternContains(MonomialPattern::fullIdealXY(), {0, 0}));
  EXPECT_THROW(MonomialPattern::C(0, 1), InvalidParameter);
}

TEST(Pattern, CAndBPartitionMonomials) {
  for (std::int64_t r = 1; r <= 5; ++r)
    for (std::int64_t s = 0; s <= 4; ++s)
      for (const auto& u : monomialsUpTo(20))
        EXPECT_NE(MonomialPattern::C(r, s).contains(u), MonomialPattern::B(r, s).contains(u));
}

TEST(Pattern, SupportMembership) {
  EXPECT_TRUE(supportMembership(P("x + x^2*y"), MonomialPattern::C(2, 1)));
  EXPECT_TRUE(supportMembership(P("0"), MonomialPattern::C(2, 1)));
  EXPECT_FALSE(supportMembership(P("x*y"), MonomialPattern::C(2, 1)));
}

TEST(Echelon, ReduceAndContains) {
  EchelonBasis b(Field(), MonomialOrder::lex());
  EXPECT_TRUE(b.insert(P("x + y")));
  EXPECT_TRUE(b.insert(P("x - y")));
  EXPECT_FALSE(b.insert(P("3*x")));
  EXPECT_TRUE(b.contains(P("y")));
  EXPECT_FALSE(b.contains(P("x^2")));
  EXPECT_EQ(b.reduce(P("x + y + x^2")), P("x^2"));
  EXPECT_EQ(b.dimension(), 2u);
  const auto reduced = b.reducedRows();
  EXPECT_EQ(reduced[0], P("x"));
  EXPECT_EQ(reduced[1], P("y"));
}

TEST(Echelon, WeightedOrderPivots) {
  EchelonBasis b(Field(), MonomialOrder::weighted(3, 1));
  b.insert(P("x + y^4"));
  EXPECT_EQ(b.pivots().front(), (Monomial{0, 4}));
}

TEST(TriangularSolver, Examples) {
  const EDerivation d = deltaOf(lfed::testing::runningCase4());
  const MonomialPattern C = MonomialPattern::C(2, 1);
  EXPECT_EQ(triangularPreimageSolve(mapOf(d), C, P("x"), 8), P("1/2*x + 1/4*y^3 + 1/4*y"));
  EXPECT_EQ(triangularPreimageSolve(mapOf(d), C, P("y"), 8), P("1/2*y"));
  EXPECT_THROW(triangularPreimageSolve(mapOf(d), C, P("x*y"), 8), PreconditionError);
}

TEST(TriangularSolver, ReportsOffendingMonomial) {
  // phi(y) = y makes delta(y) = 0 although y lies in C(2,1).
  const EDerivation broken(Endomorphism(P("-x + y^3 + y"), P("y")));
  try {
    triangularPreimageSolve(mapOf(broken), MonomialPattern::C(2, 1), P("y"), 8);
    FAIL() << "expected a leading-term violation";
  } catch (const LeadingTermViolation& e) {
    EXPECT_EQ(e.monomial(), (Monomial{0, 1}));
  }
}

TEST(TriangularSolver, DegreeBound) {
  const EDerivation d = deltaOf(lfed::testing::runningCase4());
  EXPECT_THROW(triangularPreimageSolve(mapOf(d), MonomialPattern::C(2, 1), P("x"), 2), DegreeBoundExceeded);
}

TEST(TriangularSolver, SoundOnCMonomials) {
  for (const NormalForm& nf : {NormalForm(lfed::testing::runningCase4()), NormalForm(lfed::testing::cyclotomicCase4()),
                              NormalForm(lfed::testing::quadraticCase4())}) {
    const auto& c4 = std::get<Case4>(nf);
    const EDerivation d = deltaOf(nf);
    const MonomialPattern C = MonomialPattern::C(c4.r, c4.s);
    for (const auto& u : monomialsUpTo(8)) {
      if (!C.contains(u)) continue;
      const BiPoly target = BiPoly::monomial(d.field(), u);
      const BiPoly h = triangularPreimageSolve(mapOf(d), C, target, TruncatedSpace::kUnbounded);
      EXPECT_TRUE(supportMembership(h, C));
      EXPECT_EQ(d(h), target);
    }
  }
}

TEST(TruncatedImage, Case1Diagonal) {
  const EDerivation d = deltaOf(Case1{Q(2), Q(3)});
  const TruncatedSpace img = truncatedImage(d, 2, 2);
  EXPECT_EQ(img.dimension(), 5u);
  EXPECT_TRUE(img.sameSpan(patternSpace(Field(), MonomialPattern::fullIdealXY(), 2)));
}

TEST(TruncatedImage, Case4ContainsX) {
  const EDerivation d = deltaOf(lfed::testing::runningCase4());
  const TruncatedSpace img = truncatedImage(d, 3, 1);
  EXPECT_TRUE(img.contains(P("x")));
  EXPECT_TRUE(img.contains(P("y")));
  // Cross-check against the explicit preimage.
  const BiPoly h = triangularPreimageSolve(mapOf(d), MonomialPattern::C(2, 1), P("x"), 3);
  EXPECT_EQ(d(h), P("x"));
}

TEST(TruncatedImage, ZeroDerivation) {
  EXPECT_EQ(truncatedImage(EDerivation(Endomorphism::identity(Field())), 5, 5).dimension(), 0u);
}

TEST(TruncatedImage, MonotoneInInputBound) {
  const EDerivation d = deltaOf(lfed::testing::runningCase4());
  const TruncatedSpace small = truncatedImage(d, 4, 4), large = truncatedImage(d, 7, 4);
  for (const auto& row : small.basis().rows()) EXPECT_TRUE(large.contains(row));
  EXPECT_GE(large.dimension(), small.dimension());
}

TEST(TruncatedImage, TotalDegreeWindowMissesDeepPreimages) {
  // The unique C-preimage of x^7 under the running example reaches y^21, so a
  // total-degree input window of 14 cannot reach it.
  const EDerivation d = deltaOf(lfed::testing::runningCase4());
  const BiPoly h = triangularPreimageSolve(mapOf(d), MonomialPattern::C(2, 1), P("x^7"), TruncatedSpace::kUnbounded);
  EXPECT_TRUE(h.contains({0, 21}));
  EXPECT_FALSE(truncatedImage(d, 14, TruncatedSpace::kUnbounded).contains(P("x^7")));
  EXPECT_TRUE(truncatedImage(d, 3 * 7, TruncatedSpace::kUnbounded, MonomialOrder::weighted(3, 1)).contains(P("x^7")));
}

TEST(Membership, Examples) {
  const BiPoly p = P("y + 1");
  EXPECT_TRUE(membershipCPlusIdeal(P("y^4 + y^2"), 2, 1, p));
  EXPECT_TRUE(membershipCPlusIdeal(P("x"), 2, 1, p));
  EXPECT_FALSE(membershipCPlusIdeal(P("x^2"), 2, 1, p));
  EXPECT_THROW(membershipCPlusIdeal(P("x"), 2, 1, P("y")), PreconditionError);
  EXPECT_THROW(membershipCPlusIdeal(P("x"), 2, 1, P("2*y + 1")), PreconditionError);
}

TEST(Membership, UnitIdeal) {
  // s = 0, p = 1: the ideal is everything.
  EXPECT_TRUE(membershipCPlusIdeal(P("x^2 + 7"), 3, 0, P("1")));
  EXPECT_TRUE(membershipCPlusIdeal(P("1"), 1, 0, P("1")));
}

TEST(Membership, AgreesWithBruteForce) {
  struct Params {
    std::int64_t r, s;
    BiPoly p;
  };
  const std::vector<Params> sets = {{2, 1, P("y + 1")}, {2, 2, P("y^2 + 2*y + 2")}, {3, 1, P("y - 2")}};
  Rng rng(31);
  for (const auto& ps : sets) {
    const EchelonBasis brute = bruteForceCPlusIdeal(ps.r, ps.s, ps.p, 24);
    // All monomials of degree <= 6, then random combinations.
    for (const auto& u : monomialsUpTo(6)) {
      const BiPoly f = BiPoly::monomial(Field(), u);
      EXPECT_EQ(membershipCPlusIdeal(f, ps.r, ps.s, ps.p), brute.contains(f)) << toString(f);
    }
    for (int trial = 0; trial < 100; ++trial) {
      BiPoly f = randomPoly(Field(), rng, {4, 6, 3});
      if (trial % 2 == 0) f += idealGenerator(ps.r, ps.s, ps.p) * randomPoly(Field(), rng, {2, 2, 3});
      if (f.totalDegree() > 6) continue;
      EXPECT_EQ(membershipCPlusIdeal(f, ps.r, ps.s, ps.p), brute.contains(f)) << toString(f);
    }
  }
}

TEST(ImageIdentity, RunningExample) {
  const ImageReport report = verifyImageIdentity(lfed::testing::runningCase4(), 8, 6);
  EXPECT_TRUE(report.passed);
  ASSERT_EQ(report.checks.size(), 3u);
  for (const auto& c : report.checks) EXPECT_EQ(c.status, Status::Pass) << c.id << ": " << c.detail;
}

TEST(ImageIdentity, CyclotomicExample) {
  EXPECT_TRUE(verifyImageIdentity(lfed::testing::cyclotomicCase4(), 6, 6).passed);
}

TEST(ImageIdentity, CorruptedDerivationFails) {
  // phi(y) = y: delta(y) = 0 while y lies in C(2,1).
  const EDerivation broken(Endomorphism(P("-x + y^3 + y"), P("y")));
  const ImageReport report = verifyImageIdentity(broken, 2, 1, P("y + 1"), 6, 6);
  EXPECT_FALSE(report.passed);
  bool witnessed = false;
  for (const auto& c : report.checks)
    if (c.status == Status::Fail && c.witness) witnessed = true;
  EXPECT_TRUE(witnessed);
}

TEST(ImageIdentity, BFactorization) {
  for (const NormalForm& nf : {NormalForm(lfed::testing::runningCase4()), NormalForm(lfed::testing::cyclotomicCase4()),
                              NormalForm(lfed::testing::quadraticCase4())})
    EXPECT_EQ(checkBImageFactorization(nf, 8).status, Status::Pass) << toString(nf);
}

TEST(ExpectedImage, Case1) {
  EXPECT_EQ(expectedImageForCase(Case1{Q(2), Q(3)}, 2).dimension(), 5u);
  const TruncatedSpace inv = expectedImageForCase(Case1{Q(1, 2), Q(2)}, 2);
  EXPECT_FALSE(inv.contains(P("x*y")));
  EXPECT_TRUE(inv.contains(P("x^2")));
  EXPECT_TRUE(inv.sameSpan(imageWindowForCase(Case1{Q(1, 2), Q(2)}, 2)));
}

TEST(ExpectedImage, Case6) {
  const TruncatedSpace e = expectedImageForCase(Case6{Q(-1), P("x")}, 3);
  EXPECT_TRUE(e.contains(P("x")));
  EXPECT_TRUE(e.contains(P("x^3")));
  EXPECT_FALSE(e.contains(P("x^2")));
  EXPECT_TRUE(e.contains(P("x^2*y")));
  EXPECT_TRUE(expectedImageForCase(Case6{Q(-1), P("x")}, 6).sameSpan(imageWindowForCase(Case6{Q(-1), P("x")}, 6)));
  EXPECT_TRUE(expectedImageForCase(Case6{Q(2), P("x")}, 5).sameSpan(imageWindowForCase(Case6{Q(2), P("x")}, 5)));
  EXPECT_THROW(expectedImageForCase(Case2{Q(2)}, 3), PreconditionError);
}

TEST(ExpectedImage, Case3) {
  const NormalForm nf = Case3{1, Q(1), Q(2)};
  EXPECT_TRUE(expectedImageForCase(nf, 6).sameSpan(imageWindowForCase(nf, 6)));
  const NormalForm nf2 = Case3{2, Q(-1), Q(3)};
  EXPECT_TRUE(expectedImageForCase(nf2, 5).sameSpan(imageWindowForCase(nf2, 5)));
}
