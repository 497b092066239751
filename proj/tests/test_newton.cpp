#include <gtest/gtest.h>

#include "support.hpp"

using namespace lfed;
using lfed::testing::P;

namespace {
std::vector<Point> pts(std::initializer_list<std::pair<int, int>> list) {
  std::vector<Point> out;
  for (auto [i, j] : list) out.push_back({i, j});
  return out;
}
}  // namespace

TEST(Polygon, Examples) {
  EXPECT_EQ(polygonOf(P("x^2*y")).vertices(), pts({{2, 1}}));
  EXPECT_EQ(polygonOf(P("x + y")).vertices(), pts({{0, 1}, {1, 0}}));
  EXPECT_EQ(polygonOf(P("1 + x + y + x*y")).vertices(), pts({{0, 0}, {1, 0}, {1, 1}, {0, 1}}));
  EXPECT_THROW(polygonOf(P("0")), InvalidParameter);
}

TEST(Polygon, DropsInteriorAndCollinearPoints) {
  const NewtonPolygon tri = polygonOf(P("1 + x^2 + y^2 + x + x*y + y"));
  EXPECT_EQ(tri.vertices(), pts({{0, 0}, {2, 0}, {0, 2}}));
  const NewtonPolygon seg = polygonOf(P("1 + x*y + x^2*y^2 + x^3*y^3"));
  EXPECT_TRUE(seg.isSegment());
  EXPECT_EQ(seg.vertices(), pts({{0, 0}, {3, 3}}));
}

TEST(Minkowski, Examples) {
  EXPECT_EQ(minkowskiSum(polygonOf(P("x^2*y")), polygonOf(P("y^3"))).vertices(), pts({{2, 4}}));
  EXPECT_EQ(minkowskiSum(polygonOf(P("1 + x")), polygonOf(P("1 + y"))), polygonOf(P("1 + x + y + x*y")));
  EXPECT_EQ(minkowskiSum(polygonOf(P("x + y")), polygonOf(P("x + y"))).vertices(), pts({{0, 2}, {2, 0}}));
}

TEST(Minkowski, PolygonOfProduct) {
  const Field k(3);
  Rng rng(100);
  for (int trial = 0; trial < 100; ++trial) {
    const BiPoly f = randomPoly(k, rng, {8, 6, 5}), g = randomPoly(k, rng, {8, 6, 5});
    EXPECT_EQ(polygonOf(f * g), minkowskiSum(polygonOf(f), polygonOf(g))) << toString(f) << " | " << toString(g);
  }
}

TEST(Polygon, VerticesLieInSupport) {
  Rng rng(101);
  for (int trial = 0; trial < 100; ++trial) {
    const BiPoly f = randomPoly(Field(), rng, {8, 6, 5});
    const NewtonPolygon poly = polygonOf(f);
    for (const auto& v : poly.vertices()) EXPECT_TRUE(f.contains(Monomial{v.i, v.j})) << toString(f);
  }
}

TEST(VertexPower, Examples) {
  for (const auto& c : vertexPowerCheck(P("x + y"), 3)) EXPECT_EQ(c.status, Status::Pass) << c.id;
  const auto checks = vertexPowerCheck(P("1 + x*y"), 4);
  ASSERT_EQ(checks.size(), 2u);
  for (const auto& c : checks) EXPECT_EQ(c.status, Status::Pass);
  EXPECT_THROW(vertexPowerCheck(P("x"), 0), InvalidParameter);
}

TEST(VertexPower, RandomPolynomials) {
  Rng rng(102);
  for (int trial = 0; trial < 100; ++trial) {
    const BiPoly f = randomPoly(Field(), rng, {8, 6, 5});
    for (std::int64_t m = 1; m <= 5; ++m)
      for (const auto& c : vertexPowerCheck(f, m)) EXPECT_EQ(c.status, Status::Pass) << toString(f);
  }
}
