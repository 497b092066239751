#pragma once

// Newton polygons: convex hulls of supports in N^2.

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "lfed/bipoly.hpp"
#include "lfed/check.hpp"
#include "lfed/error.hpp"

namespace lfed {

struct Point {
  std::int64_t i = 0;
  std::int64_t j = 0;
  friend auto operator<=>(const Point&, const Point&) = default;
  Point operator+(const Point& o) const { return {i + o.i, j + o.j}; }
};

namespace detail {
// Twice the signed area of (o, a, b); positive for a left turn.
inline __int128 cross(const Point& o, const Point& a, const Point& b) {
  return static_cast<__int128>(a.i - o.i) * (b.j - o.j) - static_cast<__int128>(a.j - o.j) * (b.i - o.i);
}
}  // namespace detail

/// Vertices counterclockwise from the lexicographically least point, no three
/// collinear. One vertex for a point, two for a segment.
class NewtonPolygon {
 public:
  NewtonPolygon() = default;

  /// Convex hull of arbitrary lattice points (Andrew's monotone chain).
  static NewtonPolygon hull(std::vector<Point> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    NewtonPolygon out;
    if (pts.size() <= 1) {
      out.vertices_ = std::move(pts);
      return out;
    }
    std::vector<Point> h(2 * pts.size());
    std::size_t k = 0;
    for (const auto& p : pts) {
      while (k >= 2 && detail::cross(h[k - 2], h[k - 1], p) <= 0) --k;
      h[k++] = p;
    }
    for (std::size_t t = pts.size() - 1, lower = k + 1; t-- > 0;) {
      while (k >= lower && detail::cross(h[k - 2], h[k - 1], pts[t]) <= 0) --k;
      h[k++] = pts[t];
    }
    h.resize(k - 1);
    out.vertices_ = std::move(h);
    return out;
  }

  const std::vector<Point>& vertices() const noexcept { return vertices_; }
  bool isEmpty() const noexcept { return vertices_.empty(); }
  bool isPoint() const noexcept { return vertices_.size() == 1; }
  bool isSegment() const noexcept { return vertices_.size() == 2; }

  friend bool operator==(const NewtonPolygon&, const NewtonPolygon&) = default;

 private:
  std::vector<Point> vertices_;
};

inline std::string toString(const NewtonPolygon& P) {
  std::string s = "[";
  for (std::size_t k = 0; k < P.vertices().size(); ++k) {
    if (k) s += ", ";
    s += "(" + std::to_string(P.vertices()[k].i) + "," + std::to_string(P.vertices()[k].j) + ")";
  }
  return s + "]";
}

inline NewtonPolygon polygonOf(const BiPoly& f) {
  if (f.isZero()) throw InvalidParameter("polygonOf: zero polynomial has no Newton polygon");
  std::vector<Point> pts;
  for (const auto& [m, v] : f.terms()) pts.push_back({m.i, m.j});
  return NewtonPolygon::hull(std::move(pts));
}

/// Hull of pairwise vertex sums.
inline NewtonPolygon minkowskiSum(const NewtonPolygon& P, const NewtonPolygon& Q) {
  std::vector<Point> pts;
  for (const auto& p : P.vertices())
    for (const auto& q : Q.vertices()) pts.push_back(p + q);
  return NewtonPolygon::hull(std::move(pts));
}

/// (m*i, m*j) in Sup(f^m) for every vertex (i, j) of Pol(f); one check per vertex.
inline std::vector<Check> vertexPowerCheck(const BiPoly& f, std::int64_t m) {
  if (m < 1) throw InvalidParameter("vertexPowerCheck: m must be >= 1");
  const NewtonPolygon P = polygonOf(f);
  const BiPoly fm = pow(f, m);
  std::vector<Check> out;
  for (const auto& v : P.vertices()) {
    const Monomial target{m * v.i, m * v.j};
    Check c;
    c.id = "newton.vertex(" + std::to_string(v.i) + "," + std::to_string(v.j) + ")^" + std::to_string(m);
    c.status = fm.contains(target) ? Status::Pass : Status::Fail;
    if (c.status == Status::Fail) c.witness = f;
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace lfed
