#pragma once

// Exact row-echelon families of polynomials.
//
// Rows are kept with pairwise distinct leading monomials under a fixed
// monomial order, each normalised to leading coefficient 1. Reduction always
// eliminates the greatest remaining monomial first, so results are
// deterministic.

#include <cstdint>
#include <map>
#include <vector>

#include "lfed/bipoly.hpp"

namespace lfed {

/// Weighted degree wx*i + wy*j, with lex (x > y) breaking ties.
/// Weights (0, 0) give plain lex.
struct MonomialOrder {
  std::int64_t wx = 0;
  std::int64_t wy = 0;

  static MonomialOrder lex() { return {0, 0}; }
  static MonomialOrder graded() { return {1, 1}; }
  static MonomialOrder weighted(std::int64_t wx, std::int64_t wy) { return {wx, wy}; }

  std::int64_t weight(const Monomial& m) const { return wx * m.i + wy * m.j; }

  /// a comes before b (a is greater).
  bool operator()(const Monomial& a, const Monomial& b) const {
    const auto wa = weight(a), wb = weight(b);
    if (wa != wb) return wa > wb;
    return a > b;
  }

  friend bool operator==(const MonomialOrder&, const MonomialOrder&) = default;
};

class EchelonBasis {
 public:
  using Row = std::map<Monomial, Residue, MonomialOrder>;

  explicit EchelonBasis(Field field, MonomialOrder order = MonomialOrder::lex())
      : field_(std::move(field)), order_(order), rows_(order) {}

  const Field& field() const noexcept { return field_; }
  const MonomialOrder& order() const noexcept { return order_; }
  std::size_t dimension() const noexcept { return rows_.size(); }

  /// Reduce f against the basis; the result is zero iff f lies in the span.
  BiPoly reduce(const BiPoly& f) const { return toPoly(reduceRow(toRow(f))); }

  bool contains(const BiPoly& f) const { return reduceRow(toRow(f), true).empty(); }

  /// Insert f; returns true when the dimension grew.
  bool insert(const BiPoly& f) {
    field_.requireSame(f.field());
    Row r = reduceRow(toRow(f));
    if (r.empty()) return false;
    const Monomial lead = r.begin()->first;
    const Residue inv = field_.inverse(r.begin()->second);
    for (auto& [m, v] : r) v = field_.mul(v, inv);
    rows_.emplace(lead, std::move(r));
    return true;
  }

  /// Leading monomials in descending order.
  std::vector<Monomial> pivots() const {
    std::vector<Monomial> out;
    for (const auto& [m, r] : rows_) out.push_back(m);
    return out;
  }

  /// Rows in descending pivot order.
  std::vector<BiPoly> rows() const {
    std::vector<BiPoly> out;
    for (const auto& [m, r] : rows_) out.push_back(toPoly(r));
    return out;
  }

  /// Fully reduced basis: every pivot appears in exactly one row.
  std::vector<BiPoly> reducedRows() const {
    std::vector<BiPoly> out;
    // Process pivots from smallest to largest so lower rows are already reduced.
    std::vector<Row> done;
    std::vector<Monomial> donePivots;
    for (auto it = rows_.rbegin(); it != rows_.rend(); ++it) {
      Row r = it->second;
      for (std::size_t k = done.size(); k-- > 0;) {
        auto hit = r.find(donePivots[k]);
        if (hit == r.end()) continue;
        const Residue c = Field::neg(hit->second);
        axpy(r, done[k], c);
      }
      done.push_back(std::move(r));
      donePivots.push_back(it->first);
    }
    for (auto it = done.rbegin(); it != done.rend(); ++it) out.push_back(toPoly(*it));
    return out;
  }

 private:
  Row toRow(const BiPoly& f) const {
    field_.requireSame(f.field());
    Row r(order_);
    for (const auto& [m, v] : f.terms()) r.emplace(m, v);
    return r;
  }

  BiPoly toPoly(const Row& r) const {
    BiPoly p(field_);
    for (const auto& [m, v] : r) p.addTerm(m, v);
    return p;
  }

  // target += c * row
  void axpy(Row& target, const Row& row, const Residue& c) const {
    for (const auto& [m, v] : row) {
      auto [it, inserted] = target.try_emplace(m, field_.zero());
      field_.addMulInPlace(it->second, v, c);
      if (Field::isZero(it->second)) target.erase(it);
    }
  }

  // Eliminate pivots greatest-first. A full reduction keeps going below the
  // first non-pivot monomial; a membership test can stop there.
  Row reduceRow(Row r, bool stopAtNonPivot = false) const {
    auto cursor = r.begin();
    while (cursor != r.end()) {
      auto pit = rows_.find(cursor->first);
      if (pit == rows_.end()) {
        if (stopAtNonPivot) return r;
        ++cursor;
        continue;
      }
      const Monomial here = cursor->first;
      const Residue c = Field::neg(cursor->second);
      axpy(r, pit->second, c);
      // Everything above `here` is untouched; resume just below it.
      cursor = r.upper_bound(here);
    }
    return r;
  }

  Field field_;
  MonomialOrder order_;
  std::map<Monomial, Row, MonomialOrder> rows_;
};

}  // namespace lfed
