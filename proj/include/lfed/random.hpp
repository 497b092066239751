#pragma once

// Seeded generators shared by the property tests, the acceptance suite and the CLI.

#include <cstdint>
#include <random>
#include <vector>

#include "lfed/bipoly.hpp"

namespace lfed {

/// mt19937_64 with modulo draws, so streams are identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform-ish integer in [lo, hi].
  std::int64_t range(std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(engine_() % span);
  }
  bool coin() { return (engine_() & 1) != 0; }

 private:
  std::mt19937_64 engine_;
};

struct RandomPolyShape {
  std::int64_t maxTerms = 6;
  std::int64_t maxDegree = 4;   // total degree
  std::int64_t coeffRange = 5;  // integer parts in [-range, range]
  bool allowZero = false;
};

/// A coefficient a + b*zeta with small integers (b = 0 over Q).
inline Coeff randomCoeff(const Field& field, Rng& rng, std::int64_t range) {
  Residue v = field.zero();
  v[0] = Rational(static_cast<long>(rng.range(-range, range)));
  if (field.degree() > 1) v[1] = Rational(static_cast<long>(rng.range(-range, range)));
  return Coeff(field, std::move(v));
}

inline BiPoly randomPoly(const Field& field, Rng& rng, const RandomPolyShape& shape = {}) {
  for (;;) {
    BiPoly f(field);
    const std::int64_t terms = rng.range(1, shape.maxTerms);
    for (std::int64_t t = 0; t < terms; ++t) {
      const std::int64_t d = rng.range(0, shape.maxDegree);
      const std::int64_t i = rng.range(0, d);
      f.addTerm({i, d - i}, randomCoeff(field, rng, shape.coeffRange));
    }
    if (shape.allowZero || !f.isZero()) return f;
  }
}

}  // namespace lfed
