#pragma once

#include <string>

#include "lfed/lfed.hpp"

namespace lfed::testing {

inline BiPoly P(const std::string& text, const Field& k = Field()) { return parse(text, k); }
inline Coeff Q(long n, const Field& k = Field()) { return Coeff(k, n); }
inline Coeff Q(long n, long d, const Field& k = Field()) { return Coeff(k, Rational(n, d)); }

inline Case4 runningCase4() { return Case4{2, 1, Q(-1), P("y + 1")}; }
inline Case4 cyclotomicCase4() {
  const Field k(3);
  return Case4{3, 0, Coeff::zeta(k), P("y + 1", k)};
}
inline Case4 quadraticCase4() { return Case4{2, 2, Q(-1), P("y^2 + 2*y + 2")}; }

}  // namespace lfed::testing
