#pragma once

// Exact arithmetic in the cyclotomic field Q(zeta_r).
//
// An element is stored as its residue modulo the r-th cyclotomic polynomial:
// a dense vector of rationals of length deg(Phi_r), lowest power first.
// r = 1 gives Q itself.

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lfed/error.hpp"

namespace lfed {

using Rational = mpq_class;
using Residue = std::vector<Rational>;

namespace detail {

// Univariate helpers over Q, coefficient vectors lowest power first.
using QPoly = std::vector<Rational>;

inline void trim(QPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline QPoly qpolySub(const QPoly& a, const QPoly& b) {
  QPoly out(std::max(a.size(), b.size()));
  for (std::size_t k = 0; k < a.size(); ++k) out[k] += a[k];
  for (std::size_t k = 0; k < b.size(); ++k) out[k] -= b[k];
  trim(out);
  return out;
}

inline QPoly qpolyMul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  trim(out);
  return out;
}

// Long division; divisor must be nonzero.
inline std::pair<QPoly, QPoly> qpolyDivMod(QPoly num, const QPoly& den) {
  QPoly quot;
  trim(num);
  const std::size_t dd = den.size() - 1;
  if (num.size() >= den.size()) quot.assign(num.size() - dd, 0);
  while (!num.empty() && num.size() >= den.size()) {
    const std::size_t shift = num.size() - den.size();
    Rational c = num.back() / den.back();
    quot[shift] = c;
    for (std::size_t k = 0; k < den.size(); ++k) num[shift + k] -= c * den[k];
    num.pop_back();
    trim(num);
  }
  trim(quot);
  return {std::move(quot), std::move(num)};
}

// Phi_n = (z^n - 1) / prod_{d | n, d < n} Phi_d, computed with exact division.
inline QPoly cyclotomicPolynomial(int n) {
  QPoly result(static_cast<std::size_t>(n) + 1);
  result[0] = -1;
  result[static_cast<std::size_t>(n)] = 1;
  for (int d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    auto [q, r] = qpolyDivMod(result, cyclotomicPolynomial(d));
    result = std::move(q);
  }
  return result;
}

}  // namespace detail

/// The coefficient field Q(zeta_r). Copies share one immutable table.
class Field {
 public:
  explicit Field(int conductor = 1) {
    if (conductor < 1) throw InvalidParameter("field conductor must be >= 1");
    auto impl = std::make_shared<Impl>();
    impl->conductor = conductor;
    impl->modulus = detail::cyclotomicPolynomial(conductor);
    impl->degree = impl->modulus.size() - 1;
    impl_ = std::move(impl);
  }

  static Field rationals() { return Field(1); }

  int conductor() const noexcept { return impl_->conductor; }
  std::size_t degree() const noexcept { return impl_->degree; }
  /// Phi_r, lowest power first, monic.
  const std::vector<Rational>& modulus() const noexcept { return impl_->modulus; }

  friend bool operator==(const Field& a, const Field& b) noexcept {
    return a.conductor() == b.conductor();
  }

  void requireSame(const Field& other) const {
    if (conductor() != other.conductor()) throw FieldMismatch(conductor(), other.conductor());
  }

  // Residue arithmetic. Callers guarantee inputs are reduced residues of this field.

  Residue zero() const { return Residue(degree()); }

  Residue one() const {
    Residue r = zero();
    r[0] = 1;
    return r;
  }

  Residue fromRational(const Rational& q) const {
    Residue r = zero();
    r[0] = q;
    return r;
  }

  /// zeta^k reduced; only meaningful for k >= 0.
  Residue zetaPower(std::int64_t k) const {
    std::vector<Rational> p(static_cast<std::size_t>(k % conductor()) + 1);
    p.back() = 1;
    return reduce(std::move(p));
  }

  static bool isZero(const Residue& a) {
    for (const auto& c : a)
      if (c != 0) return false;
    return true;
  }

  bool isOne(const Residue& a) const {
    if (a[0] != 1) return false;
    for (std::size_t k = 1; k < a.size(); ++k)
      if (a[k] != 0) return false;
    return true;
  }

  static void addInPlace(Residue& a, const Residue& b) {
    for (std::size_t k = 0; k < a.size(); ++k) a[k] += b[k];
  }

  static void subInPlace(Residue& a, const Residue& b) {
    for (std::size_t k = 0; k < a.size(); ++k) a[k] -= b[k];
  }

  static Residue neg(Residue a) {
    for (auto& c : a) c = -c;
    return a;
  }

  Residue mul(const Residue& a, const Residue& b) const {
    const std::size_t n = degree();
    if (n == 1) return Residue{a[0] * b[0]};
    std::vector<Rational> prod(2 * n - 1);
    for (std::size_t i = 0; i < n; ++i) {
      if (a[i] == 0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (b[j] == 0) continue;
        prod[i + j] += a[i] * b[j];
      }
    }
    return reduce(std::move(prod));
  }

  /// a += b * c, the inner step of every elimination loop.
  void addMulInPlace(Residue& a, const Residue& b, const Residue& c) const {
    if (degree() == 1) {
      a[0] += b[0] * c[0];
      return;
    }
    addInPlace(a, mul(b, c));
  }

  Residue inverse(const Residue& a) const {
    if (isZero(a)) throw PreconditionError("division by zero in Q(zeta_" +
                                           std::to_string(conductor()) + ")");
    if (degree() == 1) return Residue{1 / a[0]};
    // Extended Euclid on (Phi, a).
    detail::QPoly r0 = modulus(), r1 = a, s0, s1{Rational(1)};
    detail::trim(r1);
    while (!r1.empty()) {
      auto [q, rem] = detail::qpolyDivMod(r0, r1);
      detail::QPoly s2 = detail::qpolySub(s0, detail::qpolyMul(q, s1));
      r0 = std::move(r1);
      r1 = std::move(rem);
      s0 = std::move(s1);
      s1 = std::move(s2);
    }
    // r0 is a nonzero constant since Phi is irreducible.
    const Rational c = r0[0];
    for (auto& v : s0) v /= c;
    return reduce(std::move(s0));
  }

  /// Reduce an arbitrary-length coefficient vector modulo Phi.
  Residue reduce(std::vector<Rational> p) const {
    const auto& phi = modulus();
    const std::size_t n = degree();
    for (std::size_t top = p.size(); top-- > n;) {
      if (p[top] == 0) continue;
      const Rational c = p[top];
      for (std::size_t k = 0; k <= n; ++k) p[top - n + k] -= c * phi[k];
    }
    p.resize(n);
    return p;
  }

 private:
  struct Impl {
    int conductor = 1;
    std::size_t degree = 1;
    std::vector<Rational> modulus;
  };
  std::shared_ptr<const Impl> impl_;
};

/// An element of Q(zeta_r) together with its field.
class Coeff {
 public:
  explicit Coeff(Field field) : field_(std::move(field)), value_(field_.zero()) {}
  Coeff(Field field, Residue value) : field_(std::move(field)), value_(std::move(value)) {
    if (value_.size() != field_.degree()) value_ = field_.reduce(std::move(value_));
  }
  Coeff(Field field, const Rational& q) : field_(std::move(field)), value_(field_.fromRational(q)) {}
  Coeff(Field field, long q) : Coeff(std::move(field), Rational(q)) {}

  /// The fixed primitive root zeta_r.
  static Coeff zeta(const Field& field) { return Coeff(field, field.zetaPower(1)); }

  const Field& field() const noexcept { return field_; }
  const Residue& residue() const noexcept { return value_; }

  bool isZero() const { return Field::isZero(value_); }
  bool isOne() const { return field_.isOne(value_); }
  /// The element lies in Q.
  bool isRational() const {
    for (std::size_t k = 1; k < value_.size(); ++k)
      if (value_[k] != 0) return false;
    return true;
  }
  const Rational& rationalPart() const { return value_[0]; }

  Coeff inverse() const { return Coeff(field_, field_.inverse(value_)); }

  Coeff pow(std::int64_t e) const {
    if (e < 0) return inverse().pow(-e);
    Coeff result(field_, field_.one());
    Coeff base = *this;
    while (e > 0) {
      if (e & 1) result = result * base;
      e >>= 1;
      if (e > 0) base = base * base;
    }
    return result;
  }

  Coeff operator-() const { return Coeff(field_, Field::neg(value_)); }

  friend Coeff operator+(const Coeff& a, const Coeff& b) {
    a.field_.requireSame(b.field_);
    Residue v = a.value_;
    Field::addInPlace(v, b.value_);
    return Coeff(a.field_, std::move(v));
  }
  friend Coeff operator-(const Coeff& a, const Coeff& b) {
    a.field_.requireSame(b.field_);
    Residue v = a.value_;
    Field::subInPlace(v, b.value_);
    return Coeff(a.field_, std::move(v));
  }
  friend Coeff operator*(const Coeff& a, const Coeff& b) {
    a.field_.requireSame(b.field_);
    return Coeff(a.field_, a.field_.mul(a.value_, b.value_));
  }
  friend Coeff operator/(const Coeff& a, const Coeff& b) {
    a.field_.requireSame(b.field_);
    return Coeff(a.field_, a.field_.mul(a.value_, b.field_.inverse(b.value_)));
  }
  friend bool operator==(const Coeff& a, const Coeff& b) {
    return a.field_ == b.field_ && a.value_ == b.value_;
  }

 private:
  Field field_;
  Residue value_;
};

/// Multiplicative order of c when c is a root of unity, otherwise nullopt.
///
/// The torsion of Q(zeta_r)^* is the group of lcm(2, r)-th roots of unity, so
/// every finite order divides 2r and the first divisor t of 2r with c^t = 1
/// is the exact order.
inline std::optional<int> isRootOfUnity(const Coeff& c) {
  if (c.isZero()) throw PreconditionError("isRootOfUnity: zero has no multiplicative order");
  const int bound = 2 * c.field().conductor();
  for (int t = 1; t <= bound; ++t) {
    if (bound % t != 0) continue;
    if (c.pow(t).isOne()) return t;
  }
  return std::nullopt;
}

/// A primitive n-th root of unity of the field, chosen among +-zeta^k with the
/// smallest k (positive sign first); nullopt when the field has none.
inline std::optional<Coeff> primitiveRootOfUnity(const Field& field, int n) {
  if (n < 1) throw InvalidParameter("root of unity order must be >= 1");
  const Coeff z = Coeff::zeta(field);
  for (int k = 0; k < field.conductor(); ++k) {
    for (int sign : {1, -1}) {
      Coeff cand = z.pow(k);
      if (sign < 0) cand = -cand;
      if (isRootOfUnity(cand) == n) return cand;
    }
  }
  return std::nullopt;
}

}  // namespace lfed
