#pragma once

// F = k(t) as a field context over reduced fractions.

#include <memory>
#include <string>

#include "carlitz/error.hpp"
#include "carlitz/poly/poly_a.hpp"

namespace carlitz {

/// f(t) -> f(t^factor).
inline PolyA inflate(const PolyA& f, std::uint64_t factor) {
  if (f.is_zero() || factor == 1) return f;
  KPoly c(static_cast<std::size_t>(f.degree()) * factor + 1, f.k().zero());
  for (std::size_t i = 0; i < f.coeffs().size(); ++i) c[i * factor] = f.coeffs()[i];
  return PolyA(f.field(), std::move(c));
}

/// f(t^factor) -> f(t), or false when some exponent is not a multiple.
inline bool deflate(const PolyA& f, std::uint64_t factor, PolyA& out) {
  if (f.is_zero()) {
    out = f;
    return true;
  }
  KPoly c(static_cast<std::size_t>(f.degree()) / factor + 1, f.k().zero());
  for (std::size_t i = 0; i < f.coeffs().size(); ++i) {
    if (f.coeffs()[i].v == 0) continue;
    if (i % factor) return false;
    c[i / factor] = f.coeffs()[i];
  }
  out = PolyA(f.field(), std::move(c));
  return true;
}

class RatField {
 public:
  using value_type = RatA;
  static constexpr bool is_perfect = false;

  explicit RatField(FqPtr k) : k_(std::move(k)) {}
  static std::shared_ptr<const RatField> make(FqPtr k) { return std::make_shared<const RatField>(std::move(k)); }

  const Fq& base() const { return *k_; }
  const FqPtr& k_ptr() const { return k_; }

  RatA zero() const { return RatA::zero(k_); }
  RatA one() const { return RatA::one(k_); }
  RatA t() const { return RatA(PolyA::t(k_)); }
  RatA from_k(KElem c) const { return RatA::constant(k_, c); }
  RatA from_poly(const PolyA& a) const { return RatA(a); }
  bool is_zero(const RatA& a) const { return a.is_zero(); }
  bool equal(const RatA& a, const RatA& b) const { return a == b; }
  RatA add(const RatA& a, const RatA& b) const { return a + b; }
  RatA sub(const RatA& a, const RatA& b) const { return a - b; }
  RatA neg(const RatA& a) const { return -a; }
  RatA mul(const RatA& a, const RatA& b) const { return a * b; }
  RatA inv(const RatA& a) const { return a.inv(); }
  RatA div(const RatA& a, const RatA& b) const { return a / b; }

  /// x -> x^{q^j}.  Constants of k are fixed, so this substitutes t^{q^j}
  /// for t; negative j only succeeds on exact q^{|j|}-th powers.
  RatA frobenius(const RatA& a, long long j) const {
    if (j == 0 || a.is_zero()) return a;
    std::uint64_t factor = 1;
    for (long long i = 0; i < (j < 0 ? -j : j); ++i) factor *= k_->q();
    if (j > 0) {
      if (a.is_polynomial()) return RatA(inflate(a.num(), factor));
      return RatA(inflate(a.num(), factor), inflate(a.den(), factor));
    }
    PolyA n, d;
    if (!deflate(a.num(), factor, n) || !deflate(a.den(), factor, d))
      throw Unsupported("k(t) is not perfect: " + a.to_string() + " has no q-th root");
    return RatA(n, d);
  }

  std::string format(const RatA& a) const { return a.to_string(); }

  friend bool operator==(const RatField& a, const RatField& b) { return *a.k_ == *b.k_; }

 private:
  FqPtr k_;
};

using RatFieldPtr = std::shared_ptr<const RatField>;

}  // namespace carlitz
