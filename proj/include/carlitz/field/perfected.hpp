#pragma once

// Finite truncations of the perfect closure of k(t).
//
// An element at level s is num(T)/den(T) with T = t^{1/q^s}, stored as a
// reduced fraction of polynomials in T with den monic.  Canonical form uses
// the smallest possible level.  Taking q-th roots raises the level by one;
// levels above the budget raise PrecisionError.

#include <memory>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>

#include "carlitz/error.hpp"
#include "carlitz/field/rational_field.hpp"
#include "carlitz/poly/poly_a.hpp"

namespace carlitz {

class PerfectedRational {
 public:
  PerfectedRational() = default;
  PerfectedRational(unsigned level, PolyA num, PolyA den) : level_(level), num_(std::move(num)), den_(std::move(den)) { canonicalize(); }
  explicit PerfectedRational(const RatA& x) : level_(0), num_(x.num()), den_(x.den()) {}

  unsigned level() const { return level_; }
  const PolyA& num() const { return num_; }
  const PolyA& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  /// Back to k(t); only possible at level 0.
  RatA to_rational() const {
    if (level_ != 0) throw DomainError("element is not in k(t)");
    return RatA(num_, den_);
  }

  /// Degree difference deg num - deg den, in units of 1/q^level.
  long degree_units() const { return num_.degree() - den_.degree(); }

  friend bool operator==(const PerfectedRational& a, const PerfectedRational& b) {
    return a.level_ == b.level_ && a.num_ == b.num_ && a.den_ == b.den_;
  }

  std::string to_string() const {
    const std::uint64_t scale = ipow(num_.k().q(), level_);
    auto render = [&](const PolyA& f) {
      if (f.is_zero()) return std::string("0");
      std::ostringstream os;
      bool first = true;
      for (std::size_t i = f.coeffs().size(); i-- > 0;) {
        const KElem c = f.coeffs()[i];
        if (c.v == 0) continue;
        if (!first) os << '+';
        first = false;
        std::string cs = f.k().format(c);
        if (cs.find('+') != std::string::npos) cs = "(" + cs + ")";
        if (i == 0) {
          os << cs;
          continue;
        }
        if (c != f.k().one()) os << cs << '*';
        const std::uint64_t g = std::gcd<std::uint64_t>(i, scale);
        os << 't';
        if (i / g != 1 || scale / g != 1) {
          os << '^';
          if (scale / g == 1)
            os << i / g;
          else
            os << '(' << i / g << '/' << scale / g << ')';
        }
      }
      return os.str();
    };
    if (den_.is_one()) return render(num_);
    return "(" + render(num_) + ")/(" + render(den_) + ")";
  }

  static std::uint64_t ipow(std::uint64_t b, unsigned e) {
    std::uint64_t r = 1;
    while (e--) r *= b;
    return r;
  }

 private:
  friend class PerfectedField;

  void canonicalize() {
    if (den_.is_zero()) throw ArithmeticError("zero denominator");
    if (num_.is_zero()) {
      level_ = 0;
      den_ = PolyA::one(num_.field());
      return;
    }
    const auto& k = num_.k();
    if (den_.degree() > 0) {
      // Monomial denominators only need the common power of T cancelled.
      std::size_t nz = 0;
      for (const auto& c : den_.coeffs()) nz += c.v != 0;
      if (nz == 1) {
        std::size_t low = 0;
        while (num_.coeffs()[low].v == 0) ++low;
        const std::size_t cut = std::min<std::size_t>(low, static_cast<std::size_t>(den_.degree()));
        if (cut) {
          num_ = PolyA(num_.field(), KPoly(num_.coeffs().begin() + static_cast<long>(cut), num_.coeffs().end()));
          den_ = PolyA(den_.field(), KPoly(den_.coeffs().begin() + static_cast<long>(cut), den_.coeffs().end()));
        }
      } else {
        auto g = gcd(num_, den_);
        if (!g.is_one()) {
          num_ = num_ / g;
          den_ = den_ / g;
        }
      }
    }
    const KElem c = den_.lc();
    if (c != k.one()) {
      num_ = num_.scaled(k.inv(c));
      den_ = den_.scaled(k.inv(c));
    }
    const std::uint64_t q = k.q();
    while (level_ > 0) {
      PolyA n, d;
      if (!deflate(num_, q, n) || !deflate(den_, q, d)) break;
      num_ = std::move(n);
      den_ = std::move(d);
      --level_;
    }
  }

  unsigned level_ = 0;
  PolyA num_, den_;
};

class PerfectedField {
 public:
  using value_type = PerfectedRational;
  static constexpr bool is_perfect = true;
  static constexpr unsigned kDefaultBudget = 8;

  explicit PerfectedField(FqPtr k, unsigned budget = kDefaultBudget) : k_(std::move(k)), budget_(budget) {}
  static std::shared_ptr<const PerfectedField> make(FqPtr k, unsigned budget = kDefaultBudget) {
    return std::make_shared<const PerfectedField>(std::move(k), budget);
  }

  const Fq& base() const { return *k_; }
  const FqPtr& k_ptr() const { return k_; }
  unsigned budget() const { return budget_; }

  value_type zero() const { return value_type(0, PolyA(k_), PolyA::one(k_)); }
  value_type one() const { return from_k(k_->one()); }
  value_type t() const { return value_type(RatA(PolyA::t(k_))); }
  value_type from_k(KElem c) const { return value_type(0, PolyA::constant(k_, c), PolyA::one(k_)); }
  value_type from_rational(const RatA& x) const { return value_type(x); }
  value_type from_poly(const PolyA& a) const { return value_type(RatA(a)); }
  std::optional<KElem> to_k(const value_type& a) const {
    if (a.level() != 0 || !a.den().is_one() || a.num().degree() > 0) return std::nullopt;
    return a.num().is_zero() ? k_->zero() : a.num().coeffs()[0];
  }

  bool is_zero(const value_type& a) const { return a.is_zero(); }
  bool equal(const value_type& a, const value_type& b) const { return a == b; }

  value_type add(const value_type& a, const value_type& b) const { return combine(a, b, +1); }
  value_type sub(const value_type& a, const value_type& b) const { return combine(a, b, -1); }
  value_type neg(const value_type& a) const { return value_type(a.level(), -a.num(), a.den()); }
  value_type mul(const value_type& a, const value_type& b) const {
    const unsigned L = std::max(a.level(), b.level());
    return value_type(L, lift(a.num(), a.level(), L) * lift(b.num(), b.level(), L), lift(a.den(), a.level(), L) * lift(b.den(), b.level(), L));
  }
  value_type inv(const value_type& a) const {
    if (a.is_zero()) throw ArithmeticError("inverse of zero in the perfect closure");
    return value_type(a.level(), a.den(), a.num());
  }
  value_type div(const value_type& a, const value_type& b) const { return mul(a, inv(b)); }

  /// x -> x^{q^j}.
  value_type frobenius(const value_type& a, long long j) const {
    if (j == 0 || a.is_zero()) return a;
    if (j < 0) {
      const long long level = static_cast<long long>(a.level()) - j;
      if (level > static_cast<long long>(budget_))
        throw PrecisionError("perfection level " + std::to_string(level) + " exceeds budget " + std::to_string(budget_));
      return value_type(static_cast<unsigned>(level), a.num(), a.den());
    }
    const long long lowered = static_cast<long long>(a.level()) - j;
    if (lowered >= 0) return value_type(static_cast<unsigned>(lowered), a.num(), a.den());
    const std::uint64_t factor = PerfectedRational::ipow(k_->q(), static_cast<unsigned>(-lowered));
    return value_type(0, inflate(a.num(), factor), inflate(a.den(), factor));
  }

  std::string format(const value_type& a) const { return a.to_string(); }

  friend bool operator==(const PerfectedField& a, const PerfectedField& b) { return *a.k_ == *b.k_ && a.budget_ == b.budget_; }

 private:
  PolyA lift(const PolyA& f, unsigned from, unsigned to) const {
    return inflate(f, PerfectedRational::ipow(k_->q(), to - from));
  }

  value_type combine(const value_type& a, const value_type& b, int sign) const {
    const unsigned L = std::max(a.level(), b.level());
    const PolyA an = lift(a.num(), a.level(), L), ad = lift(a.den(), a.level(), L);
    const PolyA bn = lift(b.num(), b.level(), L), bd = lift(b.den(), b.level(), L);
    if (ad == bd) return value_type(L, sign > 0 ? an + bn : an - bn, ad);
    const PolyA cross = bn * ad;
    return value_type(L, sign > 0 ? an * bd + cross : an * bd - cross, ad * bd);
  }

  FqPtr k_;
  unsigned budget_;
};

using PerfectedFieldPtr = std::shared_ptr<const PerfectedField>;

}  // namespace carlitz
