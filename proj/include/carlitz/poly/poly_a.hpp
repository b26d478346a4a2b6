#pragma once

// A = k[t], its fractions, primes, residue fields and unit groups mod m.

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cstdint>
#include <map>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "carlitz/error.hpp"
#include "carlitz/field/extension.hpp"
#include "carlitz/field/fq.hpp"
#include "carlitz/poly/dense.hpp"

namespace carlitz {

/// Default seed for the factoring stream (overridable by CARLITZ_SEED).
inline constexpr std::uint64_t kDefaultSeed = 0x43a2b1f0c0ffee01ULL;

namespace detail {
inline std::atomic<std::uint64_t>& seed_slot() {
  static std::atomic<std::uint64_t> seed{kDefaultSeed};
  return seed;
}
}  // namespace detail

/// Seed for the randomized root and factor splitting.  Results are sorted,
/// so the seed affects running time only.
inline std::uint64_t default_seed() { return detail::seed_slot().load(); }
inline void set_default_seed(std::uint64_t seed) { detail::seed_slot().store(seed); }

class PolyA {
 public:
  PolyA() = default;
  explicit PolyA(FqPtr k) : k_(std::move(k)) {}
  PolyA(FqPtr k, KPoly c) : k_(std::move(k)), c_(std::move(c)) { poly::trim(*k_, c_); }

  static PolyA constant(FqPtr k, KElem c) { return PolyA(std::move(k), KPoly{c}); }
  static PolyA one(FqPtr k) { return constant(k, k->one()); }
  static PolyA t(FqPtr k) { return monomial(std::move(k), k->one(), 1); }
  static PolyA monomial(FqPtr k, KElem c, std::size_t n) {
    KPoly v(n + 1, k->zero());
    v[n] = c;
    return PolyA(std::move(k), std::move(v));
  }

  /// Parses e.g. "t^3+2*t+1" or "(u+1)*t^2+u"; integer literals are reduced
  /// mod p and u denotes the generator of k when k is not prime.
  static PolyA parse(FqPtr k, std::string_view text);

  const FqPtr& field() const { return k_; }
  const Fq& k() const { return *k_; }
  const KPoly& coeffs() const { return c_; }
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0] == k_->one(); }
  bool is_monic() const { return !c_.empty() && c_.back() == k_->one(); }
  KElem lc() const {
    if (c_.empty()) throw UsageError("leading coefficient of zero");
    return c_.back();
  }
  KElem coeff(std::size_t i) const { return i < c_.size() ? c_[i] : k_->zero(); }

  PolyA monic() const { return PolyA(k_, poly::monic(*k_, c_)); }
  PolyA scaled(KElem c) const { return PolyA(k_, poly::scale(*k_, c_, c)); }
  KElem eval(KElem x) const { return poly::eval(*k_, c_, x); }

  PolyA operator+(const PolyA& o) const { return PolyA(k_, poly::add(*k_, c_, check(o).c_)); }
  PolyA operator-(const PolyA& o) const { return PolyA(k_, poly::sub(*k_, c_, check(o).c_)); }
  PolyA operator-() const { return PolyA(k_, poly::sub(*k_, KPoly{}, c_)); }
  PolyA operator*(const PolyA& o) const { return PolyA(k_, poly::mul(*k_, c_, check(o).c_)); }
  PolyA operator%(const PolyA& o) const { return PolyA(k_, poly::mod(*k_, c_, check(o).c_)); }
  /// Exact quotient.
  PolyA operator/(const PolyA& o) const { return PolyA(k_, poly::exact_div(*k_, c_, check(o).c_)); }
  std::pair<PolyA, PolyA> divmod(const PolyA& o) const {
    auto [q, r] = poly::divmod(*k_, c_, check(o).c_);
    return {PolyA(k_, std::move(q)), PolyA(k_, std::move(r))};
  }
  PolyA pow(std::uint64_t e) const {
    PolyA r = one(k_), b = *this;
    while (e) {
      if (e & 1) r = r * b;
      e >>= 1;
      if (e) b = b * b;
    }
    return r;
  }
  bool divides(const PolyA& o) const { return (o % *this).is_zero(); }

  friend PolyA gcd(const PolyA& a, const PolyA& b) { return PolyA(a.k_, poly::gcd(*a.k_, a.c_, a.check(b).c_)); }

  friend bool operator==(const PolyA& a, const PolyA& b) { return a.c_ == b.c_; }
  /// (degree, lexicographic) with the constant term most significant.
  friend bool operator<(const PolyA& a, const PolyA& b) {
    if (a.c_.size() != b.c_.size()) return a.c_.size() < b.c_.size();
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == b.c_[i]) continue;
      return a.k_->less(a.c_[i], b.c_[i]);
    }
    return false;
  }

  std::string to_string() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = c_.size(); i-- > 0;) {
      if (c_[i].v == 0) continue;
      if (!first) os << '+';
      first = false;
      std::string c = k_->format(c_[i]);
      if (c.find('+') != std::string::npos) c = "(" + c + ")";
      if (i == 0) {
        os << c;
        continue;
      }
      if (c_[i] != k_->one()) os << c << '*';
      os << 't';
      if (i > 1) os << '^' << i;
    }
    return os.str();
  }

 private:
  const PolyA& check(const PolyA& o) const {
    if (!k_ || !o.k_ || !(*k_ == *o.k_)) throw UsageError("polynomials over different constant fields");
    return o;
  }

  FqPtr k_;
  KPoly c_;
};

namespace detail {

class PolyParser {
 public:
  PolyParser(FqPtr k, std::string_view s) : k_(std::move(k)) {
    for (char c : s)
      if (!std::isspace(static_cast<unsigned char>(c))) s_.push_back(c);
  }

  PolyA run() {
    if (s_.empty()) throw UsageError("empty polynomial literal");
    PolyA r = expr();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw UsageError("bad polynomial literal \"" + s_ + "\": " + msg); }
  bool peek(char c) const { return pos_ < s_.size() && s_[pos_] == c; }

  PolyA expr() {
    PolyA r(k_);
    bool neg = false;
    if (peek('+') || peek('-')) neg = s_[pos_++] == '-';
    PolyA t = term();
    r = neg ? -t : t;
    while (peek('+') || peek('-')) {
      const bool minus = s_[pos_++] == '-';
      PolyA u = term();
      r = minus ? r - u : r + u;
    }
    return r;
  }

  PolyA term() {
    PolyA r = power();
    for (;;) {
      if (peek('*')) {
        ++pos_;
        r = r * power();
      } else if (pos_ < s_.size() && (s_[pos_] == 't' || s_[pos_] == 'u' || s_[pos_] == '(')) {
        r = r * power();  // implicit product, e.g. 2t
      } else {
        return r;
      }
    }
  }

  PolyA power() {
    PolyA b = atom();
    if (peek('^')) {
      ++pos_;
      b = b.pow(number());
    }
    return b;
  }

  std::uint64_t number() {
    if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) fail("expected a number");
    std::uint64_t v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      v = v * 10 + static_cast<unsigned>(s_[pos_++] - '0');
      if (v > (1ULL << 40)) fail("number too large");
    }
    return v;
  }

  PolyA atom() {
    if (pos_ >= s_.size()) fail("unexpected end");
    const char c = s_[pos_];
    if (c == 't') {
      ++pos_;
      return PolyA::t(k_);
    }
    if (c == 'u') {
      ++pos_;
      if (k_->n() == 1) fail("'u' is only available for non-prime q");
      return PolyA::constant(k_, k_->generator());
    }
    if (c == '(') {
      ++pos_;
      PolyA r = expr();
      if (!peek(')')) fail("missing ')'");
      ++pos_;
      return r;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const auto v = number();
      return PolyA::constant(k_, k_->from_int(static_cast<long long>(v % k_->p())));
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  FqPtr k_;
  std::string s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline PolyA PolyA::parse(FqPtr k, std::string_view text) { return detail::PolyParser(std::move(k), text).run(); }

// ---------------------------------------------------------------------------
// Factoring and prime enumeration

/// Monic irreducible factors with multiplicities, sorted by (degree,
/// lexicographic).  The product of the factors times lc(f) is f.
inline std::vector<std::pair<PolyA, int>> factor_poly(const PolyA& f, std::uint64_t seed = default_seed()) {
  if (f.is_zero()) throw UsageError("cannot factor zero");
  std::mt19937_64 rng(seed);
  std::vector<std::pair<PolyA, int>> out;
  for (auto& [g, m] : poly::factor(f.k(), f.coeffs(), rng)) out.emplace_back(PolyA(f.field(), std::move(g)), m);
  return out;
}

inline bool is_irreducible(const PolyA& f) { return poly::is_irreducible(f.k(), f.coeffs()); }

/// All monic polynomials of degree n in (lexicographic) order.
inline std::vector<PolyA> monic_polys_of_degree(const FqPtr& k, unsigned n, std::size_t limit = 1u << 22) {
  std::size_t count = 1;
  for (unsigned i = 0; i < n; ++i) {
    count *= k->q();
    if (count > limit) throw Unsupported("too many polynomials to enumerate");
  }
  std::vector<PolyA> out;
  out.reserve(count);
  std::vector<std::size_t> rank(n, 0);
  for (std::size_t idx = 0; idx < count; ++idx) {
    KPoly c(n + 1);
    for (unsigned i = 0; i < n; ++i) c[i] = k->by_rank(rank[i]);
    c[n] = k->one();
    out.emplace_back(k, std::move(c));
    for (std::size_t i = n; i-- > 0;) {
      if (++rank[i] < k->q()) break;
      rank[i] = 0;
    }
  }
  return out;
}

inline std::vector<PolyA> primes_of_degree(const FqPtr& k, unsigned n) {
  std::vector<PolyA> out;
  for (auto& f : monic_polys_of_degree(k, n))
    if (is_irreducible(f)) out.push_back(std::move(f));
  return out;
}

/// Monic primes of degree 1..bound in (degree, lexicographic) order.
inline std::vector<PolyA> primes_up_to(const FqPtr& k, unsigned bound) {
  std::vector<PolyA> out;
  for (unsigned d = 1; d <= bound; ++d)
    for (auto& f : primes_of_degree(k, d)) out.push_back(std::move(f));
  return out;
}

inline int moebius(unsigned n) {
  int r = 1;
  for (unsigned p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    r = -r;
  }
  return n > 1 ? -r : r;
}

/// Number of monic irreducibles of degree d over GF(q).
inline std::uint64_t necklace_count(std::uint64_t q, unsigned d) {
  long long total = 0;
  for (unsigned e = 1; e <= d; ++e) {
    if (d % e) continue;
    long long pw = 1;
    for (unsigned i = 0; i < d / e; ++i) pw *= static_cast<long long>(q);
    total += moebius(e) * pw;
  }
  return static_cast<std::uint64_t>(total / d);
}

// ---------------------------------------------------------------------------
// Fractions

/// Reduced fraction num/den over A with den monic.
class RatA {
 public:
  RatA() = default;
  explicit RatA(const PolyA& num) : num_(num), den_(PolyA::one(num.field())) {}
  RatA(const PolyA& num, const PolyA& den) : num_(num), den_(den) { normalize(); }

  static RatA zero(const FqPtr& k) { return RatA(PolyA(k)); }
  static RatA one(const FqPtr& k) { return RatA(PolyA::one(k)); }
  static RatA constant(const FqPtr& k, KElem c) { return RatA(PolyA::constant(k, c)); }

  const PolyA& num() const { return num_; }
  const PolyA& den() const { return den_; }
  const FqPtr& field() const { return num_.field(); }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.degree() == 0; }

  RatA operator+(const RatA& o) const {
    if (is_polynomial() && o.is_polynomial()) return RatA(num_ + o.num_);
    if (den_ == o.den_) return RatA(num_ + o.num_, den_);
    return RatA(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
  }
  RatA operator-(const RatA& o) const {
    if (is_polynomial() && o.is_polynomial()) return RatA(num_ - o.num_);
    if (den_ == o.den_) return RatA(num_ - o.num_, den_);
    return RatA(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
  }
  RatA operator-() const { return RatA(-num_, den_, Raw{}); }
  RatA operator*(const RatA& o) const {
    if (is_polynomial() && o.is_polynomial()) return RatA(num_ * o.num_);
    return RatA(num_ * o.num_, den_ * o.den_);
  }
  RatA inv() const {
    if (num_.is_zero()) throw ArithmeticError("inverse of zero in k(t)");
    return RatA(den_, num_);
  }
  RatA operator/(const RatA& o) const { return *this * o.inv(); }
  RatA pow(long long e) const {
    if (e < 0) return inv().pow(-e);
    return RatA(num_.pow(static_cast<std::uint64_t>(e)), den_.pow(static_cast<std::uint64_t>(e)), Raw{});
  }

  /// Valuation at a monic prime.
  long ord_at(const PolyA& p) const {
    if (is_zero()) throw UsageError("valuation of zero");
    return multiplicity(num_, p) - multiplicity(den_, p);
  }
  long ord_infty() const {
    if (is_zero()) throw UsageError("valuation of zero");
    return den_.degree() - num_.degree();
  }

  friend bool operator==(const RatA& a, const RatA& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

  std::string to_string() const {
    if (is_polynomial()) return num_.to_string();
    auto wrap = [](const PolyA& p) {
      auto s = p.to_string();
      return (p.degree() > 0 && s.find_first_of("+*") != std::string::npos) ? "(" + s + ")" : s;
    };
    return wrap(num_) + "/" + wrap(den_);
  }

  static long multiplicity(PolyA f, const PolyA& p) {
    long m = 0;
    for (;;) {
      auto [q, r] = f.divmod(p);
      if (!r.is_zero()) return m;
      f = std::move(q);
      ++m;
    }
  }

 private:
  struct Raw {};
  RatA(PolyA n, PolyA d, Raw) : num_(std::move(n)), den_(std::move(d)) {}

  void normalize() {
    if (den_.is_zero()) throw ArithmeticError("zero denominator");
    if (num_.is_zero()) {
      den_ = PolyA::one(num_.field());
      return;
    }
    if (den_.degree() > 0) {
      auto g = gcd(num_, den_);
      if (!g.is_one()) {
        num_ = num_ / g;
        den_ = den_ / g;
      }
    }
    const KElem c = den_.lc();
    if (c != num_.k().one()) {
      const KElem ci = num_.k().inv(c);
      num_ = num_.scaled(ci);
      den_ = den_.scaled(ci);
    }
  }

  PolyA num_, den_;
};

/// The sign function with eps(1/t) = 1: the ratio of leading coefficients.
inline KElem sign_epsilon(const RatA& x) {
  if (x.is_zero()) throw UsageError("sign of zero");
  return x.num().k().div(x.num().lc(), x.den().lc());
}
inline KElem sign_epsilon(const PolyA& x) {
  if (x.is_zero()) throw UsageError("sign of zero");
  return x.lc();
}

// ---------------------------------------------------------------------------
// Quotients A/m

/// Inverse of a mod m, or ArithmeticError when a is not a unit.
inline PolyA inverse_mod(const PolyA& a, const PolyA& m) {
  if (m.degree() == 0) return PolyA(m.field());
  auto [g, s, u] = poly::xgcd(m.k(), (a % m).coeffs(), m.coeffs());
  (void)u;
  if (g.size() != 1) throw ArithmeticError(a.to_string() + " is not a unit mod " + m.to_string());
  return PolyA(m.field(), std::move(s)) % m;
}

/// Residue of a fraction regular at every prime factor of m.
inline PolyA reduce_mod(const RatA& x, const PolyA& m) {
  if (m.degree() == 0) return PolyA(m.field());
  return (x.num() * inverse_mod(x.den(), m)) % m;
}

/// Chinese remaindering for pairwise coprime moduli.
inline PolyA crt(const std::vector<std::pair<PolyA, PolyA>>& residues, const FqPtr& k) {
  PolyA x(k), mod = PolyA::one(k);
  for (const auto& [r, m] : residues) {
    // x' = x + mod * ((r - x) * mod^{-1} mod m)
    auto step = ((r - x) * inverse_mod(mod % m, m)) % m;
    x = x + mod * step;
    mod = mod * m;
    x = x % mod;
  }
  return x;
}

class UnitGroupModM {
 public:
  explicit UnitGroupModM(PolyA m, std::uint64_t seed = default_seed()) : m_(std::move(m)) {
    if (m_.is_zero() || !m_.is_monic()) throw UsageError("modulus must be monic and nonzero");
    if (m_.degree() > 0) factors_ = factor_poly(m_, seed);
    order_ = 1;
    for (const auto& [p, e] : factors_) {
      std::uint64_t norm = 1;
      for (long i = 0; i < p.degree(); ++i) norm *= m_.k().q();
      std::uint64_t o = norm - 1;
      for (int i = 1; i < e; ++i) o *= norm;
      order_ *= o;
    }
  }

  const PolyA& modulus() const { return m_; }
  const std::vector<std::pair<PolyA, int>>& factors() const { return factors_; }
  std::uint64_t order() const { return order_; }

  PolyA reduce(const PolyA& a) const { return m_.degree() == 0 ? PolyA(m_.field()) : a % m_; }
  PolyA identity() const { return reduce(PolyA::one(m_.field())); }
  PolyA mul(const PolyA& a, const PolyA& b) const { return reduce(a * b); }
  PolyA inv(const PolyA& a) const { return inverse_mod(a, m_); }
  bool is_unit(const PolyA& a) const { return m_.degree() == 0 || gcd(a % m_, m_).is_one(); }
  PolyA pow(PolyA a, std::uint64_t e) const {
    PolyA r = identity();
    a = reduce(a);
    while (e) {
      if (e & 1) r = mul(r, a);
      e >>= 1;
      if (e) a = mul(a, a);
    }
    return r;
  }
  /// Multiplicative order of a unit.
  std::uint64_t order_of(const PolyA& a) const {
    if (!is_unit(a)) throw DomainError(a.to_string() + " is not a unit mod " + m_.to_string());
    std::uint64_t o = order_;
    std::vector<std::uint64_t> primes;
    std::uint64_t n = order_;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
      if (n % p) continue;
      primes.push_back(p);
      while (n % p == 0) n /= p;
    }
    if (n > 1) primes.push_back(n);
    for (auto p : primes)
      while (o % p == 0 && pow(a, o / p) == identity()) o /= p;
    return o;
  }

  /// Residues of degree < deg m coprime to m, in (degree, lexicographic) order.
  std::vector<PolyA> representatives(std::size_t limit = 1u << 20) const {
    std::vector<PolyA> out;
    if (m_.degree() == 0) {
      out.push_back(identity());
      return out;
    }
    std::size_t count = 1;
    for (long i = 0; i < m_.degree(); ++i) {
      count *= m_.k().q();
      if (count > limit) throw Unsupported("(A/m)^x too large to enumerate");
    }
    for (long d = 0; d < m_.degree(); ++d)
      for (auto& mono : monic_polys_of_degree(m_.field(), static_cast<unsigned>(d)))
        for (std::size_t c = 1; c < m_.k().q(); ++c) {
          auto a = mono.scaled(m_.k().by_rank(c));
          if (is_unit(a)) out.push_back(std::move(a));
        }
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  PolyA m_;
  std::vector<std::pair<PolyA, int>> factors_;
  std::uint64_t order_ = 1;
};

// ---------------------------------------------------------------------------
// Primes and residue fields

class PrimeA {
 public:
  PrimeA() = default;
  explicit PrimeA(PolyA p) : p_(std::move(p)) {
    if (p_.degree() < 1 || !p_.is_monic()) throw UsageError("a prime must be monic of positive degree");
    residue_ = ExtField::make(p_.field(), p_.coeffs());  // verifies irreducibility
  }

  const PolyA& poly() const { return p_; }
  unsigned degree() const { return static_cast<unsigned>(p_.degree()); }
  /// k[y]/(p) with t mapping to y.
  const ExtPtr& residue_field() const { return residue_; }
  ExtField::value_type tbar() const { return residue_->gen(); }
  /// N(p) = q^deg p.
  std::uint64_t norm() const {
    std::uint64_t n = 1;
    for (unsigned i = 0; i < degree(); ++i) n *= p_.k().q();
    return n;
  }
  std::string to_string() const { return p_.to_string(); }

 private:
  PolyA p_;
  ExtPtr residue_;
};

/// Reduction of a fraction regular at p into k[t]/(p).
inline ExtField::value_type residue_embed(const PrimeA& p, const RatA& f) {
  const auto& R = *p.residue_field();
  auto den = R.from_poly(f.den().coeffs());
  if (R.is_zero(den)) throw DomainError(f.to_string() + " has a pole at " + p.to_string());
  return R.div(R.from_poly(f.num().coeffs()), den);
}
inline ExtField::value_type residue_embed(const PrimeA& p, const PolyA& f) { return p.residue_field()->from_poly(f.coeffs()); }

}  // namespace carlitz
