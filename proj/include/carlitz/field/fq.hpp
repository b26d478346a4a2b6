#pragma once

// The constant field k = GF(p^n), table driven.
//
// Elements are indices v = sum_i digit_i * p^i where digit_i is the
// coefficient of u^i in GF(p)[u]/(modulus).  Every structure in the library
// that talks about "k" holds a shared_ptr<const Fq>.

#include <compare>
#include <cstdint>
#include <memory>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "carlitz/error.hpp"

namespace carlitz {

struct KElem {
  std::uint16_t v = 0;
  friend constexpr auto operator<=>(const KElem&, const KElem&) = default;
};

namespace detail {

inline bool is_prime(unsigned n) {
  if (n < 2) return false;
  for (unsigned d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Digit-vector arithmetic over GF(p); vectors are little-endian and trimmed.
inline void trim_digits(std::vector<unsigned>& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline std::vector<unsigned> mod_digits(std::vector<unsigned> a, const std::vector<unsigned>& m, unsigned p) {
  trim_digits(a);
  const std::size_t dm = m.size() - 1;
  unsigned inv_lc = 1;
  while ((inv_lc * m.back()) % p != 1) ++inv_lc;
  while (a.size() > dm) {
    const unsigned c = (a.back() * inv_lc) % p;
    const std::size_t shift = a.size() - 1 - dm;
    for (std::size_t j = 0; j <= dm; ++j) a[shift + j] = (a[shift + j] + p - (c * m[j]) % p) % p;
    trim_digits(a);
  }
  return a;
}

inline bool irreducible_over_prime(const std::vector<unsigned>& f, unsigned p) {
  const std::size_t n = f.size() - 1;
  if (n <= 1) return n == 1;
  // Trial division by every monic polynomial of degree 1..n/2.
  for (std::size_t d = 1; d <= n / 2; ++d) {
    std::size_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    for (std::size_t idx = 0; idx < count; ++idx) {
      std::vector<unsigned> g(d + 1, 0);
      std::size_t x = idx;
      for (std::size_t i = 0; i < d; ++i) {
        g[i] = static_cast<unsigned>(x % p);
        x /= p;
      }
      g[d] = 1;
      if (mod_digits(f, g, p).empty()) return false;
    }
  }
  return true;
}

}  // namespace detail

class Fq {
 public:
  using value_type = KElem;
  static constexpr unsigned kMaxOrder = 256;

  /// q must be a prime power; the modulus is the smallest monic irreducible
  /// of degree n over GF(p) in lexicographic (constant term first) order.
  static std::shared_ptr<const Fq> make(unsigned q) {
    if (q < 2) throw UsageError("field order must be a prime power >= 2");
    unsigned p = 2;
    while (q % p != 0) ++p;
    unsigned n = 0;
    unsigned rest = q;
    while (rest % p == 0) {
      rest /= p;
      ++n;
    }
    if (rest != 1) throw UsageError("field order " + std::to_string(q) + " is not a prime power");
    return make(p, n);
  }

  static std::shared_ptr<const Fq> make(unsigned p, unsigned n) {
    if (!detail::is_prime(p)) throw UsageError("characteristic must be prime");
    if (n == 0) throw UsageError("extension degree must be >= 1");
    if (n == 1) return make(p, std::vector<unsigned>{0, 1});
    // Lexicographic on [c_0, ..., c_{n-1}] with c_0 most significant; c_0 = 0 is never irreducible.
    std::size_t count = 1;
    for (unsigned i = 0; i < n; ++i) count *= p;
    for (std::size_t idx = count / p; idx < count; ++idx) {
      std::vector<unsigned> f(n + 1, 0);
      std::size_t x = idx;
      for (unsigned i = n; i-- > 0;) {
        f[i] = static_cast<unsigned>(x % p);
        x /= p;
      }
      f[n] = 1;
      if (detail::irreducible_over_prime(f, p)) return make(p, std::move(f));
    }
    throw InvariantViolation("no irreducible polynomial found");
  }

  static std::shared_ptr<const Fq> make(unsigned p, std::vector<unsigned> modulus) {
    if (!detail::is_prime(p)) throw UsageError("characteristic must be prime");
    for (auto& c : modulus) c %= p;
    detail::trim_digits(modulus);
    if (modulus.size() < 2 || modulus.back() != 1) throw UsageError("modulus must be monic of degree >= 1");
    if (!detail::irreducible_over_prime(modulus, p)) throw UsageError("modulus is not irreducible over GF(p)");
    std::size_t q = 1;
    for (std::size_t i = 1; i < modulus.size(); ++i) q *= p;
    if (q > kMaxOrder) throw UsageError("field order exceeds " + std::to_string(kMaxOrder));
    return std::shared_ptr<const Fq>(new Fq(p, std::move(modulus)));
  }

  unsigned p() const { return p_; }
  unsigned n() const { return n_; }
  unsigned q() const { return q_; }
  unsigned dimension() const { return 1; }
  const std::vector<unsigned>& modulus() const { return modulus_; }
  const Fq& base() const { return *this; }

  KElem zero() const { return KElem{0}; }
  KElem one() const { return KElem{1}; }
  bool is_zero(KElem a) const { return a.v == 0; }
  bool equal(KElem a, KElem b) const { return a.v == b.v; }

  KElem add(KElem a, KElem b) const { return KElem{add_[a.v * q_ + b.v]}; }
  KElem sub(KElem a, KElem b) const { return KElem{add_[a.v * q_ + neg_[b.v]]}; }
  KElem neg(KElem a) const { return KElem{neg_[a.v]}; }
  KElem mul(KElem a, KElem b) const { return KElem{mul_[a.v * q_ + b.v]}; }
  KElem inv(KElem a) const {
    if (a.v == 0) throw ArithmeticError("inverse of zero in GF(" + std::to_string(q_) + ")");
    return KElem{inv_[a.v]};
  }
  KElem div(KElem a, KElem b) const { return mul(a, inv(b)); }
  KElem pow(KElem a, std::uint64_t e) const {
    KElem r = one();
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  /// x -> x^{q^j}; the identity on k for every j.
  KElem frobenius(KElem a, long long) const { return a; }
  KElem pth_root(KElem a) const { return KElem{proot_[a.v]}; }
  KElem from_k(KElem a) const { return a; }

  /// Integer literal reduced mod p, as a constant of k.
  KElem from_int(long long x) const {
    long long r = x % static_cast<long long>(p_);
    if (r < 0) r += p_;
    return KElem{static_cast<std::uint16_t>(r)};
  }

  KElem element(std::size_t index) const { return KElem{static_cast<std::uint16_t>(index)}; }
  /// The image of u in GF(p)[u]/(modulus); for n = 1 this is the root of the
  /// modulus, i.e. 0.
  KElem generator() const { return n_ == 1 ? zero() : KElem{static_cast<std::uint16_t>(p_)}; }

  // Element order: lexicographic on little-endian digit vectors.
  std::size_t rank(KElem a) const { return rank_[a.v]; }
  KElem by_rank(std::size_t r) const { return KElem{by_rank_[r]}; }
  bool less(KElem a, KElem b) const { return rank_[a.v] < rank_[b.v]; }

  std::vector<unsigned> digits(KElem a) const {
    std::vector<unsigned> d(n_);
    unsigned x = a.v;
    for (unsigned i = 0; i < n_; ++i) {
      d[i] = x % p_;
      x /= p_;
    }
    return d;
  }
  KElem from_digits(const std::vector<unsigned>& d) const {
    std::vector<unsigned> r(d.begin(), d.end());
    for (auto& c : r) c %= p_;
    r = detail::mod_digits(std::move(r), modulus_, p_);
    unsigned v = 0;
    for (std::size_t i = r.size(); i-- > 0;) v = v * p_ + r[i];
    return KElem{static_cast<std::uint16_t>(v)};
  }

  /// Human form: an integer for prime fields, a polynomial in u otherwise.
  std::string format(KElem a) const {
    if (n_ == 1) return std::to_string(a.v);
    if (a.v == 0) return "0";
    const auto d = digits(a);
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = d.size(); i-- > 0;) {
      if (d[i] == 0) continue;
      if (!first) os << '+';
      first = false;
      if (i == 0) {
        os << d[i];
        continue;
      }
      if (d[i] != 1) os << d[i] << '*';
      os << 'u';
      if (i > 1) os << '^' << i;
    }
    return os.str();
  }

  /// Canonical encoding: the little-endian digit vector, e.g. "[2,0,1]".
  std::string encode(KElem a) const {
    const auto d = digits(a);
    std::string s = "[";
    for (std::size_t i = 0; i < d.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(d[i]);
    }
    return s + "]";
  }

  template <class Rng>
  KElem random(Rng& rng) const {
    std::uniform_int_distribution<unsigned> dist(0, q_ - 1);
    return KElem{static_cast<std::uint16_t>(dist(rng))};
  }

  friend bool operator==(const Fq& a, const Fq& b) { return a.p_ == b.p_ && a.modulus_ == b.modulus_; }

 private:
  Fq(unsigned p, std::vector<unsigned> modulus) : p_(p), n_(static_cast<unsigned>(modulus.size() - 1)), modulus_(std::move(modulus)) {
    q_ = 1;
    for (unsigned i = 0; i < n_; ++i) q_ *= p_;
    add_.resize(q_ * q_);
    mul_.resize(q_ * q_);
    neg_.resize(q_);
    inv_.resize(q_, 0);
    proot_.resize(q_);
    std::vector<std::vector<unsigned>> dig(q_);
    for (unsigned v = 0; v < q_; ++v) dig[v] = digits(KElem{static_cast<std::uint16_t>(v)});
    auto index_of = [&](const std::vector<unsigned>& d) {
      unsigned v = 0;
      for (std::size_t i = d.size(); i-- > 0;) v = v * p_ + d[i];
      return static_cast<std::uint16_t>(v);
    };
    for (unsigned a = 0; a < q_; ++a) {
      std::vector<unsigned> na(n_);
      for (unsigned i = 0; i < n_; ++i) na[i] = (p_ - dig[a][i]) % p_;
      neg_[a] = index_of(na);
      for (unsigned b = 0; b < q_; ++b) {
        std::vector<unsigned> s(n_);
        for (unsigned i = 0; i < n_; ++i) s[i] = (dig[a][i] + dig[b][i]) % p_;
        add_[a * q_ + b] = index_of(s);
        std::vector<unsigned> prod(2 * n_, 0);
        for (unsigned i = 0; i < n_; ++i)
          for (unsigned j = 0; j < n_; ++j) prod[i + j] = (prod[i + j] + dig[a][i] * dig[b][j]) % p_;
        auto r = detail::mod_digits(std::move(prod), modulus_, p_);
        r.resize(n_, 0);
        mul_[a * q_ + b] = index_of(r);
      }
    }
    for (unsigned a = 1; a < q_; ++a)
      for (unsigned b = 1; b < q_; ++b)
        if (mul_[a * q_ + b] == 1) inv_[a] = static_cast<std::uint16_t>(b);
    // x -> x^p is a bijection; invert it.
    for (unsigned a = 0; a < q_; ++a) {
      KElem x{static_cast<std::uint16_t>(a)};
      proot_[pow(x, p_).v] = static_cast<std::uint16_t>(a);
    }
    std::vector<std::uint16_t> order(q_);
    std::iota(order.begin(), order.end(), std::uint16_t{0});
    std::sort(order.begin(), order.end(), [&](std::uint16_t a, std::uint16_t b) { return dig[a] < dig[b]; });
    by_rank_ = order;
    rank_.resize(q_);
    for (unsigned r = 0; r < q_; ++r) rank_[order[r]] = static_cast<std::uint16_t>(r);
  }

  unsigned p_;
  unsigned n_;
  unsigned q_ = 0;
  std::vector<unsigned> modulus_;
  std::vector<std::uint16_t> add_, mul_, neg_, inv_, proot_, rank_, by_rank_;
};

using FqPtr = std::shared_ptr<const Fq>;

}  // namespace carlitz
