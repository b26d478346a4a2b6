#pragma once

// GF(q^s) realized as k[y]/(g) with g monic irreducible over k.
//
// Elements are coefficient vectors of fixed length s (little-endian in y).
// canonical(k, s) uses the smallest monic irreducible of degree s over k,
// which makes every element encoding reproducible.

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "carlitz/error.hpp"
#include "carlitz/field/fq.hpp"
#include "carlitz/linalg.hpp"
#include "carlitz/poly/dense.hpp"

namespace carlitz {

using KPoly = poly::Poly<Fq>;

/// Smallest monic irreducible polynomial of degree n over k: coefficient
/// vectors (c_0, ..., c_{n-1}) compared lexicographically with c_0 most
/// significant, each digit compared by the element order of k.
inline KPoly smallest_irreducible(const Fq& k, unsigned n) {
  if (n == 0) throw UsageError("degree must be >= 1");
  using Key = std::tuple<unsigned, std::vector<unsigned>, unsigned>;
  static std::mutex mu;
  static std::map<Key, KPoly> memo;
  const Key key{k.p(), k.modulus(), n};
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
  }
  std::vector<std::size_t> rank(n, 0);
  if (n >= 2) rank[0] = 1;
  KPoly found;
  for (;;) {
    KPoly f(n + 1);
    for (unsigned i = 0; i < n; ++i) f[i] = k.by_rank(rank[i]);
    f[n] = k.one();
    bool has_root = false;
    if (n >= 2) {
      for (unsigned c = 0; c < k.q() && !has_root; ++c) has_root = k.is_zero(poly::eval(k, f, k.element(c)));
    }
    if (!has_root && poly::is_irreducible(k, f)) {
      found = std::move(f);
      break;
    }
    std::size_t i = n;
    while (i-- > 0) {
      if (++rank[i] < k.q()) break;
      rank[i] = 0;
      if (i == 0) throw InvariantViolation("irreducible search exhausted");
    }
  }
  std::lock_guard<std::mutex> lock(mu);
  memo.emplace(key, found);
  return found;
}

class ExtField {
 public:
  using value_type = std::vector<KElem>;
  static constexpr bool is_perfect = true;

  static std::shared_ptr<const ExtField> make(FqPtr k, KPoly modulus) {
    poly::trim(*k, modulus);
    if (modulus.size() < 2) throw UsageError("extension modulus must have degree >= 1");
    modulus = poly::monic(*k, modulus);
    if (!poly::is_irreducible(*k, modulus)) throw UsageError("extension modulus is not irreducible");
    return std::shared_ptr<const ExtField>(new ExtField(std::move(k), std::move(modulus)));
  }

  static std::shared_ptr<const ExtField> canonical(FqPtr k, unsigned s) {
    using Key = std::tuple<unsigned, std::vector<unsigned>, unsigned>;
    static std::mutex mu;
    static std::map<Key, std::shared_ptr<const ExtField>> memo;
    const Key key{k->p(), k->modulus(), s};
    {
      std::lock_guard<std::mutex> lock(mu);
      if (auto it = memo.find(key); it != memo.end()) return it->second;
    }
    auto g = smallest_irreducible(*k, s);
    auto field = std::shared_ptr<const ExtField>(new ExtField(k, std::move(g)));
    std::lock_guard<std::mutex> lock(mu);
    return memo.emplace(key, field).first->second;
  }

  const Fq& base() const { return *k_; }
  const FqPtr& k_ptr() const { return k_; }
  unsigned degree() const { return s_; }
  unsigned dimension() const { return s_; }
  const KPoly& modulus() const { return modulus_; }

  value_type zero() const { return value_type(s_, k_->zero()); }
  value_type one() const {
    auto r = zero();
    r[0] = k_->one();
    return r;
  }
  /// The class of y.
  value_type gen() const { return from_poly(poly::x_power(*k_, 1)); }
  value_type from_k(KElem c) const {
    auto r = zero();
    r[0] = c;
    return r;
  }
  value_type from_int(long long x) const { return from_k(k_->from_int(x)); }
  value_type from_poly(const KPoly& a) const {
    auto r = poly::mod(*k_, a, modulus_);
    r.resize(s_, k_->zero());
    return r;
  }
  KPoly to_poly(const value_type& a) const {
    KPoly r = a;
    poly::trim(*k_, r);
    return r;
  }
  std::optional<KElem> to_k(const value_type& a) const {
    for (unsigned i = 1; i < s_; ++i)
      if (!k_->is_zero(a[i])) return std::nullopt;
    return a[0];
  }

  bool is_zero(const value_type& a) const {
    return std::all_of(a.begin(), a.end(), [](KElem c) { return c.v == 0; });
  }
  bool equal(const value_type& a, const value_type& b) const { return a == b; }

  value_type add(const value_type& a, const value_type& b) const {
    value_type r(s_);
    for (unsigned i = 0; i < s_; ++i) r[i] = k_->add(a[i], b[i]);
    return r;
  }
  value_type sub(const value_type& a, const value_type& b) const {
    value_type r(s_);
    for (unsigned i = 0; i < s_; ++i) r[i] = k_->sub(a[i], b[i]);
    return r;
  }
  value_type neg(const value_type& a) const {
    value_type r(s_);
    for (unsigned i = 0; i < s_; ++i) r[i] = k_->neg(a[i]);
    return r;
  }
  value_type scale(const value_type& a, KElem c) const {
    value_type r(s_);
    for (unsigned i = 0; i < s_; ++i) r[i] = k_->mul(a[i], c);
    return r;
  }
  value_type mul(const value_type& a, const value_type& b) const {
    std::vector<KElem> prod(2 * s_ - 1, k_->zero());
    for (unsigned i = 0; i < s_; ++i) {
      if (a[i].v == 0) continue;
      for (unsigned j = 0; j < s_; ++j) prod[i + j] = k_->add(prod[i + j], k_->mul(a[i], b[j]));
    }
    // The modulus is monic: fold the top coefficients down.
    for (std::size_t i = prod.size(); i-- > s_;) {
      const KElem c = prod[i];
      if (c.v == 0) continue;
      for (unsigned j = 0; j < s_; ++j) prod[i - s_ + j] = k_->sub(prod[i - s_ + j], k_->mul(c, modulus_[j]));
    }
    prod.resize(s_);
    return prod;
  }
  value_type inv(const value_type& a) const {
    if (is_zero(a)) throw ArithmeticError("inverse of zero in GF(q^" + std::to_string(s_) + ")");
    auto [g, u, v] = poly::xgcd(*k_, to_poly(a), modulus_);
    (void)v;
    return from_poly(u);
  }
  value_type div(const value_type& a, const value_type& b) const { return mul(a, inv(b)); }
  value_type pow(value_type a, std::uint64_t e) const {
    auto r = one();
    while (e) {
      if (e & 1) r = mul(r, a);
      e >>= 1;
      if (e) a = mul(a, a);
    }
    return r;
  }

  /// x -> x^{q^j}; any integer j (the field is perfect).
  value_type frobenius(value_type a, long long j) const {
    long long m = j % static_cast<long long>(s_);
    if (m < 0) m += s_;
    for (long long step = 0; step < m; ++step) a = frob_once(a);
    return a;
  }
  value_type pth_root(const value_type& a) const {
    // x^{1/p} = (x^{1/q})^{q/p}.
    return pow(frobenius(a, -1), k_->q() / k_->p());
  }

  /// Lexicographic on little-endian coefficient vectors.
  bool less(const value_type& a, const value_type& b) const {
    for (unsigned i = 0; i < s_; ++i) {
      if (a[i] == b[i]) continue;
      return k_->less(a[i], b[i]);
    }
    return false;
  }

  template <class Rng>
  value_type random(Rng& rng) const {
    value_type r(s_);
    for (auto& c : r) c = k_->random(rng);
    return r;
  }

  std::string format(const value_type& a) const {
    if (is_zero(a)) return "0";
    std::ostringstream os;
    bool first = true;
    for (unsigned i = s_; i-- > 0;) {
      if (a[i].v == 0) continue;
      if (!first) os << '+';
      first = false;
      std::string c = k_->format(a[i]);
      const bool compound = c.find('+') != std::string::npos;
      if (i == 0) {
        os << (compound ? "(" + c + ")" : c);
        continue;
      }
      if (a[i] != k_->one()) os << (compound ? "(" + c + ")" : c) << '*';
      os << 'y';
      if (i > 1) os << '^' << i;
    }
    return os.str();
  }

  /// Canonical encoding: the coefficient vector over k, each coefficient in
  /// the digit encoding of k.
  std::string encode(const value_type& a) const {
    std::string s = "[";
    for (unsigned i = 0; i < s_; ++i) {
      if (i) s += ',';
      s += k_->n() == 1 ? std::to_string(a[i].v) : k_->encode(a[i]);
    }
    return s + "]";
  }

  /// Coordinates of a k-linear map given column images.
  linalg::Matrix<Fq> matrix_of(const std::vector<value_type>& images) const {
    auto m = linalg::zeros(*k_, s_, images.size());
    for (std::size_t j = 0; j < images.size(); ++j)
      for (unsigned i = 0; i < s_; ++i) m[i][j] = images[j][i];
    return m;
  }
  value_type basis(unsigned i) const {
    auto r = zero();
    r[i] = k_->one();
    return r;
  }

  friend bool operator==(const ExtField& a, const ExtField& b) { return *a.k_ == *b.k_ && a.modulus_ == b.modulus_; }

 private:
  ExtField(FqPtr k, KPoly modulus) : k_(std::move(k)), s_(static_cast<unsigned>(modulus.size() - 1)), modulus_(std::move(modulus)) {
    // Columns of the k-linear map x -> x^q in the power basis.
    const auto yq = poly::powmod(*k_, poly::x_power(*k_, 1), k_->q(), modulus_);
    auto cur = poly::constant(*k_, k_->one());
    frob_.reserve(s_);
    for (unsigned i = 0; i < s_; ++i) {
      auto col = cur;
      col.resize(s_, k_->zero());
      frob_.push_back(std::move(col));
      cur = poly::mulmod(*k_, cur, yq, modulus_);
    }
  }

  value_type frob_once(const value_type& a) const {
    auto r = zero();
    for (unsigned i = 0; i < s_; ++i) {
      if (a[i].v == 0) continue;
      for (unsigned j = 0; j < s_; ++j) r[j] = k_->add(r[j], k_->mul(a[i], frob_[i][j]));
    }
    return r;
  }

  FqPtr k_;
  unsigned s_;
  KPoly modulus_;
  std::vector<value_type> frob_;
};

using ExtPtr = std::shared_ptr<const ExtField>;

/// A k-embedding src -> dst, determined by the image of y: the branch-th
/// root (in the element order of dst) of src's modulus.
class Embedding {
 public:
  static Embedding make(ExtPtr src, ExtPtr dst, std::size_t branch = 0) {
    if (dst->degree() % src->degree() != 0)
      throw DomainError("no embedding of GF(q^" + std::to_string(src->degree()) + ") into GF(q^" + std::to_string(dst->degree()) + ")");
    poly::Poly<ExtField> g;
    for (const auto& c : src->modulus()) g.push_back(dst->from_k(c));
    std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
    auto rts = poly::roots(*dst, g, rng);
    if (branch >= rts.size()) throw DomainError("embedding branch out of range");
    Embedding e;
    e.src_ = std::move(src);
    e.dst_ = std::move(dst);
    e.root_ = rts[branch];
    auto cur = e.dst_->one();
    for (unsigned i = 0; i < e.src_->degree(); ++i) {
      e.powers_.push_back(cur);
      cur = e.dst_->mul(cur, e.root_);
    }
    return e;
  }

  ExtField::value_type operator()(const ExtField::value_type& a) const {
    auto r = dst_->zero();
    const auto& k = dst_->base();
    for (unsigned i = 0; i < src_->degree(); ++i) {
      if (a[i].v == 0) continue;
      for (unsigned j = 0; j < dst_->degree(); ++j) r[j] = k.add(r[j], k.mul(a[i], powers_[i][j]));
    }
    return r;
  }

  const ExtPtr& src() const { return src_; }
  const ExtPtr& dst() const { return dst_; }
  const ExtField::value_type& image_of_generator() const { return root_; }

 private:
  ExtPtr src_, dst_;
  ExtField::value_type root_;
  std::vector<ExtField::value_type> powers_;
};

// ---------------------------------------------------------------------------
// Artin-Schreier equations y^{q^h} - y = c

struct FrobeniusShiftSolution {
  bool solvable = false;
  ExtField::value_type particular;
  std::vector<ExtField::value_type> kernel;  // k-basis of GF(q^gcd(h,s))
};

inline FrobeniusShiftSolution solve_frobenius_shift(const ExtField& e, unsigned h, const ExtField::value_type& c) {
  std::vector<ExtField::value_type> images;
  images.reserve(e.degree());
  for (unsigned i = 0; i < e.degree(); ++i) {
    auto b = e.basis(i);
    images.push_back(e.sub(e.frobenius(b, h), b));
  }
  const auto m = e.matrix_of(images);
  FrobeniusShiftSolution out;
  auto sol = linalg::solve(e.base(), m, c);
  for (auto& v : linalg::kernel(e.base(), m, e.degree())) out.kernel.push_back(std::move(v));
  if (!sol) return out;
  out.solvable = true;
  out.particular = std::move(*sol);
  return out;
}

/// All solutions, sorted by the element order.  Refuses to enumerate more
/// than `limit` elements.
inline std::vector<ExtField::value_type> enumerate_solutions(const ExtField& e, const FrobeniusShiftSolution& s, std::size_t limit = 1u << 16) {
  std::vector<ExtField::value_type> out;
  if (!s.solvable) return out;
  const auto& k = e.base();
  std::size_t count = 1;
  for (std::size_t i = 0; i < s.kernel.size(); ++i) {
    count *= k.q();
    if (count > limit) throw Unsupported("solution set too large to enumerate");
  }
  out.reserve(count);
  std::vector<unsigned> digits(s.kernel.size(), 0);
  for (std::size_t n = 0; n < count; ++n) {
    auto v = s.particular;
    for (std::size_t i = 0; i < digits.size(); ++i)
      if (digits[i]) v = e.add(v, e.scale(s.kernel[i], k.element(digits[i])));
    out.push_back(std::move(v));
    for (std::size_t i = 0; i < digits.size(); ++i) {
      if (++digits[i] < k.q()) break;
      digits[i] = 0;
    }
  }
  std::sort(out.begin(), out.end(), [&](const auto& a, const auto& b) { return e.less(a, b); });
  return out;
}

struct AsRootResult {
  std::vector<ExtField::value_type> roots;  // all q roots, sorted; empty if none
  unsigned extension_degree = 0;           // degree over k of the smallest field with a root
  bool solvable() const { return !roots.empty(); }
};

/// Solves y^q - y = c in e.  Without a root in GF(q^s), a root lives in
/// GF(q^{p s}): Frobenius of GF(q^s) moves a root by a nonzero constant,
/// which has additive order p.
inline AsRootResult as_root(const ExtField& e, const ExtField::value_type& c) {
  AsRootResult out;
  auto sol = solve_frobenius_shift(e, 1, c);
  if (sol.solvable) {
    out.roots = enumerate_solutions(e, sol);
    out.extension_degree = e.degree();
  } else {
    out.extension_degree = e.degree() * e.base().p();
  }
  return out;
}

/// Same equation over k itself.
inline AsRootResult as_root(const Fq& k, KElem c) {
  AsRootResult out;
  if (k.is_zero(c)) {
    for (std::size_t r = 0; r < k.q(); ++r) out.roots.push_back({k.by_rank(r)});
    out.extension_degree = 1;
  } else {
    out.extension_degree = k.p();
  }
  return out;
}

/// Smallest degree s' (a multiple of s, over k) such that y^{q^h} - y = c
/// has a root in GF(q^{s'}); such a root always exists in degree
/// lcm(s, h) * p.
inline unsigned frobenius_shift_extension_degree(const ExtPtr& e, unsigned h, const ExtField::value_type& c) {
  const unsigned s = e->degree();
  const unsigned bound = std::lcm(s, h) * e->base().p();
  for (unsigned cand = s; cand <= bound; cand += s) {
    if (bound % cand != 0) continue;
    if (cand == s) {
      if (solve_frobenius_shift(*e, h, c).solvable) return s;
      continue;
    }
    auto big = ExtField::canonical(e->k_ptr(), cand);
    auto emb = Embedding::make(e, big);
    if (solve_frobenius_shift(*big, h, emb(c)).solvable) return cand;
  }
  throw InvariantViolation("Artin-Schreier equation has no root in the expected degree");
}

}  // namespace carlitz
