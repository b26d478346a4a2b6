#pragma once

// The Artin-Schreier tower L_e = F(a_1, ..., a_e) over F = k(t), with
// a_0 = 1 and a_i^q - a_i = -t a_{i-1}.  Elements are sparse combinations of
// the monomials a_1^{e_1} ... a_e^{e_e} (0 <= e_j < q) with coefficients in
// k(t).  A monomial is indexed by its exponent vector read in base q,
// a_1 being the least significant digit.

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "carlitz/error.hpp"
#include "carlitz/field/rational_field.hpp"
#include "carlitz/linalg.hpp"
#include "carlitz/poly/poly_a.hpp"

namespace carlitz {

class TowerField {
 public:
  using value_type = std::map<std::uint32_t, RatA>;
  static constexpr bool is_perfect = false;
  static constexpr unsigned kDefaultCap = 6;

  TowerField(FqPtr k, unsigned depth) : k_(std::move(k)), depth_(depth), cache_(std::make_shared<Cache>()) {
    dim_ = 1;
    for (unsigned i = 0; i < depth_; ++i) {
      if (dim_ > (1u << 20) / k_->q()) throw Unsupported("tower too large");
      dim_ *= static_cast<std::uint32_t>(k_->q());
    }
  }
  static std::shared_ptr<const TowerField> make(FqPtr k, unsigned depth) { return std::make_shared<const TowerField>(std::move(k), depth); }

  const Fq& base() const { return *k_; }
  const FqPtr& k_ptr() const { return k_; }
  unsigned depth() const { return depth_; }
  /// [L_e : F] = q^e.
  std::uint32_t dimension() const { return dim_; }

  value_type zero() const { return {}; }
  value_type one() const { return from_rational(RatA::one(k_)); }
  value_type t() const { return from_rational(RatA(PolyA::t(k_))); }
  value_type from_k(KElem c) const { return from_rational(RatA::constant(k_, c)); }
  value_type from_poly(const PolyA& a) const { return from_rational(RatA(a)); }
  value_type from_rational(const RatA& x) const {
    value_type r;
    if (!x.is_zero()) r.emplace(0, x);
    return r;
  }
  /// a_i, with a_0 = 1.
  value_type generator(unsigned i) const {
    if (i > depth_) throw UsageError("tower generator a_" + std::to_string(i) + " beyond depth " + std::to_string(depth_));
    if (i == 0) return one();
    std::vector<unsigned> e(depth_, 0);
    e[i - 1] = 1;
    return value_type{{index_of(e), RatA::one(k_)}};
  }
  value_type basis(std::uint32_t m) const { return value_type{{m, RatA::one(k_)}}; }

  std::vector<unsigned> exponents(std::uint32_t m) const {
    std::vector<unsigned> e(depth_);
    for (unsigned i = 0; i < depth_; ++i) {
      e[i] = m % k_->q();
      m /= static_cast<std::uint32_t>(k_->q());
    }
    return e;
  }
  std::uint32_t index_of(const std::vector<unsigned>& e) const {
    std::uint32_t m = 0;
    for (unsigned i = depth_; i-- > 0;) m = m * static_cast<std::uint32_t>(k_->q()) + e[i];
    return m;
  }

  /// The constant in F, if a lies in F.
  std::optional<RatA> to_rational(const value_type& a) const {
    if (a.empty()) return RatA::zero(k_);
    if (a.size() == 1 && a.begin()->first == 0) return a.begin()->second;
    return std::nullopt;
  }
  std::optional<KElem> to_k(const value_type& a) const {
    auto r = to_rational(a);
    if (!r || r->num().degree() > 0 || !r->is_polynomial()) return std::nullopt;
    return r->is_zero() ? k_->zero() : r->num().coeffs()[0];
  }
  /// Coordinates in the monomial basis.
  std::vector<RatA> coordinates(const value_type& a) const {
    std::vector<RatA> c(dim_, RatA::zero(k_));
    for (const auto& [m, x] : a) c[m] = x;
    return c;
  }

  bool is_zero(const value_type& a) const { return a.empty(); }
  bool equal(const value_type& a, const value_type& b) const { return a == b; }

  value_type add(const value_type& a, const value_type& b) const {
    value_type r = a;
    for (const auto& [m, x] : b) accumulate(r, m, x);
    return r;
  }
  value_type sub(const value_type& a, const value_type& b) const {
    value_type r = a;
    for (const auto& [m, x] : b) accumulate(r, m, -x);
    return r;
  }
  value_type neg(const value_type& a) const {
    value_type r;
    for (const auto& [m, x] : a) r.emplace(m, -x);
    return r;
  }
  value_type scale(const value_type& a, const RatA& c) const {
    if (c.is_zero()) return {};
    value_type r;
    for (const auto& [m, x] : a) r.emplace(m, x * c);
    return r;
  }
  value_type mul(const value_type& a, const value_type& b) const {
    value_type r;
    for (const auto& [ma, xa] : a) {
      for (const auto& [mb, xb] : b) {
        const RatA c = xa * xb;
        for (const auto& [m, y] : monomial_product(ma, mb)) accumulate(r, m, c * y);
      }
    }
    return r;
  }
  /// Inverse through the regular representation over k(t).
  value_type inv(const value_type& a) const {
    if (a.empty()) throw ArithmeticError("inverse of zero in the tower");
    if (auto c = to_rational(a)) return from_rational(c->inv());
    RatField F(k_);
    auto M = linalg::zeros(F, dim_, dim_);
    for (std::uint32_t j = 0; j < dim_; ++j)
      for (const auto& [m, x] : mul(a, basis(j))) M[m][j] = x;
    linalg::Vec<RatField> rhs(dim_, F.zero());
    rhs[0] = F.one();
    linalg::SolveInfo info;
    auto sol = linalg::solve(F, M, rhs, &info);
    if (!sol || !info.unique()) throw InvariantViolation("multiplication map of a nonzero tower element is singular");
    value_type r;
    for (std::uint32_t m = 0; m < dim_; ++m)
      if (!(*sol)[m].is_zero()) r.emplace(m, (*sol)[m]);
    return r;
  }
  value_type div(const value_type& a, const value_type& b) const { return mul(a, inv(b)); }
  value_type pow(value_type a, std::uint64_t e) const {
    value_type r = one();
    while (e) {
      if (e & 1) r = mul(r, a);
      e >>= 1;
      if (e) a = mul(a, a);
    }
    return r;
  }

  /// x -> x^{q^j}.  The tower is not perfect: negative j only works on k.
  value_type frobenius(const value_type& a, long long j) const {
    if (j == 0 || a.empty()) return a;
    if (j < 0) {
      if (to_k(a)) return a;
      throw Unsupported("the tower is not perfect; no q-th roots");
    }
    value_type r = a;
    for (long long i = 0; i < j; ++i) r = frob_once(r);
    return r;
  }

  /// a_i^q - a_i + t a_{i-1} = 0 for every level, by multiplication.
  bool relations_hold() const {
    for (unsigned i = 1; i <= depth_; ++i) {
      auto lhs = add(sub(pow(generator(i), k_->q()), generator(i)), mul(t(), generator(i - 1)));
      if (!lhs.empty()) return false;
    }
    return true;
  }

  std::string format(const value_type& a) const {
    if (a.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, x] : a) {
      if (!first) os << " + ";
      first = false;
      const std::string mono = monomial_name(m);
      if (mono.empty()) {
        os << '(' << x.to_string() << ')';
        continue;
      }
      if (!(x == RatA::one(k_))) os << '(' << x.to_string() << ")*";
      os << mono;
    }
    return os.str();
  }

  friend bool operator==(const TowerField& a, const TowerField& b) { return a.depth_ == b.depth_ && *a.k_ == *b.k_; }

 private:
  struct Cache {
    std::mutex mu;
    std::map<std::pair<std::uint32_t, std::uint32_t>, value_type> products;
    std::map<std::uint32_t, value_type> frob;
  };

  static void accumulate(value_type& r, std::uint32_t m, const RatA& x) {
    if (x.is_zero()) return;
    auto [it, fresh] = r.emplace(m, x);
    if (fresh) return;
    it->second = it->second + x;
    if (it->second.is_zero()) r.erase(it);
  }

  std::string monomial_name(std::uint32_t m) const {
    std::string s;
    const auto e = exponents(m);
    for (unsigned i = 0; i < depth_; ++i) {
      if (!e[i]) continue;
      if (!s.empty()) s += '*';
      s += "a" + std::to_string(i + 1);
      if (e[i] > 1) s += "^" + std::to_string(e[i]);
    }
    return s;
  }

  const value_type& monomial_product(std::uint32_t a, std::uint32_t b) const {
    if (a > b) std::swap(a, b);
    {
      std::lock_guard<std::mutex> lock(cache_->mu);
      if (auto it = cache_->products.find({a, b}); it != cache_->products.end()) return it->second;
    }
    auto ea = exponents(a), eb = exponents(b);
    for (unsigned i = 0; i < depth_; ++i) ea[i] += eb[i];
    value_type r;
    reduce_into(r, std::move(ea), RatA::one(k_));
    std::lock_guard<std::mutex> lock(cache_->mu);
    return cache_->products.emplace(std::make_pair(a, b), std::move(r)).first->second;
  }

  // Rewrites a_i^q = a_i - t a_{i-1}, top level first.
  void reduce_into(value_type& r, std::vector<unsigned> e, const RatA& c) const {
    unsigned i = depth_;
    while (i > 0 && e[i - 1] < k_->q()) --i;
    if (i == 0) {
      accumulate(r, index_of(e), c);
      return;
    }
    const unsigned q = static_cast<unsigned>(k_->q());
    auto keep = e;
    keep[i - 1] -= q - 1;
    reduce_into(r, std::move(keep), c);
    e[i - 1] -= q;
    if (i > 1) ++e[i - 2];
    reduce_into(r, std::move(e), -(c * RatA(PolyA::t(k_))));
  }

  // Frobenius is a ring map fixing k and sending t to t^q and a_i to
  // a_i - t a_{i-1}.
  value_type frob_once(const value_type& a) const {
    RatField F(k_);
    value_type r;
    for (const auto& [m, x] : a) {
      const RatA c = F.frobenius(x, 1);
      for (const auto& [n, y] : frob_monomial(m)) accumulate(r, n, c * y);
    }
    return r;
  }

  const value_type& frob_monomial(std::uint32_t m) const {
    {
      std::lock_guard<std::mutex> lock(cache_->mu);
      if (auto it = cache_->frob.find(m); it != cache_->frob.end()) return it->second;
    }
    value_type r = one();
    const auto e = exponents(m);
    for (unsigned i = 0; i < depth_; ++i) {
      if (!e[i]) continue;
      auto img = sub(generator(i + 1), mul(t(), generator(i)));
      r = mul(r, pow(img, e[i]));
    }
    std::lock_guard<std::mutex> lock(cache_->mu);
    return cache_->frob.emplace(m, std::move(r)).first->second;
  }

  FqPtr k_;
  unsigned depth_;
  std::uint32_t dim_;
  std::shared_ptr<Cache> cache_;
};

using TowerPtr = std::shared_ptr<const TowerField>;

/// An automorphism of L_e over F.  It is determined by w = 1 + sum c_j
/// tau^{-j}: sigma(u) = u w, i.e. sigma(a_i) = a_i + sum_{j=1}^{i} c_j a_{i-j}.
/// Composition multiplies the series w, truncated after tau^{-e}.
class TowerAutomorphism {
 public:
  TowerAutomorphism() = default;
  TowerAutomorphism(FqPtr k, std::vector<KElem> c) : k_(std::move(k)), c_(std::move(c)) {}
  static TowerAutomorphism identity(FqPtr k, unsigned depth) {
    std::vector<KElem> c(depth, k->zero());
    return TowerAutomorphism(std::move(k), std::move(c));
  }

  unsigned depth() const { return static_cast<unsigned>(c_.size()); }
  /// c_1, ..., c_e.
  const std::vector<KElem>& cocycle() const { return c_; }
  KElem c(unsigned j) const { return c_.at(j - 1); }

  TowerField::value_type image_of_generator(const TowerField& T, unsigned i) const {
    auto r = T.generator(i);
    for (unsigned j = 1; j <= i; ++j)
      if (c_[j - 1].v != 0) r = T.add(r, T.scale(T.generator(i - j), RatA::constant(k_, c_[j - 1])));
    return r;
  }

  TowerField::value_type apply(const TowerField& T, const TowerField::value_type& x) const {
    require_depth(T);
    std::vector<TowerField::value_type> img;
    for (unsigned i = 1; i <= T.depth(); ++i) img.push_back(image_of_generator(T, i));
    TowerField::value_type r;
    for (const auto& [m, coef] : x) {
      auto term = T.from_rational(coef);
      const auto e = T.exponents(m);
      for (unsigned i = 0; i < T.depth(); ++i)
        if (e[i]) term = T.mul(term, T.pow(img[i], e[i]));
      r = T.add(r, term);
    }
    return r;
  }

  /// (this o other)(u) = u w_this w_other.
  TowerAutomorphism compose(const TowerAutomorphism& o) const {
    if (o.depth() != depth()) throw UsageError("automorphisms of different tower depths");
    const auto& k = *k_;
    std::vector<KElem> w(depth() + 1, k.zero()), v(depth() + 1, k.zero());
    w[0] = v[0] = k.one();
    for (unsigned j = 0; j < depth(); ++j) {
      w[j + 1] = c_[j];
      v[j + 1] = o.c_[j];
    }
    std::vector<KElem> r(depth(), k.zero());
    for (unsigned n = 1; n <= depth(); ++n)
      for (unsigned i = 0; i <= n; ++i) r[n - 1] = k.add(r[n - 1], k.mul(w[i], v[n - i]));
    return TowerAutomorphism(k_, std::move(r));
  }
  TowerAutomorphism power(std::uint64_t n) const {
    auto r = identity(k_, depth());
    auto b = *this;
    while (n) {
      if (n & 1) r = r.compose(b);
      n >>= 1;
      if (n) b = b.compose(b);
    }
    return r;
  }
  bool is_identity() const {
    for (auto x : c_)
      if (x.v != 0) return false;
    return true;
  }

  /// sigma(a_i)^q - sigma(a_i) = -t sigma(a_{i-1}) in the tower.
  bool preserves_relations(const TowerField& T) const {
    require_depth(T);
    for (unsigned i = 1; i <= T.depth(); ++i) {
      const auto s = image_of_generator(T, i);
      const auto prev = image_of_generator(T, i - 1);
      if (!T.is_zero(T.add(T.sub(T.frobenius(s, 1), s), T.mul(T.t(), prev)))) return false;
    }
    return true;
  }

  friend bool operator==(const TowerAutomorphism& a, const TowerAutomorphism& b) { return a.c_ == b.c_; }

  std::string to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < c_.size(); ++i) s += (i ? "," : "") + k_->format(c_[i]);
    return s + ")";
  }

 private:
  void require_depth(const TowerField& T) const {
    if (T.depth() > depth()) throw UsageError("automorphism known only to depth " + std::to_string(depth()));
  }

  FqPtr k_;
  std::vector<KElem> c_;
};

}  // namespace carlitz
