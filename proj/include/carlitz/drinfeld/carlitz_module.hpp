#pragma once

// The Carlitz module phi_t = gamma + tau over a coefficient field L, its
// extension to the completion at infinity, the sign map mu and the ideal
// action.

#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "carlitz/error.hpp"
#include "carlitz/field/extension.hpp"
#include "carlitz/field/perfected.hpp"
#include "carlitz/field/rational_field.hpp"
#include "carlitz/poly/poly_a.hpp"
#include "carlitz/skew/skew_series.hpp"
#include "carlitz/skew/twisted_poly.hpp"

namespace carlitz {

/// A truncated element of F_infty = k((1/t)):
/// x = sum_{i < P} d_i t^{-ord - i}, d_0 != 0 unless x is zero.
class LaurentT {
 public:
  LaurentT() = default;
  LaurentT(FqPtr k, long ord, std::vector<KElem> digits) : k_(std::move(k)), ord_(ord), d_(std::move(digits)) { normalize(); }

  static LaurentT one(FqPtr k, std::size_t precision) {
    std::vector<KElem> d(precision, k->zero());
    d[0] = k->one();
    return LaurentT(std::move(k), 0, std::move(d));
  }

  /// Expansion of num/den in powers of 1/t to `precision` digits.
  static LaurentT from_rat(const RatA& x, std::size_t precision) {
    const auto& k = x.num().k();
    if (x.is_zero()) throw UsageError("expansion of zero");
    if (precision == 0) throw UsageError("precision must be >= 1");
    // Reverse both polynomials: s = 1/t, N(s) = s^{deg num} num(1/s).
    std::vector<KElem> n(x.num().coeffs().rbegin(), x.num().coeffs().rend());
    std::vector<KElem> d(x.den().coeffs().rbegin(), x.den().coeffs().rend());
    n.resize(std::max(n.size(), precision), k.zero());
    d.resize(std::max(d.size(), precision), k.zero());
    const KElem d0inv = k.inv(d[0]);
    std::vector<KElem> out(precision, k.zero());
    for (std::size_t i = 0; i < precision; ++i) {
      KElem acc = n[i];
      for (std::size_t j = 1; j <= i; ++j) acc = k.sub(acc, k.mul(d[j], out[i - j]));
      out[i] = k.mul(acc, d0inv);
    }
    return LaurentT(x.field(), x.ord_infty(), std::move(out));
  }
  static LaurentT from_poly(const PolyA& a, std::size_t precision) { return from_rat(RatA(a), precision); }

  const FqPtr& field() const { return k_; }
  long ord() const { return ord_; }
  std::size_t precision() const { return d_.size(); }
  const std::vector<KElem>& digits() const { return d_; }
  bool is_zero() const { return d_.empty(); }
  KElem sign() const {
    if (d_.empty()) throw UsageError("sign of zero");
    return d_[0];
  }

  LaurentT truncate(std::size_t precision) const {
    if (precision >= d_.size()) return *this;
    return LaurentT(k_, ord_, std::vector<KElem>(d_.begin(), d_.begin() + static_cast<long>(precision)));
  }

  LaurentT operator*(const LaurentT& o) const {
    const std::size_t P = std::min(d_.size(), o.d_.size());
    std::vector<KElem> r(P, k_->zero());
    for (std::size_t n = 0; n < P; ++n)
      for (std::size_t i = 0; i <= n; ++i) r[n] = k_->add(r[n], k_->mul(d_[i], o.d_[n - i]));
    return LaurentT(k_, ord_ + o.ord_, std::move(r));
  }
  LaurentT inv() const {
    if (d_.empty()) throw ArithmeticError("inverse of zero in F_infty");
    std::vector<KElem> r(d_.size(), k_->zero());
    const KElem c = k_->inv(d_[0]);
    for (std::size_t n = 0; n < d_.size(); ++n) {
      KElem acc = n == 0 ? k_->one() : k_->zero();
      for (std::size_t i = 1; i <= n; ++i) acc = k_->sub(acc, k_->mul(d_[i], r[n - i]));
      r[n] = k_->mul(acc, c);
    }
    return LaurentT(k_, -ord_, std::move(r));
  }
  LaurentT scaled(KElem c) const {
    std::vector<KElem> r;
    for (auto x : d_) r.push_back(k_->mul(x, c));
    return LaurentT(k_, ord_, std::move(r));
  }

  /// x = h / t^M with h a polynomial and M >= 0 (exact for the known digits).
  std::pair<PolyA, long> as_fraction() const {
    const long P = static_cast<long>(d_.size());
    const long M = std::max(0L, ord_ + P - 1);
    KPoly h(static_cast<std::size_t>(M - ord_) + 1, k_->zero());
    for (long i = 0; i < P; ++i) h[static_cast<std::size_t>(M - ord_ - i)] = d_[static_cast<std::size_t>(i)];
    return {PolyA(k_, std::move(h)), M};
  }

  friend bool operator==(const LaurentT& a, const LaurentT& b) { return a.ord_ == b.ord_ && a.d_ == b.d_; }

  std::string to_string() const {
    if (d_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < d_.size(); ++i) {
      if (d_[i].v == 0) continue;
      if (!first) os << '+';
      first = false;
      const long e = -ord_ - static_cast<long>(i);
      std::string c = k_->format(d_[i]);
      if (c.find('+') != std::string::npos) c = "(" + c + ")";
      if (e == 0) {
        os << c;
        continue;
      }
      if (d_[i] != k_->one()) os << c << '*';
      os << 't';
      if (e != 1) os << '^' << e;
    }
    os << "+O(t^" << -ord_ - static_cast<long>(d_.size()) << ")";
    return os.str();
  }

 private:
  void normalize() {
    std::size_t lead = 0;
    while (lead < d_.size() && d_[lead].v == 0) ++lead;
    if (lead == 0) return;
    d_.erase(d_.begin(), d_.begin() + static_cast<long>(lead));
    ord_ += static_cast<long>(lead);
  }

  FqPtr k_;
  long ord_ = 0;
  std::vector<KElem> d_;
};

template <class F>
class CarlitzModule {
 public:
  using value_type = typename F::value_type;

  CarlitzModule(std::shared_ptr<const F> L, value_type gamma_t)
      : L_(std::move(L)), gamma_t_(std::move(gamma_t)), phi_t_(L_, {gamma_t_, L_->one()}), cache_(std::make_shared<Cache>()) {}

  /// The generic module over a field containing t.
  static CarlitzModule generic(std::shared_ptr<const F> L) {
    auto t = L->t();
    return CarlitzModule(std::move(L), std::move(t));
  }

  const std::shared_ptr<const F>& field_ptr() const { return L_; }
  const F& field() const { return *L_; }
  const Fq& k() const { return L_->base(); }
  const value_type& gamma_t() const { return gamma_t_; }
  const TwistedPoly<F>& phi_t() const { return phi_t_; }

  /// phi_a by Horner: phi_{a' t + c} = phi_{a'} phi_t + c.
  TwistedPoly<F> phi(const PolyA& a) const {
    TwistedPoly<F> r(L_);
    const auto& c = a.coeffs();
    for (std::size_t i = c.size(); i-- > 0;) {
      r = r * phi_t_;
      r = r + TwistedPoly<F>::constant(L_, L_->from_k(c[i]));
    }
    return r;
  }

  /// The structure map gamma: a -> a(gamma_t), i.e. the constant term of phi_a.
  value_type gamma(const PolyA& a) const {
    auto r = L_->zero();
    for (std::size_t i = a.coeffs().size(); i-- > 0;) r = L_->add(L_->mul(r, gamma_t_), L_->from_k(a.coeffs()[i]));
    return r;
  }

  /// phi(t^{-M}) = phi_{t^M}^{-1} to precision P (cached).
  SkewSeries<F> phi_t_neg_power(long M, std::size_t P) const {
    if (M < 0) throw UsageError("negative exponent");
    {
      std::lock_guard<std::mutex> lock(cache_->mu);
      if (auto it = cache_->inverse.find({M, P}); it != cache_->inverse.end()) return it->second;
    }
    auto s = SkewSeries<F>::from_poly(phi(PolyA::t(k_ptr()).pow(static_cast<std::uint64_t>(M))), P).inverse();
    std::lock_guard<std::mutex> lock(cache_->mu);
    return cache_->inverse.emplace(std::make_pair(M, P), s).first->second;
  }

  /// phi_x for x in F_infty, to precision P.
  SkewSeries<F> phi_laurent(const LaurentT& x, std::size_t P) const {
    if (x.is_zero()) throw UsageError("phi of zero in F_infty");
    if (x.precision() < P) throw PrecisionError("element of F_infty carries " + std::to_string(x.precision()) + " digits, " + std::to_string(P) + " needed");
    auto [h, M] = x.truncate(P).as_fraction();
    return SkewSeries<F>::from_poly(phi(h), P) * phi_t_neg_power(M, P);
  }

  const FqPtr& k_ptr() const { return L_->k_ptr(); }

 private:
  struct Cache {
    std::mutex mu;
    std::map<std::pair<long, std::size_t>, SkewSeries<F>> inverse;
  };

  std::shared_ptr<const F> L_;
  value_type gamma_t_;
  TwistedPoly<F> phi_t_;
  std::shared_ptr<Cache> cache_;
};

/// The sign mu_phi(x): the first nonzero coefficient of phi_x, an element of k.
template <class F>
KElem mu(const CarlitzModule<F>& M, const RatA& x) {
  if (x.is_zero()) throw UsageError("mu of zero");
  const auto s = M.phi_laurent(LaurentT::from_rat(x, 1), 1);
  auto c = M.field().to_k(s.leading());
  if (!c) throw InvariantViolation("leading coefficient of phi_x is not a constant");
  return *c;
}

/// mu(xy) = mu(x) * mu(y)^{1/q^{ord_infty(x)}}, checked literally.
template <class F>
bool sign_relation_holds(const CarlitzModule<F>& M, const RatA& x, const RatA& y) {
  const auto& k = M.k();
  const KElem lhs = mu(M, x * y);
  const KElem rhs = k.mul(mu(M, x), k.frobenius(mu(M, y), -x.ord_infty()));
  return lhs == rhs;
}

template <class F>
struct IdealActionResult {
  TwistedPoly<F> phi_a;       // monic isogeny phi_{(w)}
  CarlitzModule<F> target;    // (w) * phi
  PolyA generator;            // w / lc(w), the generator with sign 1
};

/// phi_{(w)} computed twice: as the monic generator of the left ideal
/// generated by {phi_w, phi_{wt}}, and as mu(w)^{-1} phi_w.  The target
/// module is mu(w)^{-1} phi mu(w), and the isogeny relation
/// phi_a phi_t = (a*phi)_t phi_a is confirmed by right division.
template <class F>
IdealActionResult<F> ideal_action(const CarlitzModule<F>& M, const PolyA& w) {
  if (w.is_zero()) throw UsageError("the zero ideal has no action");
  const auto& L = M.field();
  const auto& Lp = M.field_ptr();
  const auto phi_w = M.phi(w);
  const auto by_ideal = left_ideal_generator<F>({phi_w, M.phi(w * PolyA::t(w.field()))});
  const auto mu_w = L.from_k(w.lc());
  const auto closed = phi_w.left_scale(L.inv(mu_w));
  if (!(by_ideal == closed)) throw InvariantViolation("ideal action: left-ideal generator differs from mu(w)^{-1} phi_w");
  const auto target_t = M.phi_t().left_scale(L.inv(mu_w)).right_scale(mu_w);
  if (target_t.degree() != 1 || !L.equal(target_t.lc(), L.one()))
    throw InvariantViolation("ideal action: target module is not normalized");
  CarlitzModule<F> target(Lp, target_t.constant_term());
  auto [quot, rem] = right_divide(closed * M.phi_t(), closed);
  if (!rem.is_zero() || !(quot == target.phi_t())) throw InvariantViolation("ideal action: isogeny relation fails");
  return {closed, target, w.monic()};
}

/// Reduction of the generic module over k(t) at a prime p.
inline CarlitzModule<ExtField> reduce_mod_p(const CarlitzModule<RatField>&, const PrimeA& p) {
  return CarlitzModule<ExtField>(p.residue_field(), p.tbar());
}

/// r_p applied coefficientwise to a twisted polynomial over k(t).
inline TwistedPoly<ExtField> reduce_twisted(const TwistedPoly<RatField>& f, const PrimeA& p) {
  return f.map(p.residue_field(), [&](const RatA& c) { return residue_embed(p, c); });
}

}  // namespace carlitz
