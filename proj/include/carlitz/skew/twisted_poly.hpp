#pragma once

// The twisted polynomial ring L[tau] with tau * a = a^q * tau.

#include <memory>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "carlitz/error.hpp"

namespace carlitz {

template <class F>
class TwistedPoly {
 public:
  using field_type = F;
  using value_type = typename F::value_type;

  TwistedPoly() = default;
  explicit TwistedPoly(std::shared_ptr<const F> f) : f_(std::move(f)) {}
  TwistedPoly(std::shared_ptr<const F> f, std::vector<value_type> c) : f_(std::move(f)), c_(std::move(c)) { trim(); }

  static TwistedPoly constant(std::shared_ptr<const F> f, value_type c) { return TwistedPoly(std::move(f), {std::move(c)}); }
  static TwistedPoly tau_power(std::shared_ptr<const F> f, std::size_t n) {
    std::vector<value_type> c(n + 1, f->zero());
    c[n] = f->one();
    return TwistedPoly(std::move(f), std::move(c));
  }

  const std::shared_ptr<const F>& field_ptr() const { return f_; }
  const F& field() const { return *f_; }
  const std::vector<value_type>& coeffs() const { return c_; }
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const value_type& lc() const {
    if (c_.empty()) throw UsageError("leading coefficient of zero");
    return c_.back();
  }
  /// The constant term, i.e. the derivative at 0 of the linearized polynomial.
  value_type constant_term() const { return c_.empty() ? f_->zero() : c_[0]; }
  value_type coeff(std::size_t i) const { return i < c_.size() ? c_[i] : f_->zero(); }

  TwistedPoly operator+(const TwistedPoly& o) const {
    check(o);
    std::vector<value_type> r(std::max(c_.size(), o.c_.size()), f_->zero());
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] = c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] = f_->add(r[i], o.c_[i]);
    return TwistedPoly(f_, std::move(r));
  }
  TwistedPoly operator-(const TwistedPoly& o) const {
    check(o);
    std::vector<value_type> r(std::max(c_.size(), o.c_.size()), f_->zero());
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] = c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] = f_->sub(r[i], o.c_[i]);
    return TwistedPoly(f_, std::move(r));
  }
  /// (sum a_i tau^i)(sum b_j tau^j) = sum a_i b_j^{q^i} tau^{i+j}.
  TwistedPoly operator*(const TwistedPoly& o) const {
    check(o);
    if (c_.empty() || o.c_.empty()) return TwistedPoly(f_);
    std::vector<value_type> r(c_.size() + o.c_.size() - 1, f_->zero());
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (f_->is_zero(c_[i])) continue;
      for (std::size_t j = 0; j < o.c_.size(); ++j) {
        if (f_->is_zero(o.c_[j])) continue;
        r[i + j] = f_->add(r[i + j], f_->mul(c_[i], f_->frobenius(o.c_[j], static_cast<long long>(i))));
      }
    }
    return TwistedPoly(f_, std::move(r));
  }
  /// Left multiplication by a scalar.
  TwistedPoly left_scale(const value_type& a) const {
    std::vector<value_type> r;
    r.reserve(c_.size());
    for (const auto& c : c_) r.push_back(f_->mul(a, c));
    return TwistedPoly(f_, std::move(r));
  }
  /// Right multiplication by a scalar: c_i tau^i a = c_i a^{q^i} tau^i.
  TwistedPoly right_scale(const value_type& a) const {
    std::vector<value_type> r;
    r.reserve(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) r.push_back(f_->mul(c_[i], f_->frobenius(a, static_cast<long long>(i))));
    return TwistedPoly(f_, std::move(r));
  }
  TwistedPoly monic() const {
    if (c_.empty()) throw UsageError("cannot normalize the zero twisted polynomial");
    return left_scale(f_->inv(c_.back()));
  }

  /// sum c_i x^{q^i}.
  value_type operator()(const value_type& x) const { return eval(*f_, x); }

  /// Evaluation at a point of an extension G; `map` sends coefficients into G.
  template <class G, class Map>
  typename G::value_type eval_in(const G& g, const typename G::value_type& x, Map map) const {
    auto r = g.zero();
    auto pw = x;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (!f_->is_zero(c_[i])) r = g.add(r, g.mul(map(c_[i]), pw));
      if (i + 1 < c_.size()) pw = g.frobenius(pw, 1);
    }
    return r;
  }

  /// Coefficientwise image under a ring map into another context.
  template <class G, class Map>
  TwistedPoly<G> map(std::shared_ptr<const G> g, Map fn) const {
    std::vector<typename G::value_type> r;
    r.reserve(c_.size());
    for (const auto& c : c_) r.push_back(fn(c));
    return TwistedPoly<G>(std::move(g), std::move(r));
  }

  void require_same_field(const TwistedPoly& o) const { check(o); }

  friend bool operator==(const TwistedPoly& a, const TwistedPoly& b) {
    if (a.c_.size() != b.c_.size()) return false;
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      if (!a.f_->equal(a.c_[i], b.c_[i])) return false;
    return true;
  }

  std::string to_string() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = c_.size(); i-- > 0;) {
      if (f_->is_zero(c_[i])) continue;
      if (!first) os << " + ";
      first = false;
      const std::string c = f_->format(c_[i]);
      const bool unit = f_->equal(c_[i], f_->one());
      if (i == 0) {
        os << c;
        continue;
      }
      if (!unit) os << '(' << c << ")*";
      os << "tau";
      if (i > 1) os << '^' << i;
    }
    return os.str();
  }

 private:
  template <class>
  friend class TwistedPoly;

  value_type eval(const F& f, const value_type& x) const {
    auto r = f.zero();
    auto pw = x;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (!f.is_zero(c_[i])) r = f.add(r, f.mul(c_[i], pw));
      if (i + 1 < c_.size()) pw = f.frobenius(pw, 1);
    }
    return r;
  }

  void check(const TwistedPoly& o) const {
    if (!f_ || !o.f_ || (f_ != o.f_ && !(*f_ == *o.f_))) throw UsageError("twisted polynomials over different coefficient fields");
  }
  void trim() {
    while (!c_.empty() && f_->is_zero(c_.back())) c_.pop_back();
  }

  std::shared_ptr<const F> f_;
  std::vector<value_type> c_;
};

/// f = Q * g + R with deg R < deg g (division on the right).
template <class F>
std::pair<TwistedPoly<F>, TwistedPoly<F>> right_divide(const TwistedPoly<F>& f, const TwistedPoly<F>& g) {
  if (g.is_zero()) throw ArithmeticError("right division by the zero twisted polynomial");
  const auto& L = f.field();
  const auto& fp = f.field_ptr();
  TwistedPoly<F> rem = f, quot(fp);
  f.require_same_field(g);
  const long m = g.degree();
  while (!rem.is_zero() && rem.degree() >= m) {
    const long shift = rem.degree() - m;
    // c tau^shift g has leading coefficient c * lc(g)^{q^shift}.
    const auto c = L.div(rem.lc(), L.frobenius(g.lc(), shift));
    std::vector<typename F::value_type> mono(static_cast<std::size_t>(shift) + 1, L.zero());
    mono.back() = c;
    TwistedPoly<F> term(fp, std::move(mono));
    quot = quot + term;
    rem = rem - term * g;
  }
  return {quot, rem};
}

/// Monic generator of the left ideal sum L[tau] g_i (right Euclid).
template <class F>
TwistedPoly<F> left_ideal_generator(const std::vector<TwistedPoly<F>>& gens) {
  TwistedPoly<F> acc;
  bool have = false;
  for (const auto& g : gens) {
    if (g.is_zero()) continue;
    if (!have) {
      acc = g;
      have = true;
      continue;
    }
    TwistedPoly<F> a = acc, b = g;
    if (a.degree() < b.degree()) std::swap(a, b);
    while (!b.is_zero()) {
      auto r = right_divide(a, b).second;
      a = std::move(b);
      b = std::move(r);
    }
    acc = std::move(a);
  }
  if (!have) throw UsageError("left ideal generated by zero elements only");
  return acc.monic();
}

}  // namespace carlitz
