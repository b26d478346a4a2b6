#pragma once

// Truncated skew Laurent series in tau^{-1}: sum_{j <= top} c_j tau^j with
// the coefficients of tau^top, ..., tau^{top-P+1} known.  The commutation
// rule tau^j a = a^{q^j} tau^j holds for negative j too, which needs q-th
// roots in the coefficient field.

#include <algorithm>
#include <limits>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "carlitz/error.hpp"
#include "carlitz/skew/twisted_poly.hpp"

namespace carlitz {

template <class F>
class SkewSeries {
 public:
  using value_type = typename F::value_type;
  static constexpr std::size_t kDefaultPrecision = 8;

  SkewSeries() = default;

  /// Coefficients listed from tau^top downward; leading zeros are stripped
  /// and each stripped zero costs one term of precision.
  SkewSeries(std::shared_ptr<const F> f, long top, std::vector<value_type> coeffs) : f_(std::move(f)), top_(top), c_(std::move(coeffs)) {
    low_ = top_ - static_cast<long>(c_.size()) + 1;
    normalize();
  }

  /// Zero known down to (and including) tau^low.
  static SkewSeries zero(std::shared_ptr<const F> f, long low) {
    SkewSeries s;
    s.f_ = std::move(f);
    s.low_ = low;
    s.top_ = low - 1;
    return s;
  }
  static SkewSeries one(std::shared_ptr<const F> f, std::size_t precision) { return monomial(f, f->one(), 0, precision); }
  static SkewSeries monomial(std::shared_ptr<const F> f, value_type c, long exp, std::size_t precision) {
    if (precision == 0) throw UsageError("precision must be >= 1");
    std::vector<value_type> v(precision, f->zero());
    v[0] = std::move(c);
    return SkewSeries(std::move(f), exp, std::move(v));
  }
  /// A twisted polynomial, keeping `precision` terms from its leading one.
  static SkewSeries from_poly(const TwistedPoly<F>& p, std::size_t precision) {
    if (p.is_zero()) return zero(p.field_ptr(), -static_cast<long>(precision));
    std::vector<value_type> v(precision, p.field().zero());
    const long d = p.degree();
    for (std::size_t i = 0; i < precision && d - static_cast<long>(i) >= 0; ++i) v[i] = p.coeffs()[static_cast<std::size_t>(d) - i];
    return SkewSeries(p.field_ptr(), d, std::move(v));
  }

  const F& field() const { return *f_; }
  const std::shared_ptr<const F>& field_ptr() const { return f_; }
  bool is_zero() const { return c_.empty(); }
  long top() const { return top_; }
  long low() const { return low_; }
  std::size_t precision() const { return c_.size(); }
  /// ord_{tau^{-1}} = -top; +infinity for the zero marker.
  long ord() const { return is_zero() ? std::numeric_limits<long>::max() : -top_; }
  const std::vector<value_type>& coeffs() const { return c_; }
  /// Coefficient of tau^j (zero above top; throws below the known range).
  value_type coeff(long j) const {
    if (j > top_) return f_->zero();
    if (j < low_) throw PrecisionError("coefficient of tau^" + std::to_string(j) + " is beyond the known precision");
    return c_[static_cast<std::size_t>(top_ - j)];
  }
  const value_type& leading() const {
    if (c_.empty()) throw UsageError("leading coefficient of a zero series");
    return c_[0];
  }

  SkewSeries truncate(std::size_t precision) const {
    if (precision >= c_.size()) return *this;
    return SkewSeries(f_, top_, std::vector<value_type>(c_.begin(), c_.begin() + static_cast<long>(precision)));
  }

  SkewSeries operator+(const SkewSeries& o) const { return combine(o, false); }
  SkewSeries operator-(const SkewSeries& o) const { return combine(o, true); }

  /// Result precision is min(P_a, P_b); ord adds.
  SkewSeries operator*(const SkewSeries& o) const {
    check(o);
    const auto& L = *f_;
    if (is_zero() || o.is_zero()) {
      // Known zero down to the lowest exponent either factor pins down.
      const long lo = is_zero() ? low_ + (o.is_zero() ? o.low_ : o.top_) : top_ + o.low_;
      return zero(f_, lo);
    }
    const std::size_t P = std::min(c_.size(), o.c_.size());
    std::vector<value_type> r(P, L.zero());
    for (std::size_t n = 0; n < P; ++n) {
      for (std::size_t i = 0; i <= n; ++i) {
        const auto& a = c_[i];
        const auto& b = o.c_[n - i];
        if (L.is_zero(a) || L.is_zero(b)) continue;
        const long shift = top_ - static_cast<long>(i);
        r[n] = L.add(r[n], L.mul(a, L.frobenius(b, shift)));
      }
    }
    return SkewSeries(f_, top_ + o.top_, std::move(r));
  }

  /// Two-sided inverse to the same precision.
  SkewSeries inverse() const {
    if constexpr (!F::is_perfect) {
      throw Unsupported("series inversion needs a perfect coefficient field");
    } else {
      if (is_zero()) throw ArithmeticError("inverse of a zero series");
      const auto& L = *f_;
      const long h = top_;
      const std::size_t P = c_.size();
      // Right inverse b with top -h: sum_{i+j=k} a_i b_j^{q^{h-i}} = delta_k.
      std::vector<value_type> b(P, L.zero());
      for (std::size_t k = 0; k < P; ++k) {
        auto rhs = k == 0 ? L.one() : L.zero();
        for (std::size_t i = 1; i <= k; ++i) {
          if (L.is_zero(c_[i]) || L.is_zero(b[k - i])) continue;
          rhs = L.sub(rhs, L.mul(c_[i], L.frobenius(b[k - i], h - static_cast<long>(i))));
        }
        b[k] = L.frobenius(L.div(rhs, c_[0]), -h);
      }
      return SkewSeries(f_, -h, std::move(b));
    }
  }

  /// Agreement on the common known range.
  bool agrees_with(const SkewSeries& o) const {
    const long lo = std::max(low_, o.low_);
    const long hi = std::max(top_, o.top_);
    for (long j = hi; j >= lo; --j)
      if (!f_->equal(coeff(j), o.coeff(j))) return false;
    return true;
  }
  /// True when every known coefficient is zero.
  bool is_zero_to_precision() const { return is_zero(); }

  std::string to_string() const {
    if (is_zero()) return "O(tau^" + std::to_string(low_) + ")";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (f_->is_zero(c_[i])) continue;
      if (!first) os << " + ";
      first = false;
      os << '(' << f_->format(c_[i]) << ")*tau^" << top_ - static_cast<long>(i);
    }
    os << " + O(tau^" << low_ - 1 << ")";
    return os.str();
  }

 private:
  void check(const SkewSeries& o) const {
    if (!f_ || !o.f_ || (f_ != o.f_ && !(*f_ == *o.f_))) throw UsageError("series over different coefficient fields");
  }

  void normalize() {
    std::size_t lead = 0;
    while (lead < c_.size() && f_->is_zero(c_[lead])) ++lead;
    if (lead == 0) return;
    c_.erase(c_.begin(), c_.begin() + static_cast<long>(lead));
    top_ -= static_cast<long>(lead);
    if (c_.empty()) top_ = low_ - 1;
  }

  SkewSeries combine(const SkewSeries& o, bool minus) const {
    check(o);
    const long lo = std::max(low_, o.low_);
    const long hi = std::max(top_, o.top_);
    if (hi < lo) return zero(f_, lo);
    std::vector<value_type> r;
    r.reserve(static_cast<std::size_t>(hi - lo + 1));
    for (long j = hi; j >= lo; --j) {
      const auto a = j > top_ ? f_->zero() : c_[static_cast<std::size_t>(top_ - j)];
      const auto b = j > o.top_ ? f_->zero() : o.c_[static_cast<std::size_t>(o.top_ - j)];
      r.push_back(minus ? f_->sub(a, b) : f_->add(a, b));
    }
    return SkewSeries(f_, hi, std::move(r));
  }

  std::shared_ptr<const F> f_;
  long top_ = -1;
  long low_ = 0;
  std::vector<value_type> c_;
};

}  // namespace carlitz
