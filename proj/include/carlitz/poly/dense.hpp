#pragma once

// Dense univariate polynomials over any field context F.
//
// A context exposes value_type, zero/one/add/sub/neg/mul/inv/is_zero/equal,
// frobenius(x, j) for x -> x^{q^j}, dimension() (degree over k), base()
// (the constant field Fq), from_k, random(rng) and pth_root.  Polynomials are
// little-endian coefficient vectors with no trailing zeros; the zero
// polynomial is the empty vector.

#include <algorithm>
#include <cstdint>
#include <random>
#include <tuple>
#include <utility>
#include <vector>

#include "carlitz/error.hpp"
#include "carlitz/field/fq.hpp"

namespace carlitz::poly {

template <class F>
using Poly = std::vector<typename F::value_type>;

template <class F>
void trim(const F& f, Poly<F>& a) {
  while (!a.empty() && f.is_zero(a.back())) a.pop_back();
}

template <class F>
long degree(const Poly<F>& a) {
  return static_cast<long>(a.size()) - 1;
}

template <class F>
bool equal(const F& f, const Poly<F>& a, const Poly<F>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!f.equal(a[i], b[i])) return false;
  return true;
}

template <class F>
Poly<F> constant(const F& f, typename F::value_type c) {
  Poly<F> r{std::move(c)};
  trim(f, r);
  return r;
}

template <class F>
Poly<F> x_power(const F& f, std::size_t n) {
  Poly<F> r(n + 1, f.zero());
  r[n] = f.one();
  return r;
}

template <class F>
Poly<F> add(const F& f, const Poly<F>& a, const Poly<F>& b) {
  Poly<F> r(std::max(a.size(), b.size()), f.zero());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = f.add(r[i], b[i]);
  trim(f, r);
  return r;
}

template <class F>
Poly<F> sub(const F& f, const Poly<F>& a, const Poly<F>& b) {
  Poly<F> r(std::max(a.size(), b.size()), f.zero());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = f.sub(r[i], b[i]);
  trim(f, r);
  return r;
}

template <class F>
Poly<F> scale(const F& f, const Poly<F>& a, const typename F::value_type& c) {
  Poly<F> r;
  r.reserve(a.size());
  for (const auto& x : a) r.push_back(f.mul(x, c));
  trim(f, r);
  return r;
}

template <class F>
Poly<F> mul(const F& f, const Poly<F>& a, const Poly<F>& b) {
  if (a.empty() || b.empty()) return {};
  Poly<F> r(a.size() + b.size() - 1, f.zero());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (f.is_zero(a[i])) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = f.add(r[i + j], f.mul(a[i], b[j]));
  }
  trim(f, r);
  return r;
}

/// a = Q*b + R with deg R < deg b.
template <class F>
std::pair<Poly<F>, Poly<F>> divmod(const F& f, Poly<F> a, const Poly<F>& b) {
  if (b.empty()) throw ArithmeticError("polynomial division by zero");
  if (a.size() < b.size()) return {Poly<F>{}, std::move(a)};
  const auto inv_lc = f.inv(b.back());
  Poly<F> q(a.size() - b.size() + 1, f.zero());
  for (std::size_t top = a.size(); top >= b.size(); --top) {
    const std::size_t i = top - 1;
    if (f.is_zero(a[i])) continue;
    const auto c = f.mul(a[i], inv_lc);
    const std::size_t shift = i - (b.size() - 1);
    q[shift] = c;
    for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] = f.sub(a[shift + j], f.mul(c, b[j]));
  }
  trim(f, q);
  trim(f, a);
  return {std::move(q), std::move(a)};
}

template <class F>
Poly<F> mod(const F& f, Poly<F> a, const Poly<F>& b) {
  return divmod(f, std::move(a), b).second;
}

/// Exact quotient; throws if b does not divide a.
template <class F>
Poly<F> exact_div(const F& f, Poly<F> a, const Poly<F>& b) {
  auto [q, r] = divmod(f, std::move(a), b);
  if (!r.empty()) throw ArithmeticError("inexact polynomial division");
  return q;
}

template <class F>
Poly<F> monic(const F& f, const Poly<F>& a) {
  if (a.empty()) return a;
  return scale(f, a, f.inv(a.back()));
}

template <class F>
Poly<F> gcd(const F& f, Poly<F> a, Poly<F> b) {
  while (!b.empty()) {
    auto r = mod(f, std::move(a), b);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(f, a);
}

/// Returns (g, s, u) with s*a + u*b = g, g monic (or zero when a = b = 0).
template <class F>
std::tuple<Poly<F>, Poly<F>, Poly<F>> xgcd(const F& f, Poly<F> a, Poly<F> b) {
  Poly<F> s0 = constant(f, f.one()), s1, u0, u1 = constant(f, f.one());
  while (!b.empty()) {
    auto [q, r] = divmod(f, a, b);
    a = std::move(b);
    b = std::move(r);
    auto s2 = sub(f, s0, mul(f, q, s1));
    auto u2 = sub(f, u0, mul(f, q, u1));
    s0 = std::move(s1);
    s1 = std::move(s2);
    u0 = std::move(u1);
    u1 = std::move(u2);
  }
  if (a.empty()) return {a, s0, u0};
  const auto c = f.inv(a.back());
  return {scale(f, a, c), scale(f, s0, c), scale(f, u0, c)};
}

template <class F>
Poly<F> mulmod(const F& f, const Poly<F>& a, const Poly<F>& b, const Poly<F>& m) {
  return mod(f, mul(f, a, b), m);
}

template <class F>
Poly<F> powmod(const F& f, Poly<F> a, std::uint64_t e, const Poly<F>& m) {
  Poly<F> r = mod(f, constant(f, f.one()), m);
  a = mod(f, std::move(a), m);
  while (e) {
    if (e & 1) r = mulmod(f, r, a, m);
    e >>= 1;
    if (e) a = mulmod(f, a, a, m);
  }
  return r;
}

/// g -> g^{|F|} mod m, as dimension() successive q-th powers.
template <class F>
Poly<F> frobenius_mod(const F& f, Poly<F> g, const Poly<F>& m) {
  const unsigned q = f.base().q();
  for (unsigned i = 0; i < f.dimension(); ++i) g = powmod(f, std::move(g), q, m);
  return g;
}

template <class F>
Poly<F> derivative(const F& f, const Poly<F>& a) {
  if (a.size() <= 1) return {};
  Poly<F> r(a.size() - 1, f.zero());
  for (std::size_t i = 1; i < a.size(); ++i) {
    auto c = f.zero();
    const std::size_t times = i % f.base().p();
    for (std::size_t j = 0; j < times; ++j) c = f.add(c, a[i]);
    r[i - 1] = c;
  }
  trim(f, r);
  return r;
}

template <class F>
typename F::value_type eval(const F& f, const Poly<F>& a, const typename F::value_type& x) {
  auto r = f.zero();
  for (std::size_t i = a.size(); i-- > 0;) r = f.add(f.mul(r, x), a[i]);
  return r;
}

template <class F>
bool less(const F& f, const Poly<F>& a, const Poly<F>& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (f.less(a[i], b[i])) return true;
    if (f.less(b[i], a[i])) return false;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Factorization

namespace detail {

template <class F>
Poly<F> pth_root_poly(const F& f, const Poly<F>& a) {
  const unsigned p = f.base().p();
  Poly<F> r((a.size() - 1) / p + 1, f.zero());
  for (std::size_t i = 0; i < a.size(); i += p) r[i / p] = f.pth_root(a[i]);
  trim(f, r);
  return r;
}

template <class F>
bool is_one(const Poly<F>& a, const F& f) {
  return a.size() == 1 && f.equal(a[0], f.one());
}

template <class F, class Rng>
Poly<F> random_poly(const F& f, std::size_t n, Rng& rng) {
  Poly<F> r;
  r.reserve(n);
  for (std::size_t i = 0; i < n; ++i) r.push_back(f.random(rng));
  trim(f, r);
  return r;
}

}  // namespace detail

/// Squarefree decomposition of a monic polynomial: pairs (g_i, i) with
/// a = prod g_i^i and each g_i squarefree, coprime, non-constant.
template <class F>
std::vector<std::pair<Poly<F>, int>> squarefree(const F& f, const Poly<F>& a) {
  std::vector<std::pair<Poly<F>, int>> out;
  if (a.size() <= 1) return out;
  const auto da = derivative(f, a);
  if (da.empty()) {
    for (auto& [g, m] : squarefree(f, detail::pth_root_poly(f, a))) out.emplace_back(std::move(g), m * static_cast<int>(f.base().p()));
    return out;
  }
  auto c = gcd(f, a, da);
  auto w = exact_div(f, a, c);
  int i = 1;
  while (!detail::is_one(w, f)) {
    auto y = gcd(f, w, c);
    auto z = exact_div(f, w, y);
    if (z.size() > 1) out.emplace_back(std::move(z), i);
    ++i;
    c = exact_div(f, c, y);
    w = std::move(y);
  }
  if (c.size() > 1) {
    for (auto& [g, m] : squarefree(f, detail::pth_root_poly(f, c))) out.emplace_back(std::move(g), m * static_cast<int>(f.base().p()));
  }
  return out;
}

/// Distinct-degree factorization of a monic squarefree polynomial:
/// pairs (product of all irreducible factors of degree d, d).
template <class F>
std::vector<std::pair<Poly<F>, int>> ddf(const F& f, const Poly<F>& a) {
  std::vector<std::pair<Poly<F>, int>> out;
  Poly<F> rest = a;
  const Poly<F> x = x_power(f, 1);
  Poly<F> h = mod(f, x, rest);
  int d = 1;
  while (degree<F>(rest) >= 2 * d) {
    h = frobenius_mod(f, std::move(h), rest);
    auto g = gcd(f, rest, sub(f, h, x));
    if (g.size() > 1) {
      rest = exact_div(f, rest, g);
      h = mod(f, std::move(h), rest);
      out.emplace_back(std::move(g), d);
    }
    ++d;
  }
  if (rest.size() > 1) out.emplace_back(rest, static_cast<int>(degree<F>(rest)));
  return out;
}

/// Splits a monic squarefree product of irreducibles of degree d using the
/// trace to k: every factor sees Tr(r) as a constant of k, and different
/// factors generally see different constants.
template <class F, class Rng>
std::vector<Poly<F>> edf(const F& f, const Poly<F>& a, int d, Rng& rng) {
  if (degree<F>(a) <= d) return {a};
  const auto& k = f.base();
  const unsigned steps = f.dimension() * static_cast<unsigned>(d);
  for (int attempt = 0; attempt < 256; ++attempt) {
    auto r = detail::random_poly(f, a.size() - 1, rng);
    if (r.size() <= 1) continue;
    Poly<F> tr = r, cur = r;
    for (unsigned i = 1; i < steps; ++i) {
      cur = powmod(f, cur, k.q(), a);
      tr = add(f, tr, cur);
    }
    std::vector<Poly<F>> parts;
    for (unsigned c = 0; c < k.q(); ++c) {
      auto shifted = sub(f, tr, constant(f, f.from_k(k.element(c))));
      auto g = gcd(f, a, shifted);
      if (g.size() > 1) parts.push_back(std::move(g));
    }
    if (parts.size() < 2) continue;
    std::vector<Poly<F>> out;
    for (auto& part : parts)
      for (auto& g : edf(f, part, d, rng)) out.push_back(std::move(g));
    return out;
  }
  throw InvariantViolation("equal-degree splitting did not converge");
}

/// Full factorization of a nonzero polynomial into monic irreducibles,
/// sorted by (degree, lexicographic); the leading coefficient is dropped.
template <class F, class Rng>
std::vector<std::pair<Poly<F>, int>> factor(const F& f, const Poly<F>& a, Rng& rng) {
  if (a.empty()) throw UsageError("cannot factor the zero polynomial");
  std::vector<std::pair<Poly<F>, int>> out;
  for (auto& [g, mult] : squarefree(f, monic(f, a)))
    for (auto& [h, d] : ddf(f, g))
      for (auto& irr : edf(f, h, d, rng)) out.emplace_back(std::move(irr), mult);
  std::sort(out.begin(), out.end(), [&](const auto& x, const auto& y) {
    if (less(f, x.first, y.first)) return true;
    if (less(f, y.first, x.first)) return false;
    return x.second < y.second;
  });
  return out;
}

/// Roots in F, sorted by the field order.
template <class F, class Rng>
std::vector<typename F::value_type> roots(const F& f, const Poly<F>& a, Rng& rng) {
  std::vector<typename F::value_type> out;
  if (a.empty()) throw UsageError("the zero polynomial has every element as a root");
  if (a.size() == 1) return out;
  const auto m = monic(f, a);
  const Poly<F> x = x_power(f, 1);
  auto h = frobenius_mod(f, mod(f, x, m), m);
  auto lin = gcd(f, m, sub(f, h, x));
  if (lin.size() > 1)
    for (auto& g : edf(f, lin, 1, rng)) out.push_back(f.neg(g[0]));
  std::sort(out.begin(), out.end(), [&](const auto& u, const auto& v) { return f.less(u, v); });
  return out;
}

/// Ben-Or style irreducibility test.
template <class F>
bool is_irreducible(const F& f, const Poly<F>& a) {
  const long n = degree<F>(a);
  if (n < 1) return false;
  if (n == 1) return true;
  const auto m = monic(f, a);
  const Poly<F> x = x_power(f, 1);
  Poly<F> h = x;
  for (long i = 1; i <= n / 2; ++i) {
    h = frobenius_mod(f, std::move(h), m);
    if (gcd(f, m, sub(f, h, x)).size() > 1) return false;
  }
  return true;
}

}  // namespace carlitz::poly
