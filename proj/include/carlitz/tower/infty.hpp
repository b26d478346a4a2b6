#pragma once

// The place at infinity: the series u = sum a_i tau^{-i} with phi_t u = u tau,
// Frobenius elements acting on the tower through residue realizations, and
// rho_infty(Frob_p) as a class in F_infty^+ / (1 + m_infty^e).

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <tuple>
#include <vector>

#include "carlitz/drinfeld/carlitz_module.hpp"
#include "carlitz/error.hpp"
#include "carlitz/field/extension.hpp"
#include "carlitz/linalg.hpp"
#include "carlitz/poly/poly_a.hpp"
#include "carlitz/skew/skew_series.hpp"
#include "carlitz/tower/tower_field.hpp"

namespace carlitz {

/// The tower of the given depth (memoized, so caches are shared).
inline TowerPtr build_tower(const FqPtr& k, unsigned depth, unsigned cap = TowerField::kDefaultCap) {
  if (depth > cap) throw UsageError("tower depth " + std::to_string(depth) + " exceeds the cap " + std::to_string(cap));
  using Key = std::tuple<unsigned, std::vector<unsigned>, unsigned>;
  static std::mutex mu;
  static std::map<Key, TowerPtr> memo;
  const Key key{k->p(), k->modulus(), depth};
  std::lock_guard<std::mutex> lock(mu);
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  return memo.emplace(key, TowerField::make(k, depth)).first->second;
}

/// u = sum_{i < P} a_i tau^{-i}; needs depth >= P - 1.
inline SkewSeries<TowerField> series_u(const TowerPtr& T, std::size_t P) {
  if (P == 0) throw UsageError("precision must be >= 1");
  if (T->depth() + 1 < P) throw PrecisionError("u to precision " + std::to_string(P) + " needs tower depth " + std::to_string(P - 1));
  std::vector<TowerField::value_type> c;
  for (std::size_t i = 0; i < P; ++i) c.push_back(T->generator(static_cast<unsigned>(i)));
  return SkewSeries<TowerField>(T, 0, std::move(c));
}

/// phi_t u = u tau to precision P, multiplied out in the tower.
inline bool u_identity_holds(const TowerPtr& T, std::size_t P) {
  const auto M = CarlitzModule<TowerField>::generic(T);
  const auto u = series_u(T, P);
  const auto lhs = SkewSeries<TowerField>::from_poly(M.phi_t(), P) * u;
  const auto rhs = u * SkewSeries<TowerField>::monomial(T, T->one(), 1, P);
  return lhs.top() == rhs.top() && lhs.precision() == P && lhs.agrees_with(rhs);
}

// ---------------------------------------------------------------------------
// Residue realizations

/// Roots alpha_0 = 1, alpha_1, ... of the tower relations over k[t]/(p),
/// all in one finite field.  At each level the branch-th smallest root is
/// taken; a missing root triggers an extension of degree p.
struct ResidueTower {
  PrimeA prime;
  ExtPtr field;
  ExtField::value_type tbar;
  std::vector<ExtField::value_type> alpha;
  unsigned branch = 0;
};

namespace detail {

inline void move_to(ResidueTower& R, unsigned degree) {
  auto big = ExtField::canonical(R.field->k_ptr(), degree);
  auto emb = Embedding::make(R.field, big, 0);
  R.tbar = emb(R.tbar);
  for (auto& a : R.alpha) a = emb(a);
  R.field = big;
}

}  // namespace detail

inline ResidueTower residue_tower(const PrimeA& p, unsigned depth, unsigned branch = 0) {
  ResidueTower R{p, p.residue_field(), p.tbar(), {}, branch};
  if (branch >= p.poly().k().q()) throw UsageError("root branch out of range");
  R.alpha.push_back(R.field->one());
  for (unsigned i = 1; i <= depth; ++i) {
    const auto& E0 = *R.field;
    const auto c = E0.neg(E0.mul(R.tbar, R.alpha.back()));
    auto r = as_root(E0, c);
    if (!r.solvable()) {
      detail::move_to(R, r.extension_degree);
      const auto& E = *R.field;
      r = as_root(E, E.neg(E.mul(R.tbar, R.alpha.back())));
      if (!r.solvable()) throw InvariantViolation("Artin-Schreier root missing after extension");
    }
    R.alpha.push_back(r.roots[branch]);
  }
  return R;
}

/// Image of a tower element under a_i -> alpha_i (coefficients must be
/// regular at p).
inline ExtField::value_type reduce_tower_element(const TowerField& T, const TowerField::value_type& x, const ResidueTower& R) {
  const auto& E = *R.field;
  if (T.depth() + 1 > R.alpha.size()) throw UsageError("residue tower too shallow");
  auto eval = [&](const PolyA& f) {
    auto r = E.zero();
    for (std::size_t i = f.coeffs().size(); i-- > 0;) r = E.add(E.mul(r, R.tbar), E.from_k(f.coeffs()[i]));
    return r;
  };
  auto r = E.zero();
  for (const auto& [m, c] : x) {
    auto den = eval(c.den());
    if (E.is_zero(den)) throw DomainError(c.to_string() + " has a pole at " + R.prime.to_string());
    auto term = E.div(eval(c.num()), den);
    const auto e = T.exponents(m);
    for (unsigned i = 0; i < T.depth(); ++i)
      if (e[i]) term = E.mul(term, E.pow(R.alpha[i + 1], e[i]));
    r = E.add(r, term);
  }
  return r;
}

/// Frob_p on L_depth, read off from alpha_i -> alpha_i^{N(p)}:
/// c_i = alpha_i^{N(p)} - alpha_i - sum_{j<i} c_j alpha_{i-j}.
inline TowerAutomorphism frobenius_on_tower(const PrimeA& p, unsigned depth, unsigned branch = 0, bool verify = true) {
  const auto R = residue_tower(p, depth, branch);
  const auto& E = *R.field;
  const auto& kp = p.poly().field();
  std::vector<KElem> c;
  for (unsigned i = 1; i <= depth; ++i) {
    auto x = E.sub(E.frobenius(R.alpha[i], p.degree()), R.alpha[i]);
    for (unsigned j = 1; j < i; ++j) x = E.sub(x, E.scale(R.alpha[i - j], c[j - 1]));
    auto ci = E.to_k(x);
    if (!ci) throw InvariantViolation("Frobenius cocycle at level " + std::to_string(i) + " is not a constant");
    c.push_back(*ci);
  }
  TowerAutomorphism sigma(kp, std::move(c));
  if (verify && !sigma.preserves_relations(*build_tower(kp, depth, depth)))
    throw InvariantViolation("recovered automorphism does not preserve the tower relations");
  return sigma;
}

// ---------------------------------------------------------------------------
// rho_infty

/// A class in F_infty^+ modulo 1 + m_infty^e: t^{deg} (1 + d_1 t^{-1} + ...),
/// stored with its e leading digits.
struct InftyClass {
  unsigned deg = 0;
  LaurentT value;

  std::vector<KElem> digits() const { return value.digits(); }
  friend bool operator==(const InftyClass& a, const InftyClass& b) { return a.deg == b.deg && a.value == b.value; }
  std::string to_string() const { return value.to_string(); }
};

/// The class of a monic polynomial (or any positive element) to e digits.
inline InftyClass infty_class_of(const PolyA& a, unsigned e) {
  if (!a.is_monic()) throw UsageError("only monic elements lie in F_infty^+");
  return {static_cast<unsigned>(a.degree()), LaurentT::from_poly(a, std::max(1u, e))};
}

namespace detail {

// phi_{t^j} u over the tower, to precision P; cached per (tower, j, P).
inline const SkewSeries<TowerField>& phi_power_times_u(const TowerPtr& T, long j, std::size_t P) {
  using Key = std::tuple<const TowerField*, long, std::size_t>;
  static std::mutex mu;
  static std::map<Key, SkewSeries<TowerField>> memo;
  const Key key{T.get(), j, P};
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
  }
  const auto M = CarlitzModule<TowerField>::generic(T);
  auto phi = M.phi(PolyA::t(T->k_ptr()).pow(static_cast<std::uint64_t>(j)));
  auto s = SkewSeries<TowerField>::from_poly(phi, P) * series_u(T, P);
  // phi_{t^j} u = u tau^j: the coefficient of tau^n is a_{j-n}.
  for (long n = j; n > j - static_cast<long>(P); --n)
    if (!T->equal(s.coeff(n), T->generator(static_cast<unsigned>(j - n))))
      throw InvariantViolation("phi_{t^" + std::to_string(j) + "} u differs from u tau^" + std::to_string(j));
  std::lock_guard<std::mutex> lock(mu);
  return memo.emplace(key, std::move(s)).first->second;
}

// Appends the k-linear equations expressing sum_j x_j lhs[j] = rhs, by
// clearing denominators and comparing t-coefficients in each coordinate.
inline void append_equations(const TowerField& T, const std::vector<TowerField::value_type>& lhs, const TowerField::value_type& rhs,
                             linalg::Matrix<Fq>& A, linalg::Vec<Fq>& b) {
  std::vector<std::uint32_t> support;
  for (const auto& x : lhs)
    for (const auto& [m, c] : x) support.push_back(m);
  for (const auto& [m, c] : rhs) support.push_back(m);
  std::sort(support.begin(), support.end());
  support.erase(std::unique(support.begin(), support.end()), support.end());
  for (auto m : support) {
    auto coeff = [&](const TowerField::value_type& x) {
      auto it = x.find(m);
      return it == x.end() ? RatA::zero(T.k_ptr()) : it->second;
    };
    PolyA L = PolyA::one(T.k_ptr());
    for (const auto& x : lhs) L = L * (coeff(x).den() / gcd(L, coeff(x).den()));
    L = L * (coeff(rhs).den() / gcd(L, coeff(rhs).den()));
    std::vector<PolyA> cols;
    std::size_t len = 0;
    for (const auto& x : lhs) {
      cols.push_back((coeff(x) * RatA(L)).num());
      len = std::max(len, cols.back().coeffs().size());
    }
    const PolyA r = (coeff(rhs) * RatA(L)).num();
    len = std::max(len, r.coeffs().size());
    for (std::size_t i = 0; i < len; ++i) {
      linalg::Vec<Fq> row;
      for (const auto& c : cols) row.push_back(c.coeff(i));
      A.push_back(std::move(row));
      b.push_back(r.coeff(i));
    }
  }
}

}  // namespace detail

/// rho_infty(Frob_p) modulo 1 + m_infty^e.  With D = deg p + e - 1, the monic
/// h of degree D solving phi_h u = phi_{t^{e-1}} sigma(u) tau^{deg p} to
/// precision e is found by k-linear algebra; the class is h t^{-(e-1)}.
inline InftyClass rho_infty_frobenius(const PrimeA& p, unsigned e, unsigned branch = 0, unsigned cap = TowerField::kDefaultCap) {
  const unsigned P = std::max(1u, e);
  if (P - 1 > cap) throw UsageError("precision " + std::to_string(P) + " needs tower depth beyond the cap " + std::to_string(cap));
  const auto& kp = p.poly().field();
  const auto& k = *kp;
  const long d = p.degree();
  const long D = d + static_cast<long>(P) - 1;
  const auto T = build_tower(kp, P - 1, cap);
  const auto sigma = frobenius_on_tower(p, P - 1, branch);

  // Unknowns h_d .. h_{D-1}; equations at tau^n for n = d .. D.
  const std::size_t unknowns = P - 1;
  linalg::Matrix<Fq> A;
  linalg::Vec<Fq> b;
  const auto& SD = detail::phi_power_times_u(T, D, P);
  for (long n = d; n <= D; ++n) {
    std::vector<TowerField::value_type> lhs(unknowns, T->zero());
    for (long j = std::max(n, d); j < D; ++j) lhs[static_cast<std::size_t>(j - d)] = detail::phi_power_times_u(T, j, P).coeff(n);
    const auto rhs = T->sub(sigma.apply(*T, T->generator(static_cast<unsigned>(D - n))), SD.coeff(n));
    detail::append_equations(*T, lhs, rhs, A, b);
  }
  std::vector<KElem> h(unknowns, k.zero());
  if (unknowns) {
    for (auto& row : A) row.resize(unknowns, k.zero());
    linalg::SolveInfo info;
    auto sol = linalg::solve(k, A, b, &info);
    if (!sol) throw InvariantViolation("rho_infty: inconsistent system at " + p.to_string());
    if (!info.unique()) throw InvariantViolation("rho_infty: singular system at " + p.to_string());
    h = *sol;
  }
  std::vector<KElem> digits{k.one()};
  for (std::size_t i = unknowns; i-- > 0;) digits.push_back(h[i]);
  return {static_cast<unsigned>(d), LaurentT(kp, -d, std::move(digits))};
}

/// beta = rho t^{-deg}, an element of 1 + m_infty.
inline LaurentT beta_deg(const InftyClass& rho) {
  if (rho.value.is_zero() || rho.value.ord() != -static_cast<long>(rho.deg))
    throw UsageError("valuation of the class does not match its degree");
  if (rho.value.sign() != rho.value.field()->one()) throw UsageError("class is not in F_infty^+");
  return LaurentT(rho.value.field(), 0, rho.value.digits());
}

// ---------------------------------------------------------------------------
// u for a general monic y, in residue realizations only

/// Coefficients a_0 = 1, a_1, ... of u_y with phi_y u_y = u_y tau^{deg y},
/// reduced at p: a_n^{q^h} - a_n = -sum_{j<h} b_j a_{n+j-h}^{q^j}, where
/// phi_y = sum b_j tau^j.
struct ResidueSeriesU {
  PrimeA prime;
  PolyA y;
  ExtPtr field;
  ExtField::value_type tbar;
  std::vector<ExtField::value_type> a;
};

inline ResidueSeriesU residue_series_u(const PrimeA& p, const PolyA& y, std::size_t P, unsigned branch = 0) {
  if (!y.is_monic() || y.degree() < 1) throw UsageError("y must be monic of positive degree");
  const unsigned h = static_cast<unsigned>(y.degree());
  ResidueSeriesU out{p, y, p.residue_field(), p.tbar(), {}};
  out.a.push_back(out.field->one());
  auto coeffs = [&] {
    const CarlitzModule<ExtField> M(out.field, out.tbar);
    return M.phi(y).coeffs();
  };
  auto b = coeffs();
  for (std::size_t n = 1; n < P; ++n) {
    auto rhs = [&] {
      const auto& E = *out.field;
      auto c = E.zero();
      for (unsigned j = 0; j < h; ++j) {
        const long idx = static_cast<long>(n) + j - h;
        if (idx < 0) continue;
        c = E.sub(c, E.mul(b[j], E.frobenius(out.a[static_cast<std::size_t>(idx)], j)));
      }
      return c;
    };
    auto c = rhs();
    auto sol = solve_frobenius_shift(*out.field, h, c);
    if (!sol.solvable) {
      const unsigned deg = frobenius_shift_extension_degree(out.field, h, c);
      auto big = ExtField::canonical(out.field->k_ptr(), deg);
      auto emb = Embedding::make(out.field, big, 0);
      out.tbar = emb(out.tbar);
      for (auto& x : out.a) x = emb(x);
      out.field = big;
      b = coeffs();
      c = rhs();
      sol = solve_frobenius_shift(*out.field, h, c);
      if (!sol.solvable) throw InvariantViolation("Artin-Schreier root missing after extension");
    }
    const auto roots = enumerate_solutions(*out.field, sol);
    if (branch >= roots.size()) throw UsageError("root branch out of range");
    out.a.push_back(roots[branch]);
  }
  return out;
}

/// phi_y u = u tau^{deg y} over the residue realization.
inline bool residue_u_identity_holds(const ResidueSeriesU& r) {
  const std::size_t P = r.a.size();
  const CarlitzModule<ExtField> M(r.field, r.tbar);
  const SkewSeries<ExtField> u(r.field, 0, r.a);
  const auto lhs = SkewSeries<ExtField>::from_poly(M.phi(r.y), P) * u;
  const auto rhs = u * SkewSeries<ExtField>::monomial(r.field, r.field->one(), r.y.degree(), P);
  return lhs.agrees_with(rhs) && lhs.precision() == P;
}

}  // namespace carlitz
