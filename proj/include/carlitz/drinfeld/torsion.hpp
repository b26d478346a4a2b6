#pragma once

// Torsion of the Carlitz module at finite level: phi[m] realized in the
// reduction at a prime p not dividing m, the character chi_m at Frob_p, and
// the polynomials phi_m(X)/X and Psi_m(X) over A.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "carlitz/drinfeld/carlitz_module.hpp"
#include "carlitz/error.hpp"
#include "carlitz/field/extension.hpp"
#include "carlitz/field/rational_field.hpp"
#include "carlitz/linalg.hpp"
#include "carlitz/poly/dense.hpp"
#include "carlitz/poly/poly_a.hpp"

namespace carlitz {

inline constexpr unsigned kMaxSplittingDegree = 24;

struct TorsionRealization {
  PrimeA prime;
  PolyA m;
  unsigned s = 1;                             // [E : k[t]/(p)]
  ExtPtr field;                               // E, of degree deg(p) * s over k
  ExtField::value_type tbar;                  // image of t in E
  std::vector<ExtField::value_type> roots;    // phi_m-bar(X) = 0, sorted
  ExtField::value_type xi;                    // annihilator exactly (m)

  CarlitzModule<ExtField> module() const { return CarlitzModule<ExtField>(field, tbar); }
};

namespace detail {

// phi_m-bar(X) / X as an ordinary polynomial over the residue field.
inline poly::Poly<ExtField> torsion_quotient(const CarlitzModule<ExtField>& M, const PolyA& m) {
  const auto tw = M.phi(m);
  const auto& R = M.field();
  const std::uint64_t q = M.k().q();
  poly::Poly<ExtField> f;
  std::uint64_t qi = 1;
  for (std::size_t i = 0; i < tw.coeffs().size(); ++i, qi *= q) {
    if (f.size() < qi) f.resize(qi, R.zero());
    f[qi - 1] = tw.coeffs()[i];
  }
  poly::trim(R, f);
  return f;
}

inline std::vector<PolyA> prime_divisors(const PolyA& m) {
  std::vector<PolyA> out;
  if (m.degree() < 1) return out;
  for (const auto& [f, e] : factor_poly(m)) out.push_back(f);
  return out;
}

}  // namespace detail

/// lcm of the degrees of the irreducible factors of phi_m-bar(X)/X over k[t]/(p).
inline unsigned splitting_degree(const PrimeA& p, const PolyA& m) {
  if (m.degree() < 1) return 1;
  const CarlitzModule<ExtField> M(p.residue_field(), p.tbar());
  auto f = detail::torsion_quotient(M, m);
  unsigned s = 1;
  for (const auto& [g, d] : poly::ddf(*p.residue_field(), f)) s = std::lcm(s, static_cast<unsigned>(d));
  return s;
}

inline TorsionRealization torsion_space(const PrimeA& p, const PolyA& m) {
  if (!m.is_monic()) throw UsageError("modulus must be monic");
  if (p.poly().divides(m)) throw DomainError("bad pair: " + p.to_string() + " divides " + m.to_string());
  const auto& kp = p.poly().field();
  const unsigned s = splitting_degree(p, m);
  if (s > kMaxSplittingDegree) throw Unsupported("splitting field of degree " + std::to_string(s) + " over the residue field exceeds the cap");
  TorsionRealization T{p, m, s, {}, {}, {}, {}};
  if (s == 1) {
    T.field = p.residue_field();
    T.tbar = p.tbar();
  } else {
    T.field = ExtField::canonical(kp, p.degree() * s);
    T.tbar = Embedding::make(p.residue_field(), T.field, 0)(p.tbar());
  }
  const auto& E = *T.field;
  const auto M = T.module();
  const auto phi_m = M.phi(m);

  // The kernel of the k-linear map x -> phi_m(x) on E.
  std::vector<ExtField::value_type> images;
  for (unsigned i = 0; i < E.degree(); ++i) images.push_back(phi_m(E.basis(i)));
  const auto basis = linalg::kernel(E.base(), E.matrix_of(images), E.degree());
  if (static_cast<long>(basis.size()) != m.degree())
    throw InvariantViolation("phi[" + m.to_string() + "] has k-dimension " + std::to_string(basis.size()) + " at " + p.to_string());
  FrobeniusShiftSolution kern{true, E.zero(), basis};
  T.roots = enumerate_solutions(E, kern, 1u << 20);

  std::vector<TwistedPoly<ExtField>> killers;
  for (const auto& l : detail::prime_divisors(m)) killers.push_back(M.phi(m / l));
  for (const auto& x : T.roots) {
    if (E.is_zero(x)) continue;
    bool exact = true;
    for (const auto& g : killers)
      if (E.is_zero(g(x))) exact = false;
    if (exact) {
      T.xi = x;
      return T;
    }
  }
  if (m.degree() == 0) {
    T.xi = E.zero();
    return T;
  }
  throw InvariantViolation("no generator of phi[" + m.to_string() + "] at " + p.to_string());
}

/// a -> phi_a(xi) is injective on A/m (checked on all residues).
inline bool torsion_is_cyclic(const TorsionRealization& T) {
  if (T.m.degree() < 1) return true;
  const auto M = T.module();
  const auto& E = *T.field;
  std::vector<ExtField::value_type> seen;
  const auto& k = T.m.k();
  std::vector<std::size_t> digit(static_cast<std::size_t>(T.m.degree()), 0);
  while (true) {
    KPoly c;
    for (auto d : digit) c.push_back(k.by_rank(d));
    seen.push_back(M.phi(PolyA(T.m.field(), c))(T.xi));
    std::size_t i = 0;
    for (; i < digit.size(); ++i) {
      if (++digit[i] < k.q()) break;
      digit[i] = 0;
    }
    if (i == digit.size()) break;
  }
  std::sort(seen.begin(), seen.end(), [&](const auto& a, const auto& b) { return E.less(a, b); });
  return std::adjacent_find(seen.begin(), seen.end()) == seen.end() && seen.size() == T.roots.size();
}

/// chi_m(Frob_p): the residue a mod m with xi^{N(p)} = phi_a(xi).
inline PolyA chi_frobenius(const TorsionRealization& T) {
  const auto& kp = T.m.field();
  if (T.m.degree() < 1) return PolyA(kp);
  const auto& E = *T.field;
  const auto M = T.module();
  const long n = T.m.degree();
  std::vector<ExtField::value_type> cols;
  for (long i = 0; i < n; ++i) cols.push_back(M.phi(PolyA::t(kp).pow(static_cast<std::uint64_t>(i)))(T.xi));
  const auto target = E.frobenius(T.xi, T.prime.degree());
  linalg::Matrix<Fq> A(E.degree(), linalg::Vec<Fq>(static_cast<std::size_t>(n)));
  for (unsigned r = 0; r < E.degree(); ++r)
    for (long i = 0; i < n; ++i) A[r][static_cast<std::size_t>(i)] = cols[static_cast<std::size_t>(i)][r];
  linalg::SolveInfo info;
  auto sol = linalg::solve(E.base(), A, target, &info);
  if (!sol) throw InvariantViolation("chi: xi^N(p) is not in A xi at " + T.prime.to_string());
  if (!info.unique()) throw InvariantViolation("chi: solution not unique at " + T.prime.to_string());
  PolyA a(kp, KPoly(sol->begin(), sol->end()));
  if (!gcd(a, T.m).is_one()) throw InvariantViolation("chi: value " + a.to_string() + " is not a unit mod " + T.m.to_string());
  return a;
}

inline PolyA chi_frobenius(const PrimeA& p, const PolyA& m) { return chi_frobenius(torsion_space(p, m)); }

struct SplittingDegrees {
  unsigned s_factored = 1;
  std::uint64_t s_group = 1;
  bool agree() const { return s_factored == s_group; }
};

inline SplittingDegrees splitting_degree_law(const PrimeA& p, const PolyA& m) {
  if (p.poly().divides(m)) throw DomainError("bad pair: " + p.to_string() + " divides " + m.to_string());
  if (m.degree() < 1) return {};
  const UnitGroupModM G(m);
  return {splitting_degree(p, m), G.order_of(G.reduce(p.poly()))};
}

// ---------------------------------------------------------------------------
// Polynomials over A

using APoly = poly::Poly<RatField>;

/// phi_a(X) = sum c_i X^{q^i} as an ordinary polynomial over A.
inline APoly phi_polynomial(const PolyA& a) {
  auto F = RatField::make(a.field());
  const auto tw = CarlitzModule<RatField>::generic(F).phi(a);
  APoly f;
  std::uint64_t qi = 1;
  for (std::size_t i = 0; i < tw.coeffs().size(); ++i, qi *= a.k().q()) {
    if (f.size() < qi + 1) f.resize(qi + 1, F->zero());
    f[qi] = tw.coeffs()[i];
  }
  poly::trim(*F, f);
  return f;
}

struct EisensteinCertificate {
  PolyA prime;
  std::vector<PolyA> coeffs;  // of X^{q^i - 1} in phi_p(X)/X, i = 0..d
  bool leading_is_one = false;
  bool lower_divisible = false;
  bool constant_is_prime = false;
  bool holds() const { return leading_is_one && lower_divisible && constant_is_prime; }
};

/// phi_p(X)/X is Eisenstein at p: monic, p divides the lower coefficients,
/// and the constant term is exactly p.
inline EisensteinCertificate cyclotomic_check(const PolyA& p) {
  auto F = RatField::make(p.field());
  const auto tw = CarlitzModule<RatField>::generic(F).phi(p);
  EisensteinCertificate c{p, {}, false, true, false};
  for (const auto& x : tw.coeffs()) {
    if (!x.is_polynomial()) throw InvariantViolation("phi_p has a non-polynomial coefficient");
    c.coeffs.push_back(x.num());
  }
  c.leading_is_one = !c.coeffs.empty() && c.coeffs.back().is_one() && static_cast<long>(c.coeffs.size()) == p.degree() + 1;
  for (std::size_t i = 0; i + 1 < c.coeffs.size(); ++i)
    if (!p.divides(c.coeffs[i])) c.lower_divisible = false;
  c.constant_is_prime = !c.coeffs.empty() && c.coeffs[0] == p && RatA::multiplicity(c.coeffs[0], p) == 1;
  return c;
}

/// Psi_m(X) = prod_{n | m} phi_n(X)^{mu(m/n)}, the minimal polynomial over F
/// of a generator of phi[m]; degree |(A/m)^*|.
inline APoly primitive_torsion_polynomial(const PolyA& m) {
  if (!m.is_monic()) throw UsageError("modulus must be monic");
  auto F = RatField::make(m.field());
  const auto primes = detail::prime_divisors(m);
  APoly num{F->one()}, den{F->one()};
  // Only squarefree m/n contribute: n = m / prod(subset of primes).
  for (std::uint32_t mask = 0; mask < (1u << primes.size()); ++mask) {
    PolyA n = m;
    int sign = 1;
    for (std::size_t i = 0; i < primes.size(); ++i)
      if (mask >> i & 1) {
        n = n / primes[i];
        sign = -sign;
      }
    const auto f = phi_polynomial(n);
    if (sign > 0)
      num = poly::mul(*F, num, f);
    else
      den = poly::mul(*F, den, f);
  }
  return poly::exact_div(*F, num, den);
}

inline std::string format_apoly(const APoly& f, const std::string& var = "X") {
  std::string s;
  for (std::size_t i = f.size(); i-- > 0;) {
    if (f[i].is_zero()) continue;
    std::string c = f[i].to_string();
    if (!s.empty()) s += " + ";
    const bool one = f[i] == RatA::one(f[i].field());
    if (i == 0) {
      s += c;
      continue;
    }
    if (!one) s += (c.find_first_of("+-") != std::string::npos ? "(" + c + ")" : c) + "*";
    s += var;
    if (i > 1) s += "^" + std::to_string(i);
  }
  return s.empty() ? "0" : s;
}

}  // namespace carlitz
