#pragma once

// Ray class groups C_F/U(m, e, d) of F = k(t), idele classes reduced into
// them, and Frobenius classes computed along two independent routes: the
// idele alpha(p)^{-1}, and the Galois side (chi_m, rho_infty, deg).

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "carlitz/drinfeld/carlitz_module.hpp"
#include "carlitz/drinfeld/torsion.hpp"
#include "carlitz/error.hpp"
#include "carlitz/poly/poly_a.hpp"
#include "carlitz/tower/infty.hpp"

namespace carlitz {

/// U(m, e, d).  e <= 1 imposes no condition at infinity and is stored as 1.
struct Modulus {
  PolyA m;
  unsigned e = 1;
  unsigned d = 1;

  Modulus() = default;
  Modulus(PolyA m_, unsigned e_, unsigned d_) : m(std::move(m_)), e(std::max(1u, e_)), d(d_) {
    if (!m.is_monic()) throw UsageError("finite modulus must be monic");
    if (d == 0) throw UsageError("constant-field degree must be >= 1");
  }
  std::string to_string() const { return "(" + m.to_string() + ", " + std::to_string(e) + ", " + std::to_string(d) + ")"; }
};

/// (a mod m, 1 + sum_{i<e} u_i t^{-i}, n mod d).
struct RayClass {
  PolyA finite;
  std::vector<KElem> infty;  // u_1 .. u_{e-1}
  std::uint64_t constant = 0;

  friend bool operator==(const RayClass& a, const RayClass& b) {
    return a.finite == b.finite && a.infty == b.infty && a.constant == b.constant;
  }
  friend bool operator<(const RayClass& a, const RayClass& b) {
    if (!(a.finite == b.finite)) return a.finite < b.finite;
    if (a.infty != b.infty) return a.infty < b.infty;
    return a.constant < b.constant;
  }
};

class RayClassGroup {
 public:
  explicit RayClassGroup(Modulus M) : M_(std::move(M)), units_(M_.m) {}

  const Modulus& modulus() const { return M_; }
  const Fq& k() const { return M_.m.k(); }
  const FqPtr& k_ptr() const { return M_.m.field(); }
  const UnitGroupModM& units() const { return units_; }

  std::uint64_t finite_order() const { return units_.order(); }
  std::uint64_t infty_order() const {
    std::uint64_t r = 1;
    for (unsigned i = 1; i < M_.e; ++i) r *= k().q();
    return r;
  }
  /// |(A/m)^*| q^{e-1} d.
  std::uint64_t order() const { return finite_order() * infty_order() * M_.d; }

  RayClass identity() const { return {units_.identity(), std::vector<KElem>(M_.e - 1, k().zero()), 0}; }

  RayClass mul(const RayClass& a, const RayClass& b) const {
    return {units_.mul(a.finite, b.finite), series_mul(a.infty, b.infty), (a.constant + b.constant) % M_.d};
  }
  RayClass inv(const RayClass& a) const {
    if (!units_.is_unit(a.finite)) throw UsageError("finite component is not a unit");
    // Inverse of 1 + x, term by term.
    const auto& kk = k();
    std::vector<KElem> r(a.infty.size(), kk.zero());
    for (std::size_t n = 1; n <= r.size(); ++n) {
      KElem acc = kk.zero();
      for (std::size_t i = 1; i <= n; ++i) acc = kk.sub(acc, kk.mul(a.infty[i - 1], i == n ? kk.one() : r[n - i - 1]));
      r[n - 1] = acc;
    }
    return {M_.m.degree() == 0 ? units_.identity() : units_.inv(a.finite), std::move(r), (M_.d - a.constant % M_.d) % M_.d};
  }
  RayClass pow(const RayClass& a, long long n) const {
    RayClass base = n < 0 ? inv(a) : a;
    std::uint64_t e = static_cast<std::uint64_t>(n < 0 ? -n : n);
    RayClass r = identity();
    while (e) {
      if (e & 1) r = mul(r, base);
      e >>= 1;
      if (e) base = mul(base, base);
    }
    return r;
  }

  /// Every element, sorted.
  std::vector<RayClass> enumerate(std::size_t limit = 1u << 20) const {
    if (order() > limit) throw Unsupported("ray class group too large to enumerate");
    std::vector<RayClass> out;
    const auto reps = units_.representatives();
    std::vector<std::vector<KElem>> inf{{}};
    for (unsigned i = 1; i < M_.e; ++i) {
      std::vector<std::vector<KElem>> next;
      for (const auto& v : inf)
        for (std::size_t r = 0; r < k().q(); ++r) {
          auto w = v;
          w.push_back(k().by_rank(r));
          next.push_back(std::move(w));
        }
      inf = std::move(next);
    }
    for (const auto& a : reps)
      for (const auto& v : inf)
        for (std::uint64_t c = 0; c < M_.d; ++c) out.push_back({a, v, c});
    std::sort(out.begin(), out.end());
    return out;
  }

  /// The subgroup generated by the given elements (closure under products).
  std::set<RayClass> subgroup_generated(const std::vector<RayClass>& gens) const {
    std::set<RayClass> seen{identity()};
    std::vector<RayClass> frontier{identity()};
    std::vector<RayClass> uniq(gens.begin(), gens.end());
    std::sort(uniq.begin(), uniq.end());
    uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
    while (!frontier.empty()) {
      std::vector<RayClass> next;
      for (const auto& x : frontier)
        for (const auto& g : uniq) {
          auto y = mul(x, g);
          if (seen.insert(y).second) next.push_back(std::move(y));
        }
      frontier = std::move(next);
    }
    return seen;
  }

  std::string format_finite(const RayClass& a) const { return a.finite.to_string(); }
  std::string format_infty(const RayClass& a) const {
    std::string s = "1";
    for (std::size_t i = 0; i < a.infty.size(); ++i) {
      if (a.infty[i].v == 0) continue;
      std::string c = k().format(a.infty[i]);
      if (c.find('+') != std::string::npos) c = "(" + c + ")";
      s += "+";
      if (a.infty[i] != k().one()) s += c + "*";
      s += "t^-" + std::to_string(i + 1);
    }
    return s;
  }
  std::string format(const RayClass& a) const {
    return "(" + format_finite(a) + ", " + format_infty(a) + ", " + std::to_string(a.constant) + " mod " + std::to_string(M_.d) + ")";
  }

 private:
  std::vector<KElem> series_mul(const std::vector<KElem>& a, const std::vector<KElem>& b) const {
    const auto& kk = k();
    std::vector<KElem> r(a.size(), kk.zero());
    for (std::size_t n = 1; n <= r.size(); ++n) {
      KElem acc = kk.add(a[n - 1], b[n - 1]);
      for (std::size_t i = 1; i < n; ++i) acc = kk.add(acc, kk.mul(a[i - 1], b[n - i - 1]));
      r[n - 1] = acc;
    }
    return r;
  }

  Modulus M_;
  UnitGroupModM units_;
};

// ---------------------------------------------------------------------------
// Ideles

/// An idele with finitely many listed finite places; every unlisted finite
/// place carries the unit 1.  Local values are represented by global
/// fractions, which carry all the information a modulus can see.
struct IdeleRep {
  std::map<PolyA, RatA> finite;  // monic prime -> local value
  LaurentT infty;

  /// f at every place dividing f, at the extra places, and at infinity.
  static IdeleRep principal(const RatA& f, std::size_t precision, const std::vector<PolyA>& also_at = {}) {
    if (f.is_zero()) throw UsageError("principal idele of zero");
    IdeleRep a;
    for (const auto* part : {&f.num(), &f.den()})
      if (part->degree() > 0)
        for (const auto& [l, e] : factor_poly(*part)) a.finite.emplace(l, f);
    for (const auto& l : also_at) a.finite.emplace(l, f);
    a.infty = LaurentT::from_rat(f, precision);
    return a;
  }
  /// alpha(p)^{-1}: p^{-1} at p, 1 elsewhere.
  static IdeleRep uniformizer_inverse(const PolyA& p, std::size_t precision) {
    IdeleRep a;
    a.finite.emplace(p, RatA(PolyA::one(p.field()), p));
    a.infty = LaurentT::one(p.field(), precision);
    return a;
  }

  IdeleRep operator*(const IdeleRep& o) const {
    IdeleRep r;
    r.finite = finite;
    for (const auto& [l, x] : o.finite) {
      auto [it, fresh] = r.finite.emplace(l, x);
      if (!fresh) it->second = it->second * x;
    }
    r.infty = infty * o.infty;
    return r;
  }
};

inline RayClass idele_reduce(const IdeleRep& a, const Modulus& M) {
  const auto& kp = M.m.field();
  const auto& k = *kp;
  if (a.infty.is_zero()) throw UsageError("zero component at infinity");
  if (a.infty.precision() < M.e) throw PrecisionError("idele known to " + std::to_string(a.infty.precision()) + " digits at infinity, " + std::to_string(M.e) + " needed");
  // f = eps(a_infty)^{-1} prod l^{-ord_l a_l} makes f a a unit at every finite
  // place and positive at infinity.
  PolyA num = PolyA::constant(kp, k.inv(a.infty.sign())), den = PolyA::one(kp);
  for (const auto& [l, x] : a.finite) {
    if (x.is_zero()) throw UsageError("zero local component at " + l.to_string());
    const long v = x.ord_at(l);
    if (v < 0) num = num * l.pow(static_cast<std::uint64_t>(-v));
    if (v > 0) den = den * l.pow(static_cast<std::uint64_t>(v));
  }
  const RatA f(num, den);

  RayClass out;
  if (M.m.degree() == 0) {
    out.finite = PolyA(kp);
  } else {
    std::vector<std::pair<PolyA, PolyA>> parts;
    for (const auto& [l, v] : factor_poly(M.m)) {
      const PolyA lv = l.pow(static_cast<std::uint64_t>(v));
      auto it = a.finite.find(l);
      const RatA local = it == a.finite.end() ? f : f * it->second;
      parts.emplace_back(reduce_mod(local, lv), lv);
    }
    out.finite = crt(parts, kp);
  }
  const LaurentT y = LaurentT::from_rat(f, M.e) * a.infty.truncate(M.e);
  if (y.sign() != k.one()) throw InvariantViolation("sign normalization failed");
  for (unsigned i = 1; i < M.e; ++i) out.infty.push_back(i < y.precision() ? y.digits()[i] : k.zero());
  const long deg = -y.ord();
  const long dd = static_cast<long>(M.d);
  out.constant = static_cast<std::uint64_t>(((deg % dd) + dd) % dd);
  return out;
}

// ---------------------------------------------------------------------------
// Frobenius classes

/// Memoized chi_m(Frob_p) and rho_infty(Frob_p); safe to share across threads.
class FrobeniusData {
 public:
  explicit FrobeniusData(unsigned branch = 0) : branch_(branch) {}

  PolyA chi(const PolyA& p, const PolyA& m) const {
    const auto key = std::make_pair(p, m);
    {
      std::lock_guard<std::mutex> lock(mu_);
      if (auto it = chi_.find(key); it != chi_.end()) return it->second;
    }
    auto a = chi_frobenius(PrimeA(p), m);
    std::lock_guard<std::mutex> lock(mu_);
    return chi_.emplace(key, std::move(a)).first->second;
  }
  InftyClass rho(const PolyA& p, unsigned e) const {
    const auto key = std::make_pair(p, e);
    {
      std::lock_guard<std::mutex> lock(mu_);
      if (auto it = rho_.find(key); it != rho_.end()) return it->second;
    }
    auto r = rho_infty_frobenius(PrimeA(p), e, branch_);
    std::lock_guard<std::mutex> lock(mu_);
    return rho_.emplace(key, std::move(r)).first->second;
  }
  unsigned branch() const { return branch_; }

 private:
  unsigned branch_;
  mutable std::mutex mu_;
  mutable std::map<std::pair<PolyA, PolyA>, PolyA> chi_;
  mutable std::map<std::pair<PolyA, unsigned>, InftyClass> rho_;
};

struct FrobeniusClass {
  PolyA prime;
  RayClass idelic;    // idele_reduce(alpha(p)^{-1})
  RayClass galois;    // (chi_m, rho_infty, deg)
  bool agree() const { return idelic == galois; }
};

inline RayClass frobenius_class_idelic(const PolyA& p, const Modulus& M) {
  return idele_reduce(IdeleRep::uniformizer_inverse(p, M.e), M);
}

inline RayClass frobenius_class_galois(const PolyA& p, const Modulus& M, const FrobeniusData& data) {
  RayClass r;
  r.finite = data.chi(p, M.m);
  const auto rho = data.rho(p, M.e);
  const auto beta = beta_deg(rho);
  for (unsigned i = 1; i < M.e; ++i) r.infty.push_back(beta.digits()[i]);
  r.constant = rho.deg % M.d;
  return r;
}

/// Both routes to rho_U(Frob_p).
inline FrobeniusClass frobenius_class_paths(const PolyA& p, const Modulus& M, const FrobeniusData& data) {
  if (p.divides(M.m)) throw DomainError(p.to_string() + " divides the modulus " + M.m.to_string());
  return {p, frobenius_class_idelic(p, M), frobenius_class_galois(p, M, data)};
}

/// rho_U(Frob_p); the two routes must agree.
inline RayClass frobenius_class(const PolyA& p, const Modulus& M, const FrobeniusData& data) {
  auto c = frobenius_class_paths(p, M, data);
  if (!c.agree()) throw InvariantViolation("Frobenius class of " + p.to_string() + " differs between the idelic and Galois routes");
  return c.galois;
}

/// A formal product of Frobenius elements.
struct FrobeniusWord {
  std::vector<std::pair<PolyA, long long>> factors;

  long long degree() const {
    long long d = 0;
    for (const auto& [p, n] : factors) d += n * p.degree();
    return d;
  }
};

inline RayClass frobenius_class(const FrobeniusWord& w, const Modulus& M, const FrobeniusData& data) {
  const RayClassGroup G(M);
  RayClass r = G.identity();
  for (const auto& [p, n] : w.factors) {
    if (n == 0) throw UsageError("zero exponent in a Frobenius word");
    r = G.mul(r, G.pow(frobenius_class(p, M, data), n));
  }
  return r;
}

// ---------------------------------------------------------------------------
// Sweeps

struct ReciprocityReport {
  Modulus modulus;
  unsigned degree_bound = 0;
  std::uint64_t group_order = 0;
  std::vector<FrobeniusClass> rows;       // sorted by prime
  std::vector<PolyA> disagreements;
  std::uint64_t image_size = 0;           // subgroup generated by the classes
  std::optional<unsigned> full_at;        // least D whose primes generate C_F/U
  bool extended = false;                  // full_at found beyond the sweep, by ideles
  bool surjective() const { return image_size == group_order; }
  bool pass() const { return disagreements.empty() && full_at.has_value(); }
};

/// Sweeps the primes of degree <= D not dividing m.  If their classes do not
/// generate the group, the idelic classes of higher-degree primes are added
/// up to `extend_to` to locate the degree where surjectivity is reached.
inline ReciprocityReport verify_reciprocity(const Modulus& M, unsigned D, const FrobeniusData& data, unsigned extend_to = 0,
                                            const std::function<void(const FrobeniusClass&)>& each = {}) {
  const RayClassGroup G(M);
  ReciprocityReport rep{M, D, G.order(), {}, {}, 0, std::nullopt, false};
  const auto& kp = M.m.field();
  std::vector<RayClass> gens;
  std::set<RayClass> image{G.identity()};
  auto absorb = [&](unsigned deg) {
    if (!rep.full_at && image.size() == G.order()) rep.full_at = deg;
  };
  absorb(0);
  for (unsigned n = 1; n <= D; ++n) {
    for (const auto& p : primes_of_degree(kp, n)) {
      if (p.divides(M.m)) continue;
      auto row = frobenius_class_paths(p, M, data);
      if (!row.agree()) rep.disagreements.push_back(p);
      gens.push_back(row.galois);
      if (each) each(row);
      rep.rows.push_back(std::move(row));
    }
    if (!rep.full_at) image = G.subgroup_generated(gens);
    absorb(n);
  }
  rep.image_size = image.size();
  for (unsigned n = D + 1; !rep.full_at && n <= extend_to; ++n) {
    for (const auto& p : primes_of_degree(kp, n))
      if (!p.divides(M.m)) gens.push_back(frobenius_class_idelic(p, M));
    image = G.subgroup_generated(gens);
    if (image.size() == G.order()) {
      rep.full_at = n;
      rep.extended = true;
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Generators of L_U

struct FieldGenerators {
  Modulus modulus;
  // Torsion part F(xi), xi a root of Psi_m with annihilator exactly m.
  std::string phi_m;                 // phi_m(X)
  std::string psi_m;                 // Psi_m(X)
  std::uint64_t torsion_degree = 1;  // |(A/m)^*|
  std::optional<EisensteinCertificate> eisenstein;  // when m is prime
  // Constant part GF(q^d)(t).
  unsigned constant_degree = 1;
  // Wild part F(a_1, ..., a_{e-1}).
  std::vector<std::string> wild_relations;
  std::uint64_t wild_degree = 1;
  std::uint64_t predicted_degree = 1;  // [L_U : F]
  std::uint64_t group_order = 1;       // |C_F/U|
};

inline FieldGenerators field_generators(const Modulus& M) {
  const RayClassGroup G(M);
  FieldGenerators out;
  out.modulus = M;
  out.torsion_degree = G.finite_order();
  if (M.m.degree() > 0) {
    out.phi_m = format_apoly(phi_polynomial(M.m));
    const auto psi = primitive_torsion_polynomial(M.m);
    if (static_cast<std::uint64_t>(poly::degree<RatField>(psi)) != out.torsion_degree)
      throw InvariantViolation("deg Psi_m differs from |(A/m)^*|");
    out.psi_m = format_apoly(psi);
    if (is_irreducible(M.m)) out.eisenstein = cyclotomic_check(M.m);
  }
  out.constant_degree = M.d;
  for (unsigned i = 1; i < M.e; ++i) {
    const std::string a = "a" + std::to_string(i);
    const std::string rhs = i == 1 ? "-t" : "-t*a" + std::to_string(i - 1);
    out.wild_relations.push_back(a + "^" + std::to_string(M.m.k().q()) + " - " + a + " = " + rhs);
  }
  out.wild_degree = G.infty_order();
  out.predicted_degree = out.torsion_degree * out.constant_degree * out.wild_degree;
  out.group_order = G.order();
  return out;
}

}  // namespace carlitz
