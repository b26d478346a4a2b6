#include <gtest/gtest.h>

#include "support.hpp"

using namespace carlitz;
using carlitz::testing::P;

namespace {

std::vector<ExtField::value_type> all_elements(const ExtField& E) {
  const auto& k = E.base();
  std::size_t count = 1;
  for (unsigned i = 0; i < E.degree(); ++i) count *= k.q();
  std::vector<ExtField::value_type> out;
  for (std::size_t n = 0; n < count; ++n) {
    ExtField::value_type v(E.degree());
    std::size_t x = n;
    for (unsigned i = 0; i < E.degree(); ++i, x /= k.q()) v[i] = k.element(x % k.q());
    out.push_back(std::move(v));
  }
  std::sort(out.begin(), out.end(), [&](const auto& a, const auto& b) { return E.less(a, b); });
  return out;
}

std::vector<PolyA> moduli(const FqPtr& k, unsigned max_deg) {
  std::vector<PolyA> ms;
  for (unsigned d = 1; d <= max_deg; ++d)
    for (auto& m : monic_polys_of_degree(k, d)) ms.push_back(m);
  return ms;
}

}  // namespace

TEST(Torsion, WorkedExample) {
  auto k = Fq::make(3);
  PrimeA p(P(k, "t+1"));
  auto T = torsion_space(p, P(k, "t"));
  EXPECT_EQ(T.s, 1u);
  const auto& E = *T.field;
  ASSERT_EQ(T.roots.size(), 3u);
  EXPECT_EQ(T.roots, (std::vector<ExtField::value_type>{E.zero(), E.one(), E.from_k(k->from_int(2))}));
  EXPECT_EQ(T.xi, E.one());
  EXPECT_EQ(chi_frobenius(T), P(k, "1"));
  EXPECT_EQ(p.poly() % P(k, "t"), P(k, "1"));
}

// Kernel by linear algebra against evaluation of phi_m at every element of E.
TEST(Torsion, RootsMatchExhaustiveSearch) {
  for (unsigned q : {2u, 3u}) {
    auto k = Fq::make(q);
    for (const auto& m : moduli(k, 2))
      for (const auto& f : primes_up_to(k, 2)) {
        if (f.divides(m)) continue;
        PrimeA p(f);
        auto T = torsion_space(p, m);
        const auto& E = *T.field;
        if (E.degree() > 8) continue;
        const auto phi_m = T.module().phi(m);
        std::vector<ExtField::value_type> brute;
        for (const auto& x : all_elements(E))
          if (E.is_zero(phi_m(x))) brute.push_back(x);
        EXPECT_EQ(T.roots, brute) << m.to_string() << " at " << f.to_string();
        std::uint64_t expect = 1;
        for (long i = 0; i < m.degree(); ++i) expect *= q;
        EXPECT_EQ(T.roots.size(), expect);
        EXPECT_TRUE(torsion_is_cyclic(T));
      }
  }
}

// chi against the residue a found by trying every element of A/m.
TEST(Torsion, ChiMatchesBruteForceSearch) {
  for (unsigned q : {2u, 3u}) {
    auto k = Fq::make(q);
    for (const auto& m : moduli(k, 2))
      for (const auto& f : primes_up_to(k, 3)) {
        if (f.divides(m)) continue;
        PrimeA p(f);
        auto T = torsion_space(p, m);
        const auto& E = *T.field;
        const auto M = T.module();
        const auto target = E.pow(T.xi, p.norm());
        std::vector<PolyA> hits;
        for (const auto& a : UnitGroupModM(m).representatives())
          if (M.phi(a)(T.xi) == target) hits.push_back(a);
        ASSERT_EQ(hits.size(), 1u) << m.to_string() << " at " << f.to_string();
        EXPECT_EQ(hits[0], chi_frobenius(T));
        EXPECT_EQ(hits[0], f % m);
      }
  }
}

TEST(Torsion, TrivialModulusAndBadPair) {
  auto k = Fq::make(3);
  PrimeA p(P(k, "t+1"));
  EXPECT_TRUE(chi_frobenius(p, PolyA::one(k)).is_zero());
  EXPECT_THROW(torsion_space(PrimeA(P(k, "t")), P(k, "t^2")), DomainError);
  EXPECT_THROW(splitting_degree_law(PrimeA(P(k, "t")), P(k, "t")), DomainError);
}

TEST(SplittingLaw, Examples) {
  auto k3 = Fq::make(3);
  auto s1 = splitting_degree_law(PrimeA(P(k3, "t+1")), P(k3, "t"));
  EXPECT_EQ(s1.s_factored, 1u);
  EXPECT_EQ(s1.s_group, 1u);
  auto k2 = Fq::make(2);
  auto s2 = splitting_degree_law(PrimeA(P(k2, "t+1")), P(k2, "t"));
  EXPECT_EQ(s2.s_factored, 1u);
  EXPECT_EQ(s2.s_group, 1u);
  // Order of t+1 mod t^2 by iteration: (1+t)^n = 1 + n t, so the order is 3.
  UnitGroupModM G(P(k3, "t^2"));
  std::uint64_t n = 1;
  for (PolyA x = P(k3, "t+1"); !(x == G.identity()); x = G.mul(x, P(k3, "t+1"))) ++n;
  EXPECT_EQ(n, 3u);
  auto s3 = splitting_degree_law(PrimeA(P(k3, "t+1")), P(k3, "t^2"));
  EXPECT_EQ(s3.s_group, n);
  EXPECT_TRUE(s3.agree());
}

TEST(Eisenstein, Examples) {
  auto k3 = Fq::make(3);
  auto c = cyclotomic_check(P(k3, "t"));
  EXPECT_EQ(c.coeffs, (std::vector<PolyA>{P(k3, "t"), P(k3, "1")}));
  EXPECT_TRUE(c.holds());
  auto k2 = Fq::make(2);
  EXPECT_TRUE(cyclotomic_check(P(k2, "t^2+t+1")).holds());
  for (unsigned q : {2u, 3u}) {
    auto k = Fq::make(q);
    for (const auto& f : primes_up_to(k, 3)) {
      auto cert = cyclotomic_check(f);
      EXPECT_TRUE(cert.holds()) << f.to_string();
      EXPECT_EQ(cert.coeffs.front(), f);
    }
  }
}

TEST(PrimitiveTorsionPolynomial, DegreeAndSmallCase) {
  auto k = Fq::make(3);
  auto F = RatField::make(k);
  auto psi_t = primitive_torsion_polynomial(P(k, "t"));
  EXPECT_EQ(psi_t, (APoly{F->t(), F->zero(), F->one()}));
  for (const auto& m : moduli(k, 2)) {
    auto psi = primitive_torsion_polynomial(m);
    EXPECT_EQ(poly::degree<RatField>(psi), static_cast<long>(UnitGroupModM(m).order())) << m.to_string();
  }
}

// The generator found in the reduction is a root of the reduced Psi_m.
TEST(PrimitiveTorsionPolynomial, VanishesAtReducedGenerator) {
  for (unsigned q : {2u, 3u}) {
    auto k = Fq::make(q);
    for (const auto& m : moduli(k, 2)) {
      auto psi = primitive_torsion_polynomial(m);
      for (const auto& f : primes_up_to(k, 2)) {
        if (f.divides(m)) continue;
        PrimeA p(f);
        auto T = torsion_space(p, m);
        const auto& E = *T.field;
        // Same embedding of k[t]/(p) that torsion_space used for t-bar.
        auto lift = [&](const ExtField::value_type& x) { return T.s == 1 ? x : Embedding::make(p.residue_field(), T.field, 0)(x); };
        ASSERT_EQ(lift(p.tbar()), T.tbar);
        auto acc = E.zero();
        for (std::size_t i = psi.size(); i-- > 0;) acc = E.add(E.mul(acc, T.xi), lift(residue_embed(p, psi[i])));
        EXPECT_TRUE(E.is_zero(acc)) << m.to_string() << " at " << f.to_string();
      }
    }
  }
}
