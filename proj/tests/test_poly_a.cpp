#include <gtest/gtest.h>

#include <set>

#include "support.hpp"

using namespace carlitz;
using carlitz::testing::P;
using carlitz::testing::random_monic;
using carlitz::testing::random_nonzero;
using carlitz::testing::random_poly;
using carlitz::testing::rng;

TEST(PolyA, ParseAndPrint) {
  auto k = Fq::make(3);
  EXPECT_EQ(P(k, "t^2+2*t+1").to_string(), "t^2+2*t+1");
  EXPECT_EQ(P(k, "t^2-1"), P(k, "t^2+2"));
  EXPECT_EQ(P(k, "(t+1)*(t+2)"), P(k, "t^2+2"));
  EXPECT_TRUE(P(k, "0").is_zero());
  EXPECT_THROW(P(k, "t^"), UsageError);
}

TEST(PolyA, DivisionIdentity) {
  auto g = rng(10);
  for (unsigned q : {2u, 3u, 4u}) {
    auto k = Fq::make(q);
    for (int it = 0; it < 50; ++it) {
      auto a = random_poly(k, 7, g), b = random_nonzero(k, 4, g);
      auto [quot, rem] = a.divmod(b);
      EXPECT_EQ(quot * b + rem, a);
      EXPECT_LT(rem.degree(), b.degree());
    }
  }
}

TEST(PolyA, FactorExamples) {
  auto k3 = Fq::make(3);
  auto f = factor_poly(P(k3, "t^2+2"));
  ASSERT_EQ(f.size(), 2u);
  EXPECT_EQ(f[0].first * f[1].first, P(k3, "t^2+2"));
  auto k2 = Fq::make(2);
  auto g = factor_poly(P(k2, "t^2+t"));
  ASSERT_EQ(g.size(), 2u);
  EXPECT_EQ(g[0].first * g[1].first, P(k2, "t^2+t"));
  auto h = factor_poly(P(k3, "t^2+1"));
  ASSERT_EQ(h.size(), 1u);
  EXPECT_EQ(h[0].second, 1);
}

TEST(PolyA, FactorProductProperty) {
  auto g = rng(11);
  for (unsigned q : {2u, 3u, 4u, 5u}) {
    auto k = Fq::make(q);
    for (int it = 0; it < 30; ++it) {
      auto a = random_monic(k, 1 + it % 7, g);
      PolyA prod = PolyA::one(k);
      for (const auto& [p, e] : factor_poly(a, it)) {
        EXPECT_TRUE(is_irreducible(p));
        EXPECT_TRUE(p.is_monic());
        prod = prod * p.pow(static_cast<std::uint64_t>(e));
      }
      EXPECT_EQ(prod, a);
    }
  }
}

// Irreducible counts against the necklace formula and against trial division.
TEST(PolyA, PrimeCounts) {
  for (unsigned q : {2u, 3u, 4u}) {
    auto k = Fq::make(q);
    for (unsigned d = 1; d <= 4; ++d) {
      auto ps = primes_of_degree(k, d);
      EXPECT_EQ(ps.size(), necklace_count(q, d));
      if (d <= 3) {
        std::size_t brute = 0;
        auto lower = primes_up_to(k, d / 2);
        for (const auto& f : monic_polys_of_degree(k, d)) {
          bool irr = true;
          for (const auto& l : lower)
            if (l.divides(f)) irr = false;
          brute += irr;
        }
        EXPECT_EQ(ps.size(), brute);
      }
    }
  }
}

TEST(RatA, NormalizationAndValuations) {
  auto k = Fq::make(3);
  RatA x(P(k, "2*t^2+2*t"), P(k, "t^2+2"));
  EXPECT_TRUE(x.den().is_monic());
  EXPECT_EQ(x.ord_at(P(k, "t")), 1);
  EXPECT_EQ(x.ord_at(P(k, "t+1")), 0);
  EXPECT_EQ(x.ord_at(P(k, "t+2")), -1);
  EXPECT_EQ(x.ord_infty(), 0);
  EXPECT_EQ(sign_epsilon(x), k->from_int(2));
  EXPECT_EQ(sign_epsilon(P(k, "2*t+1")), k->from_int(2));
  EXPECT_EQ(sign_epsilon(P(k, "t")), k->one());
  for (unsigned c = 1; c < 3; ++c) EXPECT_EQ(sign_epsilon(RatA::constant(k, k->element(c))), k->element(c));
}

TEST(RatA, FieldLaws) {
  auto g = rng(12);
  auto k = Fq::make(4);
  for (int it = 0; it < 50; ++it) {
    auto a = carlitz::testing::random_rat(k, 3, g), b = carlitz::testing::random_rat(k, 3, g);
    EXPECT_EQ((a * b) / b, a);
    EXPECT_EQ((a + b) - b, a);
    EXPECT_EQ(a * a.inv(), RatA::one(k));
    EXPECT_EQ((a * b).ord_infty(), a.ord_infty() + b.ord_infty());
    EXPECT_EQ(sign_epsilon(a * b), k->mul(sign_epsilon(a), sign_epsilon(b)));
  }
}

TEST(UnitGroup, ExamplesAndBruteForceOrder) {
  auto k = Fq::make(3);
  UnitGroupModM Gt(P(k, "t"));
  EXPECT_EQ(Gt.order(), 2u);
  EXPECT_EQ(Gt.representatives(), (std::vector<PolyA>{P(k, "1"), P(k, "2")}));
  EXPECT_EQ(UnitGroupModM(P(k, "t^2")).order(), 6u);
  EXPECT_EQ(UnitGroupModM(PolyA::one(k)).order(), 1u);

  for (unsigned q : {2u, 3u, 4u}) {
    auto kq = Fq::make(q);
    for (unsigned d = 1; d <= 3; ++d)
      for (const auto& m : monic_polys_of_degree(kq, d)) {
        UnitGroupModM G(m);
        std::size_t units = 0;
        for (unsigned e = 0; e < d; ++e)
          for (const auto& mono : monic_polys_of_degree(kq, e))
            for (std::size_t c = 1; c < q; ++c) units += gcd(mono.scaled(kq->by_rank(c)), m).is_one();
        EXPECT_EQ(G.order(), units) << m.to_string();
        EXPECT_EQ(G.representatives().size(), units);
      }
  }
}

// order_of against the first n with a^n = 1 found by repeated multiplication.
TEST(UnitGroup, OrderOfMatchesIteration) {
  auto k = Fq::make(3);
  for (const char* ms : {"t^2", "t^2+1", "t^3+t", "t^3+2*t+1"}) {
    UnitGroupModM G(P(k, ms));
    for (const auto& a : G.representatives()) {
      std::uint64_t n = 1;
      PolyA x = a;
      while (!(x == G.identity())) {
        x = G.mul(x, a);
        ++n;
      }
      EXPECT_EQ(G.order_of(a), n);
      EXPECT_EQ(G.mul(a, G.inv(a)), G.identity());
    }
  }
  EXPECT_THROW(UnitGroupModM(P(k, "t")).order_of(P(k, "t")), DomainError);
}

TEST(Crt, RecoversResidues) {
  auto g = rng(13);
  auto k = Fq::make(3);
  std::vector<PolyA> mods{P(k, "t"), P(k, "t^2+1"), P(k, "(t+1)^2")};
  for (int it = 0; it < 30; ++it) {
    std::vector<std::pair<PolyA, PolyA>> res;
    for (const auto& m : mods) res.emplace_back(random_poly(k, static_cast<unsigned>(m.degree()) - 1, g), m);
    auto x = crt(res, k);
    EXPECT_LT(x.degree(), 5);
    for (const auto& [r, m] : res) EXPECT_EQ(x % m, r % m);
  }
}

TEST(Residue, EmbedAtPrime) {
  auto k = Fq::make(3);
  PrimeA p(P(k, "t+1"));
  EXPECT_EQ(p.tbar(), p.residue_field()->from_k(k->from_int(2)));
  EXPECT_TRUE(p.residue_field()->is_zero(residue_embed(p, p.poly())));
  EXPECT_EQ(residue_embed(p, PolyA::constant(k, k->from_int(2))), p.residue_field()->from_k(k->from_int(2)));
  EXPECT_THROW(residue_embed(p, RatA(PolyA::one(k), p.poly())), DomainError);
  EXPECT_THROW(PrimeA(P(k, "t^2+2")), UsageError);
}

TEST(LaurentT, ExpansionAndArithmetic) {
  auto k = Fq::make(3);
  auto x = LaurentT::from_rat(RatA(P(k, "t+1")), 3);
  EXPECT_EQ(x.ord(), -1);
  EXPECT_EQ(x.digits(), (std::vector<KElem>{k->one(), k->one(), k->zero()}));
  auto g = rng(14);
  for (int it = 0; it < 40; ++it) {
    auto a = carlitz::testing::random_rat(k, 3, g), b = carlitz::testing::random_rat(k, 3, g);
    EXPECT_EQ(LaurentT::from_rat(a, 5) * LaurentT::from_rat(b, 5), LaurentT::from_rat(a * b, 5));
    EXPECT_EQ(LaurentT::from_rat(a, 5).inv(), LaurentT::from_rat(a.inv(), 5));
    auto [h, M] = LaurentT::from_rat(a, 4).as_fraction();
    EXPECT_EQ(LaurentT::from_rat(RatA(h, PolyA::t(k).pow(static_cast<std::uint64_t>(M))), 4), LaurentT::from_rat(a, 4));
  }
}
