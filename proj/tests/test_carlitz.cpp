#include <gtest/gtest.h>

#include "support.hpp"

using namespace carlitz;
using carlitz::testing::P;
using carlitz::testing::random_nonzero;
using carlitz::testing::random_poly;
using carlitz::testing::random_rat;
using carlitz::testing::rng;

TEST(Carlitz, PhiOfTAndTSquared) {
  auto k = Fq::make(3);
  auto F = RatField::make(k);
  auto M = CarlitzModule<RatField>::generic(F);
  const auto t = F->t();
  EXPECT_EQ(M.phi(P(k, "t")), TwistedPoly<RatField>(F, {t, F->one()}));
  EXPECT_EQ(M.phi(P(k, "t^2")), TwistedPoly<RatField>(F, {t * t, t + t.pow(3), F->one()}));
  EXPECT_EQ(M.phi(P(k, "2")), TwistedPoly<RatField>::constant(F, F->from_k(k->from_int(2))));
}

TEST(Carlitz, HomomorphismLaws) {
  auto g = rng(30);
  for (unsigned q : {2u, 3u, 4u}) {
    auto k = Fq::make(q);
    auto M = CarlitzModule<RatField>::generic(RatField::make(k));
    for (int it = 0; it < 100 / 3; ++it) {
      auto a = random_poly(k, 3, g), b = random_poly(k, 3, g);
      EXPECT_EQ(M.phi(a + b), M.phi(a) + M.phi(b));
      EXPECT_EQ(M.phi(a * b), M.phi(a) * M.phi(b));
      EXPECT_EQ(M.phi(a * b), M.phi(b) * M.phi(a));
      EXPECT_EQ(M.phi(a).constant_term(), RatA(a));
      if (!a.is_zero()) {
        EXPECT_EQ(M.phi(a).degree(), a.degree());
      }
    }
  }
}

TEST(Carlitz, LaurentExtension) {
  auto k = Fq::make(3);
  auto Pf = PerfectedField::make(k);
  auto M = CarlitzModule<PerfectedField>::generic(Pf);
  auto tinv = M.phi_laurent(LaurentT::from_rat(RatA(PolyA::one(k), P(k, "t")), 4), 4);
  EXPECT_TRUE(tinv.agrees_with(SkewSeries<PerfectedField>::from_poly(M.phi_t(), 4).inverse()));
  EXPECT_EQ(tinv.ord(), 1);
  auto g = rng(31);
  for (int it = 0; it < 10; ++it) {
    auto a = random_nonzero(k, 3, g);
    auto s = M.phi_laurent(LaurentT::from_poly(a, 3), 3);
    EXPECT_EQ(s.ord(), -a.degree());
    EXPECT_TRUE(s.agrees_with(SkewSeries<PerfectedField>::from_poly(M.phi(a), 3)));
  }
  EXPECT_THROW(M.phi_laurent(LaurentT::from_poly(P(k, "t"), 2), 4), PrecisionError);
}

TEST(Carlitz, SignExtraction) {
  auto k = Fq::make(3);
  auto Pf = PerfectedField::make(k);
  auto M = CarlitzModule<PerfectedField>::generic(Pf);
  EXPECT_EQ(mu(M, RatA(P(k, "t^2+2"))), k->one());
  EXPECT_EQ(mu(M, RatA(P(k, "2*t+1"))), k->from_int(2));
  auto g = rng(32);
  for (int it = 0; it < 50; ++it) {
    auto x = random_rat(k, 3, g);
    EXPECT_EQ(mu(M, x), sign_epsilon(x)) << x.to_string();
  }
}

TEST(Carlitz, SignRelation) {
  auto g = rng(33);
  for (unsigned q : {2u, 3u, 4u}) {
    auto k = Fq::make(q);
    auto M = CarlitzModule<PerfectedField>::generic(PerfectedField::make(k));
    for (int it = 0; it < 34; ++it) {
      auto x = random_rat(k, 3, g), y = random_rat(k, 3, g);
      EXPECT_TRUE(sign_relation_holds(M, x, y)) << x.to_string() << " " << y.to_string();
    }
  }
}

TEST(Carlitz, IdealActionMonicAndScaled) {
  auto k = Fq::make(3);
  auto F = RatField::make(k);
  auto M = CarlitzModule<RatField>::generic(F);
  auto r = ideal_action(M, P(k, "t^2+1"));
  EXPECT_EQ(r.phi_a, M.phi(P(k, "t^2+1")));
  EXPECT_EQ(r.target.phi_t(), M.phi_t());
  auto s = ideal_action(M, P(k, "2*t"));
  const auto half = F->inv(F->from_k(k->from_int(2)));
  EXPECT_EQ(s.phi_a, M.phi(P(k, "2*t")).left_scale(half));
  EXPECT_EQ(s.phi_a, M.phi_t());
  EXPECT_EQ(s.generator, P(k, "t"));
  EXPECT_THROW(ideal_action(M, PolyA(k)), UsageError);
}

// phi_{ab} = (b*phi)_a phi_b, with both sides computed through the left-ideal generator.
TEST(Carlitz, IdealActionMultiplicativity) {
  auto g = rng(34);
  auto k = Fq::make(3);
  auto M = CarlitzModule<RatField>::generic(RatField::make(k));
  for (int it = 0; it < 20; ++it) {
    auto a = random_nonzero(k, 2, g), b = random_nonzero(k, 2, g);
    auto rb = ideal_action(M, b);
    auto ra_on_b = ideal_action(rb.target, a);
    auto rab = ideal_action(M, a * b);
    EXPECT_EQ(rab.phi_a, ra_on_b.phi_a * rb.phi_a);
    EXPECT_EQ(rab.target.phi_t(), ra_on_b.target.phi_t());
  }
}

TEST(Carlitz, Reduction) {
  auto k = Fq::make(3);
  auto M = CarlitzModule<RatField>::generic(RatField::make(k));
  PrimeA p(P(k, "t+1"));
  auto Mb = reduce_mod_p(M, p);
  const auto& R = p.residue_field();
  EXPECT_EQ(Mb.phi_t(), TwistedPoly<ExtField>(R, {R->from_k(k->from_int(2)), R->one()}));
  auto g = rng(35);
  for (int it = 0; it < 50; ++it) {
    auto a = random_poly(k, 4, g);
    EXPECT_EQ(reduce_twisted(M.phi(a), p), Mb.phi(a));
  }
}

TEST(Carlitz, ReductionOfPhiAtPrimeIsFrobenius) {
  for (unsigned q : {2u, 3u}) {
    auto k = Fq::make(q);
    auto M = CarlitzModule<RatField>::generic(RatField::make(k));
    for (const auto& f : primes_up_to(k, 3)) {
      PrimeA p(f);
      EXPECT_EQ(reduce_twisted(M.phi(f), p), TwistedPoly<ExtField>::tau_power(p.residue_field(), p.degree())) << f.to_string();
    }
  }
}
