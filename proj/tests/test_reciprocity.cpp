#include <gtest/gtest.h>

#include "support.hpp"

using namespace carlitz;
using carlitz::testing::P;
using carlitz::testing::random_nonzero;
using carlitz::testing::random_rat;
using carlitz::testing::rng;

namespace {

IdeleRep random_idele(const FqPtr& k, const std::vector<PolyA>& places, std::size_t precision, std::mt19937_64& g) {
  IdeleRep a;
  for (const auto& l : places)
    if (g() % 2) a.finite.emplace(l, random_rat(k, 2, g));
  std::vector<KElem> d(precision);
  for (auto& x : d) x = k->random(g);
  while (d[0].v == 0) d[0] = k->random(g);
  a.infty = LaurentT(k, static_cast<long>(g() % 5) - 2, d);
  return a;
}

}  // namespace

TEST(RayClassGroup, Orders) {
  auto k3 = Fq::make(3);
  EXPECT_EQ(RayClassGroup(Modulus(P(k3, "t"), 0, 1)).order(), 2u);
  EXPECT_EQ(RayClassGroup(Modulus(PolyA::one(k3), 2, 1)).order(), 3u);
  EXPECT_EQ(RayClassGroup(Modulus(PolyA::one(k3), 1, 5)).order(), 5u);
  EXPECT_EQ(RayClassGroup(Modulus(P(k3, "t"), 2, 2)).order(), 12u);
  EXPECT_THROW(Modulus(P(k3, "2*t"), 1, 1), UsageError);
  EXPECT_THROW(Modulus(P(k3, "t"), 1, 0), UsageError);
}

TEST(RayClassGroup, GroupLaws) {
  auto g = rng(50);
  auto k = Fq::make(2);
  RayClassGroup G(Modulus(P(k, "t^2+t"), 4, 3));
  auto all = G.enumerate();
  ASSERT_EQ(all.size(), G.order());
  EXPECT_EQ(std::set<RayClass>(all.begin(), all.end()).size(), all.size());
  for (int it = 0; it < 100; ++it) {
    const auto& a = all[g() % all.size()];
    const auto& b = all[g() % all.size()];
    const auto& c = all[g() % all.size()];
    EXPECT_EQ(G.mul(G.mul(a, b), c), G.mul(a, G.mul(b, c)));
    EXPECT_EQ(G.mul(a, b), G.mul(b, a));
    EXPECT_EQ(G.mul(a, G.inv(a)), G.identity());
    EXPECT_EQ(G.pow(a, static_cast<long long>(G.order())), G.identity());
  }
}

TEST(Idele, UniformizerInverseExamples) {
  auto k = Fq::make(3);
  Modulus M(P(k, "t"), 1, 1);
  auto c = idele_reduce(IdeleRep::uniformizer_inverse(P(k, "t+1"), 1), M);
  EXPECT_EQ(c.finite, P(k, "1"));
  EXPECT_EQ(c.constant, 0u);
  Modulus M2(P(k, "t"), 2, 2);
  auto c2 = idele_reduce(IdeleRep::uniformizer_inverse(P(k, "t+1"), 2), M2);
  EXPECT_EQ(c2.finite, P(k, "1"));
  EXPECT_EQ(c2.infty, (std::vector<KElem>{k->one()}));
  EXPECT_EQ(c2.constant, 1u);
  EXPECT_THROW(idele_reduce(IdeleRep::uniformizer_inverse(P(k, "t+1"), 1), M2), PrecisionError);
}

TEST(Idele, ReductionIsMultiplicative) {
  auto g = rng(51);
  auto k = Fq::make(3);
  const Modulus M(P(k, "t^3+t^2"), 3, 4);
  const RayClassGroup G(M);
  const std::vector<PolyA> places{P(k, "t"), P(k, "t+1"), P(k, "t+2"), P(k, "t^2+1")};
  for (int it = 0; it < 100; ++it) {
    auto a = random_idele(k, places, 3, g), b = random_idele(k, places, 3, g);
    EXPECT_EQ(idele_reduce(a * b, M), G.mul(idele_reduce(a, M), idele_reduce(b, M)));
  }
}

TEST(Idele, PrincipalIdelesAreTrivial) {
  auto g = rng(52);
  for (unsigned q : {2u, 3u}) {
    auto k = Fq::make(q);
    for (const auto& m : {P(k, "t^2"), P(k, "t^2+t+1"), PolyA::one(k)}) {
      const Modulus M(m, 3, 3);
      const RayClassGroup G(M);
      std::vector<PolyA> at;
      if (m.degree() > 0)
        for (const auto& [l, e] : factor_poly(m)) at.push_back(l);
      for (int it = 0; it < 17; ++it) {
        auto f = random_rat(k, 3, g);
        EXPECT_EQ(idele_reduce(IdeleRep::principal(f, 3, at), M), G.identity()) << f.to_string();
      }
    }
  }
}

TEST(FrobeniusClass, WorkedExampleAndDomain) {
  auto k = Fq::make(3);
  FrobeniusData data;
  const Modulus M(P(k, "t"), 2, 2);
  auto c = frobenius_class_paths(P(k, "t+1"), M, data);
  EXPECT_TRUE(c.agree());
  EXPECT_EQ(c.galois.finite, P(k, "1"));
  EXPECT_EQ(c.galois.infty, (std::vector<KElem>{k->one()}));
  EXPECT_EQ(c.galois.constant, 1u);
  EXPECT_THROW(frobenius_class(P(k, "t"), Modulus(P(k, "t"), 1, 1), data), DomainError);
}

TEST(FrobeniusClass, ConstantFieldComponentOnly) {
  auto k = Fq::make(2);
  FrobeniusData data;
  for (unsigned d = 1; d <= 4; ++d)
    for (const auto& f : primes_up_to(k, 4)) {
      auto c = frobenius_class(f, Modulus(PolyA::one(k), 1, d), data);
      EXPECT_EQ(c.constant, static_cast<std::uint64_t>(f.degree()) % d);
    }
}

TEST(FrobeniusClass, WordsAreMultiplicative) {
  auto k = Fq::make(3);
  FrobeniusData data;
  const Modulus M(P(k, "t^2+1"), 3, 2);
  const RayClassGroup G(M);
  auto ps = primes_up_to(k, 2);
  for (const auto& a : ps)
    for (const auto& b : ps) {
      if (a.divides(M.m) || b.divides(M.m)) continue;
      FrobeniusWord w{{{a, 1}, {b, 1}}};
      auto cw = frobenius_class(w, M, data);
      EXPECT_EQ(cw, G.mul(frobenius_class(a, M, data), frobenius_class(b, M, data)));
      auto idelic = idele_reduce(IdeleRep::uniformizer_inverse(a, 3) * IdeleRep::uniformizer_inverse(b, 3), M);
      EXPECT_EQ(cw, idelic);
      EXPECT_EQ(w.degree(), a.degree() + b.degree());
    }
  FrobeniusWord inv{{{P(k, "t"), -1}}};
  EXPECT_EQ(frobenius_class(inv, M, data), G.inv(frobenius_class(P(k, "t"), M, data)));
}

TEST(Reciprocity, TwelveClassSweep) {
  auto k = Fq::make(3);
  FrobeniusData data;
  auto rep = verify_reciprocity(Modulus(P(k, "t"), 2, 2), 4, data);
  EXPECT_EQ(rep.group_order, 12u);
  EXPECT_TRUE(rep.disagreements.empty());
  EXPECT_TRUE(rep.surjective());
  ASSERT_TRUE(rep.full_at.has_value());
  EXPECT_LE(*rep.full_at, 4u);
  EXPECT_TRUE(rep.pass());
  EXPECT_FALSE(rep.extended);
}

TEST(Reciprocity, TrivialGroup) {
  auto k = Fq::make(2);
  FrobeniusData data;
  auto rep = verify_reciprocity(Modulus(PolyA::one(k), 1, 1), 2, data);
  EXPECT_EQ(rep.group_order, 1u);
  EXPECT_TRUE(rep.pass());
  EXPECT_EQ(*rep.full_at, 0u);
}

TEST(Reciprocity, BranchIndependentData) {
  auto k = Fq::make(3);
  FrobeniusData b0(0), b1(1);
  const Modulus M(P(k, "t^2"), 3, 3);
  for (const auto& f : primes_up_to(k, 3)) {
    if (f.divides(M.m)) continue;
    EXPECT_EQ(frobenius_class(f, M, b0), frobenius_class(f, M, b1)) << f.to_string();
  }
}

TEST(FieldGenerators, Examples) {
  auto k3 = Fq::make(3);
  auto g1 = field_generators(Modulus(P(k3, "t"), 1, 1));
  EXPECT_EQ(g1.psi_m, "X^2 + t");
  EXPECT_EQ(g1.predicted_degree, 2u);
  ASSERT_TRUE(g1.eisenstein.has_value());
  EXPECT_TRUE(g1.eisenstein->holds());
  auto g2 = field_generators(Modulus(PolyA::one(k3), 2, 1));
  ASSERT_EQ(g2.wild_relations.size(), 1u);
  EXPECT_EQ(g2.wild_relations[0], "a1^3 - a1 = -t");
  EXPECT_EQ(g2.predicted_degree, 3u);
  EXPECT_EQ(field_generators(Modulus(PolyA::one(k3), 1, 3)).predicted_degree, 3u);
  EXPECT_EQ(field_generators(Modulus(P(k3, "t"), 2, 1)).predicted_degree, 6u);
  EXPECT_EQ(field_generators(Modulus(P(k3, "t^2"), 1, 1)).torsion_degree, 6u);
  auto g5 = field_generators(Modulus(PolyA::one(Fq::make(2)), 1, 1));
  EXPECT_EQ(g5.predicted_degree, 1u);
  EXPECT_TRUE(g5.wild_relations.empty());
  EXPECT_EQ(g5.group_order, 1u);
}
