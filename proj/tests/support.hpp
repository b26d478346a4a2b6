#pragma once

#include <cstdint>
#include <random>

#include "carlitz/carlitz.hpp"

namespace carlitz::testing {

inline std::mt19937_64 rng(std::uint64_t salt = 0) { return std::mt19937_64(0x5eed0000ULL + salt); }

inline PolyA random_poly(const FqPtr& k, unsigned max_deg, std::mt19937_64& g) {
  KPoly c(max_deg + 1);
  for (auto& x : c) x = k->random(g);
  return PolyA(k, c);
}

inline PolyA random_nonzero(const FqPtr& k, unsigned max_deg, std::mt19937_64& g) {
  for (;;) {
    auto p = random_poly(k, max_deg, g);
    if (!p.is_zero()) return p;
  }
}

inline PolyA random_monic(const FqPtr& k, unsigned deg, std::mt19937_64& g) {
  auto c = random_poly(k, deg, g).coeffs();
  c.resize(deg + 1, k->zero());
  c[deg] = k->one();
  return PolyA(k, c);
}

inline RatA random_rat(const FqPtr& k, unsigned max_deg, std::mt19937_64& g) {
  return RatA(random_nonzero(k, max_deg, g), random_nonzero(k, max_deg, g));
}

inline PolyA P(const FqPtr& k, const char* s) { return PolyA::parse(k, s); }

}  // namespace carlitz::testing
