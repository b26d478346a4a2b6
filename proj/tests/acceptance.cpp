// Acceptance run: one PASS/FAIL line per criterion, with the measured time
// against its limit.  Exit status is the number of failed criteria.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "carlitz/carlitz.hpp"

using namespace carlitz;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::vector<PolyA> moduli_up_to(const FqPtr& k, unsigned max_deg) {
  std::vector<PolyA> ms{PolyA::one(k)};
  for (unsigned d = 1; d <= max_deg; ++d)
    for (auto& m : monic_polys_of_degree(k, d)) ms.push_back(m);
  return ms;
}

PolyA random_poly(const FqPtr& k, unsigned max_deg, std::mt19937_64& g) {
  KPoly c(max_deg + 1);
  for (auto& x : c) x = k->random(g);
  return PolyA(k, c);
}

PolyA random_nonzero(const FqPtr& k, unsigned max_deg, std::mt19937_64& g) {
  for (;;)
    if (auto p = random_poly(k, max_deg, g); !p.is_zero()) return p;
}

RatA random_rat(const FqPtr& k, unsigned max_deg, std::mt19937_64& g) { return RatA(random_nonzero(k, max_deg, g), random_nonzero(k, max_deg, g)); }

// AC1: chi_m(Frob_p) = p mod m.
Outcome finite_part() {
  std::size_t pairs = 0, bad = 0;
  for (unsigned q : {2u, 3u, 4u}) {
    auto k = Fq::make(q);
    const auto primes = primes_up_to(k, 4);
    for (const auto& m : moduli_up_to(k, 2))
      for (const auto& f : primes) {
        if (f.divides(m)) continue;
        ++pairs;
        const PolyA expect = m.degree() == 0 ? PolyA(k) : f % m;
        if (!(chi_frobenius(PrimeA(f), m) == expect)) ++bad;
      }
  }
  return {bad == 0, std::to_string(pairs) + " pairs (q in {2,3,4}, deg m <= 2, deg p <= 4), " + std::to_string(bad) + " mismatches"};
}

// AC2: rho_infty(Frob_p) is the class of p mod 1 + m_infty^e, of degree deg p.
Outcome infty_part() {
  std::size_t cases = 0, bad = 0;
  for (unsigned q : {2u, 3u}) {
    auto k = Fq::make(q);
    for (const auto& f : primes_up_to(k, 4))
      for (unsigned e = 1; e <= 3; ++e) {
        ++cases;
        const auto r = rho_infty_frobenius(PrimeA(f), e);
        if (!(r == infty_class_of(f, e)) || r.deg != f.degree()) ++bad;
      }
  }
  return {bad == 0, std::to_string(cases) + " (p, e) with q in {2,3}, e <= 3, deg p <= 4; " + std::to_string(bad) + " mismatches"};
}

// AC3: idelic and Galois routes agree; the classes of primes cover C_F/U.
Outcome path_agreement() {
  std::size_t mods = 0, rows = 0, disagreements = 0, uncovered = 0, extended = 0;
  unsigned max_full = 0;
  for (unsigned q : {2u, 3u}) {
    auto k = Fq::make(q);
    FrobeniusData data;
    for (const auto& m : moduli_up_to(k, 2))
      for (unsigned e = 0; e <= 3; ++e)
        for (unsigned d = 1; d <= 4; ++d) {
          ++mods;
          const Modulus M(m, e, d);
          const auto rep = verify_reciprocity(M, 4, data, 2 * (static_cast<unsigned>(m.degree()) + M.e + d));
          rows += rep.rows.size();
          disagreements += rep.disagreements.size();
          if (!rep.full_at)
            ++uncovered;
          else
            max_full = std::max(max_full, *rep.full_at);
          extended += rep.extended;
        }
  }
  return {disagreements == 0 && uncovered == 0,
          std::to_string(mods) + " moduli (q in {2,3}, deg m <= 2, e <= 3, d <= 4), " + std::to_string(rows) + " prime rows, " +
              std::to_string(disagreements) + " disagreements; surjective for all but " + std::to_string(uncovered) +
              ", reached by D = " + std::to_string(max_full) + (extended ? " (" + std::to_string(extended) + " beyond the sweep)" : "")};
}

// AC4: the algebraic identities.
Outcome identities() {
  std::mt19937_64 g(0xac4);
  std::size_t bad = 0;
  std::string where;
  auto fail = [&](const std::string& what) {
    if (!bad) where = what;
    ++bad;
  };
  const std::vector<unsigned> qs{2, 3, 4};

  // Homomorphism laws, 100 pairs.
  for (int it = 0; it < 100; ++it) {
    auto k = Fq::make(qs[it % 3]);
    const auto M = CarlitzModule<RatField>::generic(RatField::make(k));
    const auto a = random_poly(k, 3, g), b = random_poly(k, 3, g);
    if (!(M.phi(a + b) == M.phi(a) + M.phi(b)) || !(M.phi(a * b) == M.phi(a) * M.phi(b))) fail("homomorphism");
  }

  // phi_a phi_x = (a*phi)_x phi_a for a = (w), 50 pairs.
  for (int it = 0; it < 50; ++it) {
    auto k = Fq::make(qs[it % 3]);
    const auto M = CarlitzModule<RatField>::generic(RatField::make(k));
    const auto w = random_nonzero(k, 2, g), x = random_poly(k, 3, g);
    const auto r = ideal_action(M, w);
    const auto lhs = r.phi_a * M.phi(x);
    auto [quot, rem] = right_divide(lhs, r.phi_a);
    if (!rem.is_zero() || !(quot == r.target.phi(x)) || !(lhs == r.target.phi(x) * r.phi_a)) fail("isogeny");
  }

  // Ideal action: (i) phi_{ab} = (b*phi)_a phi_b and a*(b*phi) = (ab)*phi;
  // (ii) the left-ideal generator is mu(w)^{-1} phi_w and (a*phi)_x = mu(w)^{-1} phi_x mu(w).
  for (int it = 0; it < 50; ++it) {
    auto k = Fq::make(qs[it % 3]);
    auto F = RatField::make(k);
    const auto M = CarlitzModule<RatField>::generic(F);
    const auto Mp = CarlitzModule<PerfectedField>::generic(PerfectedField::make(k));
    const auto a = random_nonzero(k, 2, g), b = random_nonzero(k, 2, g), x = random_poly(k, 2, g);
    const auto rb = ideal_action(M, b);
    const auto ra_b = ideal_action(rb.target, a);
    const auto rab = ideal_action(M, a * b);
    if (!(rab.phi_a == ra_b.phi_a * rb.phi_a) || !(rab.target.phi_t() == ra_b.target.phi_t())) fail("ideal action (i)");
    const auto gen = left_ideal_generator<RatField>({M.phi(a), M.phi(a * PolyA::t(k))});
    const auto mu_a = F->from_k(mu(Mp, RatA(a)));
    const auto closed = M.phi(a).left_scale(F->inv(mu_a));
    const auto conj = M.phi(x).left_scale(F->inv(mu_a)).right_scale(mu_a);
    auto [quot, rem] = right_divide(gen * M.phi(x), gen);
    if (!(gen == closed) || !rem.is_zero() || !(quot == conj)) fail("ideal action (ii)");
  }

  // mu(xy) = mu(x) mu(y)^{1/q^{ord x}}, 100 pairs.
  for (int it = 0; it < 100; ++it) {
    auto k = Fq::make(qs[it % 3]);
    const auto Mp = CarlitzModule<PerfectedField>::generic(PerfectedField::make(k));
    if (!sign_relation_holds(Mp, random_rat(k, 3, g), random_rat(k, 3, g))) fail("sign relation");
  }

  // ord_{tau^{-1}} phi_x = ord_infty x (rank 1, d_infty = 1), 50 elements of F_infty.
  for (int it = 0; it < 50; ++it) {
    auto k = Fq::make(qs[it % 3]);
    const auto Mp = CarlitzModule<PerfectedField>::generic(PerfectedField::make(k));
    std::vector<KElem> d(3);
    for (auto& c : d) c = k->random(g);
    while (d[0].v == 0) d[0] = k->random(g);
    const LaurentT x(k, static_cast<long>(g() % 7) - 3, d);
    if (Mp.phi_laurent(x, 3).ord() != x.ord()) fail("rank valuation");
  }

  // phi_t u = u tau to precision 6.
  for (unsigned q : {2u, 3u})
    if (!u_identity_holds(build_tower(Fq::make(q), 5), 6)) fail("u identity");

  return {bad == 0, "homomorphism 100, isogeny 50, ideal action 50, sign relation 100, rank valuation 50, u identity to precision 6; " +
                        std::to_string(bad) + " failures" + (bad ? " (first: " + where + ")" : "")};
}

// AC5: structure of the torsion and the Eisenstein property.
Outcome structure() {
  std::size_t pairs = 0, bad_size = 0, bad_cyclic = 0, bad_law = 0, eis = 0, bad_eis = 0;
  for (unsigned q : {2u, 3u, 4u}) {
    auto k = Fq::make(q);
    const auto primes = primes_up_to(k, 4);
    for (const auto& m : moduli_up_to(k, 2)) {
      if (m.degree() == 0) continue;
      for (const auto& f : primes) {
        if (f.divides(m)) continue;
        ++pairs;
        const PrimeA p(f);
        const auto T = torsion_space(p, m);
        std::uint64_t expect = 1;
        for (long i = 0; i < m.degree(); ++i) expect *= q;
        if (T.roots.size() != expect) ++bad_size;
        if (!torsion_is_cyclic(T)) ++bad_cyclic;
        if (!splitting_degree_law(p, m).agree()) ++bad_law;
      }
    }
  }
  for (unsigned q : {2u, 3u})
    for (const auto& f : primes_up_to(Fq::make(q), 3)) {
      ++eis;
      if (!cyclotomic_check(f).holds()) ++bad_eis;
    }
  const bool ok = !bad_size && !bad_cyclic && !bad_law && !bad_eis;
  return {ok, std::to_string(pairs) + " (p, m): size failures " + std::to_string(bad_size) + ", not cyclic " + std::to_string(bad_cyclic) +
                  ", s_factored != s_group " + std::to_string(bad_law) + "; Eisenstein " + std::to_string(eis - bad_eis) + "/" + std::to_string(eis)};
}

// AC6: the second-smallest root rule gives the same classes.
Outcome branches() {
  std::size_t cases = 0, bad = 0;
  for (unsigned q : {2u, 3u}) {
    auto k = Fq::make(q);
    for (const auto& f : primes_up_to(k, 4))
      for (unsigned e = 1; e <= 2; ++e) {
        ++cases;
        const PrimeA p(f);
        if (!(rho_infty_frobenius(p, e, 0) == rho_infty_frobenius(p, e, 1))) ++bad;
      }
  }
  return {bad == 0, std::to_string(cases) + " (p, e) with q in {2,3}, e <= 2, deg p <= 4; " + std::to_string(bad) + " differ"};
}

// AC7: the worked example at q = 3, p = t + 1, each value recomputed by brute force.
Outcome worked_example() {
  auto k = Fq::make(3);
  const auto t = PolyA::t(k);
  const auto pp = PolyA::parse(k, "t+1");
  const PrimeA p(pp);
  auto E = ExtField::canonical(k, 3);
  std::vector<ExtField::value_type> gf27;
  for (unsigned i = 0; i < 27; ++i) gf27.push_back({k->element(i % 3), k->element(i / 3 % 3), k->element(i / 9)});
  const KElem tbar = k->neg(k->one());  // t = -1 mod t+1
  std::vector<std::string> bad;

  // chi_t: roots of tbar X + X^3 in GF(27), a generator, and the a in {1, 2} with phi_a(xi) = xi^3.
  std::vector<ExtField::value_type> roots;
  for (const auto& x : gf27)
    if (E->is_zero(E->add(E->scale(x, tbar), E->pow(x, 3)))) roots.push_back(x);
  if (roots.size() != 3) bad.push_back("|phi[t]|");
  ExtField::value_type xi = E->zero();
  for (const auto& x : roots)
    if (!E->is_zero(x)) xi = x;
  KElem chi_brute = k->zero();
  for (unsigned a = 1; a < 3; ++a)
    if (E->scale(xi, k->element(a)) == E->pow(xi, 3)) chi_brute = k->element(a);
  const auto [quot, rem] = pp.divmod(t);
  (void)quot;
  if (!(PolyA::constant(k, chi_brute) == rem) || !(chi_frobenius(p, t) == rem) || !(rem == PolyA::one(k))) bad.push_back("chi_t");

  // c_1: a root alpha of y^3 - y = -tbar in GF(27), then alpha^{N(p)} - alpha.
  std::optional<ExtField::value_type> alpha;
  for (const auto& x : gf27)
    if (!alpha && E->sub(E->pow(x, 3), x) == E->from_k(k->neg(tbar))) alpha = x;
  KElem c1_brute = k->zero();
  if (alpha) {
    auto c = E->to_k(E->sub(E->pow(*alpha, p.norm()), *alpha));
    if (c) c1_brute = *c;
  }
  if (!alpha || c1_brute != k->one() || frobenius_on_tower(p, 1).c(1) != c1_brute) bad.push_back("c_1");

  // beta: (t + 1) / t by long division in powers of 1/t.
  // Dividing by t^deg shifts: digit i is the t^{deg - i} coefficient.
  std::vector<KElem> beta_brute;
  for (long i = 0; i < 2; ++i) beta_brute.push_back(pp.coeff(static_cast<std::size_t>(pp.degree() - i)));
  const auto beta = beta_deg(rho_infty_frobenius(p, 2));
  if (beta.digits() != beta_brute || beta_brute != std::vector<KElem>{k->one(), k->one()} || beta.digits()[1] != c1_brute) bad.push_back("beta");

  // The class in C_F/U for U = (t, 2, 2) on both routes against the assembled triple.
  FrobeniusData data;
  const Modulus M(t, 2, 2);
  const auto c = frobenius_class_paths(pp, M, data);
  RayClass expect{rem, {beta_brute[1]}, static_cast<std::uint64_t>(pp.degree() % 2)};
  if (!c.agree() || !(c.galois == expect)) bad.push_back("class");

  std::string detail = "chi_t = 1, c_1 = 1, beta = 1 + t^-1, class (1, 1+t^-1, 1 mod 2)";
  if (!bad.empty()) {
    detail += "; mismatched:";
    for (const auto& b : bad) detail += " " + b;
  }
  return {bad.empty(), detail};
}

}  // namespace

int main() {
  struct Criterion {
    const char* id;
    const char* name;
    double limit;  // seconds; 0 for none
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> all{
      {"AC1", "finite-part reciprocity", 60, finite_part},
      {"AC2", "infinite-part reciprocity", 120, infty_part},
      {"AC3", "path agreement and surjectivity", 0, path_agreement},
      {"AC4", "algebraic identities", 10, identities},
      {"AC5", "torsion structure", 0, structure},
      {"AC6", "branch independence", 0, branches},
      {"AC7", "worked example oracles", 0, worked_example},
  };
  int failed = 0;
  for (const auto& c : all) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = c.limit == 0 || secs < c.limit;
    const bool pass = o.pass && in_time;
    failed += !pass;
    char timing[64];
    if (c.limit > 0)
      std::snprintf(timing, sizeof timing, "%.2f s, limit %.0f s", secs, c.limit);
    else
      std::snprintf(timing, sizeof timing, "%.2f s", secs);
    std::printf("%s %s  %s: %s [%s]\n", c.id, pass ? "PASS" : "FAIL", c.name, o.detail.c_str(), timing);
    std::fflush(stdout);
  }
  return failed;
}
