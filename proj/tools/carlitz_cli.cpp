// carlitz: verification sweeps and tables for explicit class field theory of
// k(t) via the Carlitz module.
//
// Exit codes: 0 all checks pass, 1 a check failed or an internal invariant
// broke, 2 invalid usage.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "carlitz/carlitz.hpp"

namespace {

using carlitz::FqPtr;
using carlitz::KElem;
using carlitz::PolyA;
using nlohmann::json;

constexpr unsigned kMaxQ = 64;
constexpr long kMaxModulusDegree = 4;
constexpr unsigned kMaxPrecision = 12;
constexpr unsigned kMaxDegreeBound = 8;

struct RunConfig {
  std::string q = "3";
  std::string m = "1";
  unsigned e = 1;
  unsigned d = 1;
  unsigned degree_bound = 4;
  unsigned precision = 6;
  unsigned tower_cap = carlitz::TowerField::kDefaultCap;
  std::uint64_t seed = carlitz::kDefaultSeed;
  unsigned branch = 0;
  std::string format = "text";
  std::string output;
  unsigned threads = 1;
};

// Validated inputs.
struct Setup {
  FqPtr k;
  carlitz::Modulus M;
};

unsigned parse_q(const std::string& s) {
  const auto caret = s.find('^');
  try {
    std::size_t used = 0;
    if (caret == std::string::npos) {
      const unsigned long q = std::stoul(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return static_cast<unsigned>(q);
    }
    const unsigned long p = std::stoul(s.substr(0, caret), &used);
    if (used != caret) throw std::invalid_argument(s);
    const std::string tail = s.substr(caret + 1);
    const unsigned long n = std::stoul(tail, &used);
    if (used != tail.size() || n == 0 || n > 16) throw std::invalid_argument(s);
    unsigned long q = 1;
    for (unsigned long i = 0; i < n && q <= 1u << 16; ++i) q *= p;
    return static_cast<unsigned>(q);
  } catch (const std::logic_error&) {
    throw carlitz::UsageError("cannot read field order '" + s + "'");
  }
}

Setup validate(const RunConfig& c) {
  const unsigned q = parse_q(c.q);
  if (q > kMaxQ) throw carlitz::UsageError("q = " + std::to_string(q) + " exceeds " + std::to_string(kMaxQ));
  Setup s;
  s.k = carlitz::Fq::make(q);
  const PolyA m = PolyA::parse(s.k, c.m);
  if (m.is_zero() || !m.is_monic()) throw carlitz::UsageError("modulus m must be monic and nonzero");
  if (m.degree() > kMaxModulusDegree) throw carlitz::UsageError("deg m exceeds " + std::to_string(kMaxModulusDegree));
  if (c.e > c.tower_cap + 1) throw carlitz::UsageError("e = " + std::to_string(c.e) + " needs tower depth beyond the cap " + std::to_string(c.tower_cap));
  if (c.d == 0) throw carlitz::UsageError("d must be >= 1");
  if (c.precision == 0 || c.precision > kMaxPrecision) throw carlitz::UsageError("precision must lie in 1.." + std::to_string(kMaxPrecision));
  if (c.degree_bound > kMaxDegreeBound) throw carlitz::UsageError("degree bound exceeds " + std::to_string(kMaxDegreeBound));
  if (c.branch > 1) throw carlitz::UsageError("branch must be 0 or 1");
  if (c.threads == 0) throw carlitz::UsageError("threads must be >= 1");
  s.M = carlitz::Modulus(m, c.e, c.d);
  return s;
}

std::string digits_string(const carlitz::Fq& k, const std::vector<KElem>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + k.format(v[i]);
  return s + ")";
}

json modulus_json(const carlitz::Modulus& M) { return {{"m", M.m.to_string()}, {"e", M.e}, {"d", M.d}}; }

json class_json(const carlitz::RayClassGroup& G, const carlitz::RayClass& c) {
  return {{"finite", G.format_finite(c)}, {"infty", G.format_infty(c)}, {"const", c.constant}};
}

class Emitter {
 public:
  Emitter(std::ostream& os, bool json) : os_(os), json_(json) {}
  bool json() const { return json_; }
  void row(const nlohmann::json& j) {
    if (json_) os_ << j.dump() << '\n';
  }
  void text(const std::string& line) {
    if (!json_) os_ << line << '\n';
  }

 private:
  std::ostream& os_;
  bool json_;
};

// Computes chi and rho for every prime up front, spread over threads; the
// sweep itself then runs from the cache in a fixed order.
void warm(const carlitz::FrobeniusData& data, const Setup& s, unsigned D, unsigned threads) {
  std::vector<PolyA> primes;
  for (unsigned n = 1; n <= D; ++n)
    for (auto& p : carlitz::primes_of_degree(s.k, n))
      if (!p.divides(s.M.m)) primes.push_back(p);
  carlitz::parallel_map<int>(primes.size(), threads, [&](std::size_t i) {
    data.chi(primes[i], s.M.m);
    data.rho(primes[i], s.M.e);
    return 0;
  });
}

bool emit_frobenius_rows(Emitter& out, const Setup& s, const carlitz::ReciprocityReport& rep) {
  const carlitz::RayClassGroup G(s.M);
  bool ok = true;
  for (const auto& r : rep.rows) {
    ok = ok && r.agree();
    out.row({{"kind", "frobenius"},
             {"q", s.k->q()},
             {"modulus", modulus_json(s.M)},
             {"prime", r.prime.to_string()},
             {"class", class_json(G, r.galois)},
             {"expected", class_json(G, r.idelic)},
             {"pass", r.agree()}});
    out.text(r.prime.to_string() + "  " + G.format(r.galois) + "  expected " + G.format(r.idelic) + (r.agree() ? "  ok" : "  FAIL"));
  }
  return ok;
}

int cmd_verify(const RunConfig& c, std::ostream& os) {
  const Setup s = validate(c);
  Emitter out(os, c.format == "json");
  const carlitz::FrobeniusData data(c.branch);
  warm(data, s, c.degree_bound, c.threads);
  const unsigned extend = 2 * static_cast<unsigned>(s.M.m.degree() + s.M.e + s.M.d);
  const auto rep = carlitz::verify_reciprocity(s.M, c.degree_bound, data, std::min(extend, kMaxDegreeBound));
  out.text("# reciprocity for U" + s.M.to_string() + " over GF(" + std::to_string(s.k->q()) + "), primes of degree <= " + std::to_string(c.degree_bound));
  bool ok = emit_frobenius_rows(out, s, rep);

  // Torsion structure at every admissible prime.
  out.text("# torsion phi[" + s.M.m.to_string() + "]");
  for (const auto& r : rep.rows) {
    const carlitz::PrimeA P(r.prime);
    const auto T = carlitz::torsion_space(P, s.M.m);
    const auto law = carlitz::splitting_degree_law(P, s.M.m);
    const bool count = T.roots.size() == static_cast<std::size_t>(carlitz::PerfectedRational::ipow(s.k->q(), static_cast<unsigned>(s.M.m.degree())));
    const bool cyclic = carlitz::torsion_is_cyclic(T);
    const PolyA chi = data.chi(r.prime, s.M.m);
    const PolyA expected = carlitz::UnitGroupModM(s.M.m).reduce(r.prime);
    const bool pass = count && cyclic && law.agree() && chi == expected;
    ok = ok && pass;
    out.row({{"kind", "torsion"},
             {"q", s.k->q()},
             {"prime", r.prime.to_string()},
             {"m", s.M.m.to_string()},
             {"chi", chi.to_string()},
             {"expected", expected.to_string()},
             {"roots", T.roots.size()},
             {"cyclic", cyclic},
             {"s_factored", law.s_factored},
             {"s_group", law.s_group},
             {"pass", pass}});
    out.text(r.prime.to_string() + "  chi=" + chi.to_string() + "  |phi[m]|=" + std::to_string(T.roots.size()) + "  s=" + std::to_string(law.s_factored) + "/" +
             std::to_string(law.s_group) + (pass ? "  ok" : "  FAIL"));
  }

  // The tower and u.
  const unsigned P = c.precision;
  bool u_ok = false;
  if (P - 1 <= c.tower_cap) u_ok = carlitz::u_identity_holds(carlitz::build_tower(s.k, P - 1, c.tower_cap), P);
  ok = ok && u_ok;
  out.row({{"kind", "u_identity"}, {"q", s.k->q()}, {"precision", P}, {"pass", u_ok}});
  out.text("# phi_t u = u tau to precision " + std::to_string(P) + (u_ok ? "  ok" : "  FAIL"));

  const carlitz::RayClassGroup G(s.M);
  const bool surj = rep.full_at.has_value();
  ok = ok && surj && rep.disagreements.empty();
  json full = rep.full_at ? json(*rep.full_at) : json(nullptr);
  out.row({{"kind", "summary"},
           {"q", s.k->q()},
           {"modulus", modulus_json(s.M)},
           {"degree_bound", c.degree_bound},
           {"primes", rep.rows.size()},
           {"group_order", G.order()},
           {"image_size", rep.image_size},
           {"full_at", full},
           {"extended", rep.extended},
           {"disagreements", rep.disagreements.size()},
           {"pass", ok}});
  std::ostringstream sum;
  sum << "# |C_F/U| = " << G.order() << ", image of primes <= " << c.degree_bound << ": " << rep.image_size;
  if (rep.full_at) sum << ", full coverage at D = " << *rep.full_at << (rep.extended ? " (beyond the sweep, idelic classes)" : "");
  else sum << ", coverage incomplete";
  sum << (ok ? "\nPASS" : "\nFAIL");
  out.text(sum.str());
  return ok ? 0 : 1;
}

int cmd_tables(const RunConfig& c, std::ostream& os) {
  const Setup s = validate(c);
  Emitter out(os, c.format == "json");
  const carlitz::FrobeniusData data(c.branch);
  warm(data, s, c.degree_bound, c.threads);
  const auto rep = carlitz::verify_reciprocity(s.M, c.degree_bound, data);
  out.text("# Frobenius classes in C_F/U" + s.M.to_string() + ", q = " + std::to_string(s.k->q()));
  return emit_frobenius_rows(out, s, rep) ? 0 : 1;
}

int cmd_generators(const RunConfig& c, std::ostream& os) {
  const Setup s = validate(c);
  const auto g = carlitz::field_generators(s.M);
  if (c.format == "json") {
    json j{{"kind", "generators"}, {"q", s.k->q()}, {"modulus", modulus_json(s.M)}};
    j["torsion"] = {{"phi_m", g.phi_m}, {"psi_m", g.psi_m}, {"degree", g.torsion_degree}};
    if (g.eisenstein) j["torsion"]["eisenstein"] = g.eisenstein->holds();
    j["constant"] = {{"degree", g.constant_degree}};
    j["wild"] = {{"relations", g.wild_relations}, {"degree", g.wild_degree}};
    j["degree"] = g.predicted_degree;
    j["group_order"] = g.group_order;
    os << j.dump() << '\n';
  } else {
    os << "L_U for U" << s.M.to_string() << " over F = GF(" << s.k->q() << ")(t)\n";
    if (g.torsion_degree > 1 || s.M.m.degree() > 0) {
      os << "  torsion: F(xi), xi a root of Psi_m(X) = " << (g.psi_m.empty() ? "X - 1" : g.psi_m) << "\n";
      if (!g.phi_m.empty()) os << "           phi_m(X) = " << g.phi_m << "\n";
      if (g.eisenstein) os << "           Eisenstein at m: " << (g.eisenstein->holds() ? "yes" : "no") << "\n";
      os << "           degree " << g.torsion_degree << "\n";
    }
    if (g.constant_degree > 1) os << "  constant: adjoin GF(" << s.k->q() << "^" << g.constant_degree << "), degree " << g.constant_degree << "\n";
    if (!g.wild_relations.empty()) {
      os << "  wild:";
      for (const auto& r : g.wild_relations) os << "  " << r << ";";
      os << " degree " << g.wild_degree << "\n";
    }
    if (g.predicted_degree == 1) os << "  trivial extension: L_U = F\n";
    os << "  [L_U : F] = " << g.predicted_degree << " = |C_F/U| = " << g.group_order << "\n";
  }
  return g.predicted_degree == g.group_order ? 0 : 1;
}

int cmd_tower(const RunConfig& c, std::ostream& os) {
  const Setup s = validate(c);
  Emitter out(os, c.format == "json");
  const unsigned depth = s.M.e - 1;
  const auto T = carlitz::build_tower(s.k, depth, c.tower_cap);
  const bool rel = T->relations_hold();
  const bool uid = carlitz::u_identity_holds(T, depth + 1);
  bool ok = rel && uid;
  out.row({{"kind", "tower"}, {"q", s.k->q()}, {"depth", depth}, {"dimension", T->dimension()}, {"relations", rel}, {"u_identity", uid}});
  out.text("# L_" + std::to_string(depth) + " over GF(" + std::to_string(s.k->q()) + ")(t): dimension " + std::to_string(T->dimension()) + ", relations " +
           (rel ? "ok" : "FAIL") + ", phi_t u = u tau to precision " + std::to_string(depth + 1) + " " + (uid ? "ok" : "FAIL"));
  for (unsigned n = 1; n <= c.degree_bound; ++n) {
    for (const auto& p : carlitz::primes_of_degree(s.k, n)) {
      const carlitz::PrimeA P(p);
      const auto sigma = carlitz::frobenius_on_tower(P, depth, c.branch);
      const auto rho = carlitz::rho_infty_frobenius(P, s.M.e, c.branch, c.tower_cap);
      const auto expected = carlitz::infty_class_of(p, s.M.e);
      const bool pass = rho == expected;
      ok = ok && pass;
      out.row({{"kind", "rho_infty"},
               {"q", s.k->q()},
               {"prime", p.to_string()},
               {"e", s.M.e},
               {"cocycle", digits_string(*s.k, sigma.cocycle())},
               {"class", rho.to_string()},
               {"deg", rho.deg},
               {"expected", expected.to_string()},
               {"pass", pass}});
      out.text(p.to_string() + "  c=" + sigma.to_string() + "  rho=" + rho.to_string() + "  deg=" + std::to_string(rho.deg) + (pass ? "  ok" : "  FAIL"));
    }
  }
  return ok ? 0 : 1;
}

int cmd_torsion_poly(const RunConfig& c, std::ostream& os) {
  const Setup s = validate(c);
  const auto& m = s.M.m;
  const auto phi = carlitz::format_apoly(carlitz::phi_polynomial(m));
  const auto psi = carlitz::format_apoly(carlitz::primitive_torsion_polynomial(m));
  std::optional<carlitz::EisensteinCertificate> eis;
  if (m.degree() > 0 && carlitz::is_irreducible(m)) eis = carlitz::cyclotomic_check(m);
  const std::uint64_t order = carlitz::UnitGroupModM(m).order();
  if (c.format == "json") {
    json j{{"kind", "torsion_poly"}, {"q", s.k->q()}, {"m", m.to_string()}, {"phi_m", phi}, {"psi_m", psi}, {"degree", order}};
    if (eis) j["eisenstein"] = eis->holds();
    os << j.dump() << '\n';
  } else {
    os << "phi_m(X) = " << phi << "\nPsi_m(X) = " << psi << "\ndeg Psi_m = |(A/m)^*| = " << order << "\n";
    if (eis) os << "Eisenstein at m: " << (eis->holds() ? "yes" : "no") << "\n";
  }
  return !eis || eis->holds() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  if (const char* env = std::getenv("CARLITZ_SEED")) {
    try {
      cfg.seed = std::stoull(env, nullptr, 0);
    } catch (const std::logic_error&) {
      std::cerr << "error: CARLITZ_SEED is not an integer\n";
      return 2;
    }
  }

  CLI::App app{"Explicit class field theory for k(t) via the Carlitz module"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value file, read at lower precedence than flags");
  app.add_option("--q", cfg.q, "field order q or p^n")->capture_default_str();
  app.add_option("--m", cfg.m, "finite modulus, a monic polynomial in t")->capture_default_str();
  app.add_option("--e", cfg.e, "exponent at infinity (e <= 1: no condition)")->capture_default_str();
  app.add_option("--d", cfg.d, "constant-field degree")->capture_default_str();
  app.add_option("--degree-bound", cfg.degree_bound, "largest prime degree swept")->capture_default_str();
  app.add_option("--precision", cfg.precision, "tau-adic precision for the u identity")->capture_default_str();
  app.add_option("--tower-cap", cfg.tower_cap, "largest Artin-Schreier tower depth")->capture_default_str();
  app.add_option("--seed", cfg.seed, "seed for randomized splitting (also CARLITZ_SEED)");
  app.add_option("--branch", cfg.branch, "root branch for residue realizations (0 or 1)")->capture_default_str();
  app.add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
  app.add_option("--output", cfg.output, "write the report to this file");
  app.add_option("--threads", cfg.threads, "worker threads")->capture_default_str();

  int (*run)(const RunConfig&, std::ostream&) = nullptr;
  auto sub = [&](const char* name, const char* help, int (*fn)(const RunConfig&, std::ostream&)) {
    app.add_subcommand(name, help)->fallthrough()->callback([&run, fn] { run = fn; });
  };
  sub("verify", "reciprocity, torsion and tower checks for one modulus", cmd_verify);
  sub("tables", "Frobenius classes of all primes up to the degree bound", cmd_tables);
  sub("generators", "generators of the class field L_U", cmd_generators);
  sub("tower", "the Artin-Schreier tower and rho_infty at Frobenius", cmd_tower);
  sub("torsion-poly", "phi_m(X), Psi_m(X) and the Eisenstein certificate", cmd_torsion_poly);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  carlitz::set_default_seed(cfg.seed);
  std::ofstream file;
  std::ostream* os = &std::cout;
  if (!cfg.output.empty()) {
    file.open(cfg.output);
    if (!file) {
      std::cerr << "error: cannot open " << cfg.output << "\n";
      return 2;
    }
    os = &file;
  }
  try {
    return run(cfg, *os);
  } catch (const carlitz::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const carlitz::Error& e) {
    if (cfg.format == "json") *os << json{{"kind", "error"}, {"message", e.what()}, {"pass", false}}.dump() << '\n';
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
