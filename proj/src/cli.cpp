#include "ffvar/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ffvar/errors.hpp"
#include "ffvar/genlfunc.hpp"
#include "ffvar/lfunctions.hpp"
#include "ffvar/reports.hpp"
#include "ffvar/variance.hpp"

namespace ffvar::cli {

using json = nlohmann::ordered_json;

namespace {

struct Options {
  std::string field;
  std::uint32_t q = 0;
  std::string out_path;
  std::uint64_t seed = 0;

  std::string Q, Q1;
  int n = 0, h = 0, deg = 0;
  std::string route = "all";
  std::string qs;
  int moduli_per_field = 2;
  int l = 4, m = 3;
  std::uint32_t chi_index = 0, chistar_index = 0;
  int nmax = 12, max_order = 4, euler_cut = 6;
  double tol = 1e-8;
  bool all_characters = false;
};

Field field_from(const Options& o) {
  if (!o.field.empty()) return parse_field_spec(o.field);
  if (o.q == 0) throw PreconditionError("need --q or --field");
  return field_of_order(o.q);
}

std::vector<std::uint32_t> parse_list(const std::string& text) {
  std::vector<std::uint32_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      const unsigned long v = std::stoul(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(static_cast<std::uint32_t>(v));
    } catch (const std::logic_error&) {
      throw PreconditionError("bad list entry: " + item);
    }
  }
  if (out.empty()) throw PreconditionError("empty q list");
  return out;
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string r = "\"";
  for (char c : s) {
    if (c == '"') r += '"';
    r += c;
  }
  return r + "\"";
}

json complex_pair(std::complex<double> z) { return json::array({z.real(), z.imag()}); }

json rational_json(const Rational& r) {
  return {{"num", r.numerator()}, {"den", r.denominator()}, {"value", boost::rational_cast<double>(r)}};
}

json factorization_json(const Poly& Q) {
  json arr = json::array();
  if (Q.degree() < 1) return arr;
  for (const auto& [P, e] : factor(Q).factors) arr.push_back({{"P", format_poly(P)}, {"e", e}});
  return arr;
}

json census_json(const CharacterCensus& c) {
  return {{"total", c.total},
          {"even", c.even},
          {"odd", c.odd},
          {"primitive", c.primitive},
          {"primitive_even", c.primitive_even},
          {"nonprimitive_even", c.nonprimitive_even},
          {"primitive_odd", c.primitive_odd}};
}

std::string rational_string(const boost::rational<std::int64_t>& r) {
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

json base_config(const std::string& sub, const Options& o) {
  return {{"subcommand", sub}, {"version", kVersion}, {"seed", o.seed}};
}

std::string config_line(const json& cfg) {
  std::string s = "# config:";
  for (const auto& [k, v] : cfg.items()) s += " " + k + "=" + (v.is_string() ? v.get<std::string>() : v.dump());
  return s + "\n";
}

Poly random_modulus(const FiniteField& F, int deg, bool squarefree, std::mt19937_64& rng) {
  if (deg < 1) throw PreconditionError("need --deg >= 1");
  if (squarefree) return random_squarefree(F, deg, rng);
  for (int attempt = 0; attempt < 100000; ++attempt) {
    const Poly Q = random_poly(F, deg, rng, true);
    if (Q[0] != 0) return Q;
  }
  throw PreconditionError("no modulus with Q(0) != 0 found");
}

// ---------------------------------------------------------------------------

std::string cmd_characters(const Options& o) {
  const Field F = field_from(o);
  const Poly Q = parse_poly(*F, o.Q);
  if (Q.degree() < 1) throw PreconditionError("need deg Q >= 1");
  const UnitGroup G(Q, o.seed);
  const CharacterGroup X(G);
  const auto c = character_census(X);
  json cfg = base_config("characters", o);
  cfg["field"] = F->spec_string();
  cfg["Q"] = o.Q;
  json j = {{"config", cfg},
            {"modulus", format_poly(G.modulus())},
            {"q", F->q()},
            {"total", c.total},
            {"even", c.even},
            {"primitive_even", c.primitive_even},
            {"nonprimitive_even", c.nonprimitive_even},
            {"odd", c.odd},
            {"primitive", c.primitive},
            {"even_formula", rational_string(c.even_formula)},
            {"primitive_even_formula", rational_string(c.primitive_even_formula)}};
  return j.dump(2) + "\n";
}

std::string cmd_lfunc(const Options& o) {
  const Field F = field_from(o);
  const Poly Q = parse_poly(*F, o.Q);
  if (Q.degree() < 1) throw PreconditionError("need deg Q >= 1");
  const UnitGroup G(Q, o.seed);
  const std::uint64_t work = static_cast<std::uint64_t>(G.order()) * ipow(F->q(), static_cast<unsigned>(Q.degree()));
  if (work > budget::kMaxEnumeration)
    throw BudgetError("L-polynomial sweep exceeds budget: phi(Q) q^deg Q = " + std::to_string(work));
  const CharacterGroup X(G);
  json rows = json::array();
  std::uint64_t skipped = 0;
  for (std::uint32_t i = 1; i < X.size(); ++i) {
    const DirichletCharacter chi = X.character(i);
    if (!chi.is_primitive() && !o.all_characters) {
      ++skipped;
      continue;
    }
    json row = {{"index", i}, {"exps", chi.exponents()}, {"even", chi.is_even()}, {"primitive", chi.is_primitive()}};
    const CVec L = l_polynomial(chi);
    if (chi.is_primitive()) {
      const auto spec = frobenius_spectrum(chi);
      row["d"] = spec.d;
      row["phases"] = spec.phases;
      row["rh_max_deviation"] = spec.rh_max_deviation;
    } else {
      row["d"] = nullptr;
      row["phases"] = json::array();
      row["rh_max_deviation"] = nullptr;
    }
    json lc = json::array();
    for (const auto& z : L) lc.push_back(complex_pair(z));
    row["l_coeffs"] = lc;
    rows.push_back(row);
  }
  json cfg = base_config("lfunc", o);
  cfg["field"] = F->spec_string();
  cfg["Q"] = o.Q;
  cfg["all"] = o.all_characters;
  json j = {{"config", cfg}, {"modulus", format_poly(G.modulus())}, {"q", F->q()}, {"rows", rows},
            {"nonprimitive_skipped", skipped}};
  return j.dump(2) + "\n";
}

std::string cmd_variance(const Options& o) {
  if (o.route != "all" && o.route != "direct" && o.route != "spectral")
    throw PreconditionError("route must be all, direct or spectral");
  const Field F = field_from(o);
  const Poly Q = make_monic(parse_poly(*F, o.Q));
  const bool want_direct = o.route != "spectral";
  const bool want_spectral = o.route != "direct";
  if (want_spectral && (Q.is_zero() || Q[0] == 0))
    throw PreconditionError("involution transfer requires Q(0) ≠ 0");
  PrimeCache cache(*F);

  json cfg = base_config("variance", o);
  cfg["field"] = F->spec_string();
  cfg["n"] = o.n;
  cfg["h"] = o.h;
  cfg["Q"] = o.Q;
  cfg["route"] = o.route;

  json j = {{"config", cfg}, {"q", F->q()}, {"n", o.n}, {"h", o.h}, {"Q", format_poly(Q)}};
  j["factorization"] = factorization_json(Q);
  const std::uint64_t phi = Q.degree() >= 1 ? euler_phi(Q) : 1;
  j["phi"] = phi;
  j["mean_value"] = rational_json(mean_value_closed_form(o.n, o.h, Q));

  std::optional<DirectVariance> direct;
  std::optional<SpectralVariance> spectral;
  if (want_direct) direct = variance_direct(o.n, o.h, Q, cache);
  if (want_spectral) spectral = variance_spectral(o.n, o.h, Q, cache);
  j["V_direct"] = direct ? json(direct->v) : json(nullptr);
  j["V_tilde_direct"] = direct ? json(direct->v_tilde) : json(nullptr);
  j["V_spectral"] = spectral ? json(spectral->full) : json(nullptr);
  if (direct && spectral && std::abs(direct->v_tilde - spectral->full) > 1e-6 * (1.0 + spectral->full))
    throw InvariantError("spectral identity violated: " + fmt(direct->v_tilde) + " vs " + fmt(spectral->full));

  json th = nullptr;
  const double q = F->q();
  if (Q.degree() > o.h) {
    const double qh1 = std::pow(q, o.h + 1);
    const double main = o.n * qh1 - qh1 * qh1 / static_cast<double>(phi);
    th = {{"part", "i"}, {"main_term", main}};
    if (direct) th["residual"] = direct->v - main;
  } else if (spectral) {
    th = {{"part", "ii"}, {"main_term", spectral->primitive_even_main}};
    if (direct) th["residual"] = direct->v - spectral->primitive_even_main;
  }
  j["theorem"] = th;
  if (th.is_object()) {
    j["theorem_main_term"] = th["main_term"];
    j["theorem_residual"] = th.contains("residual") ? th["residual"] : json(nullptr);
  }

  if (spectral) {
    j["spectral"] = {{"Q_tilde", format_poly(spectral->q_tilde)},
                     {"phi_Q_tilde", spectral->phi_q_tilde},
                     {"even_characters", spectral->even_characters},
                     {"primitive_even_characters", spectral->primitive_even_characters},
                     {"primitive_even_main", spectral->primitive_even_main}};
    const UnitGroup G(spectral->q_tilde);
    j["census"] = census_json(character_census(CharacterGroup(G)));
    j["census"]["modulus"] = format_poly(spectral->q_tilde);
  } else if (Q.degree() >= 1) {
    const UnitGroup G(Q);
    j["census"] = census_json(character_census(CharacterGroup(G)));
    j["census"]["modulus"] = format_poly(Q);
  } else {
    j["census"] = nullptr;
  }
  return j.dump(2) + "\n";
}

std::string cmd_theorem(int part, const Options& o) {
  json cfg = base_config("theorem" + std::to_string(part), o);
  cfg["n"] = o.n;
  cfg["h"] = o.h;
  struct Case {
    Field F;
    Poly Q;
  };
  std::vector<Case> cases;
  if (!o.Q.empty()) {
    const Field F = field_from(o);
    cases.push_back({F, parse_poly(*F, o.Q)});
    cfg["field"] = F->spec_string();
    cfg["Q"] = o.Q;
  } else {
    if (o.moduli_per_field < 1) throw PreconditionError("need --moduli-per-field >= 1");
    const auto qs = parse_list(o.qs.empty() ? "3,5" : o.qs);
    cfg["qs"] = o.qs.empty() ? "3,5" : o.qs;
    cfg["deg"] = o.deg;
    cfg["moduli_per_field"] = o.moduli_per_field;
    for (const std::uint32_t q : qs) {
      const Field F = field_of_order(q);
      std::mt19937_64 rng(o.seed ^ (std::uint64_t{q} * 0x9e3779b97f4a7c15ull));
      std::set<std::vector<Elem>> seen;
      for (int k = 0, attempts = 0; k < o.moduli_per_field; ++attempts) {
        if (attempts > 1000 * o.moduli_per_field)
          throw PreconditionError("not enough distinct moduli of degree " + std::to_string(o.deg));
        const Poly Q = random_modulus(*F, o.deg, part == 3, rng);
        if (!seen.insert(Q.coeffs()).second) continue;
        cases.push_back({F, Q});
        ++k;
      }
    }
  }

  std::string text = config_line(cfg);
  if (part == 1)
    text += "q,n,h,Q,phi,V,V_tilde,main_term,residual,ratio,envelope,constant,sums_exact\n";
  else if (part == 2)
    text += "q,n,h,Q,phi,V,V_tilde,V_spectral,main_term,residual,ratio,envelope,constant\n";
  else
    text += "q,n,h,Q,phi,V,V_tilde,main_term,residual,ratio,note\n";

  for (const auto& c : cases) {
    PrimeCache cache(*c.F);
    const TheoremReport r = part == 1   ? theorem_i_report(o.n, o.h, c.Q, cache)
                            : part == 2 ? theorem_ii_report(o.n, o.h, c.Q, cache)
                                        : theorem_iii_report(o.n, o.h, c.Q, cache);
    if (r.sums && !r.sums->exact()) throw InvariantError("interval sums differ from brute force");
    std::string row = std::to_string(r.q) + "," + std::to_string(r.n) + "," + std::to_string(r.h) + "," +
                      csv_quote(pretty_poly(r.Q)) + "," + std::to_string(r.phi) + "," + fmt(r.direct.v) + "," +
                      fmt(r.direct.v_tilde) + ",";
    if (part == 2) row += fmt(r.spectral->full) + ",";
    row += fmt(r.main_term) + "," + fmt(r.residual) + "," + fmt(r.ratio);
    if (part == 3) {
      row += "," + csv_quote(r.note);
    } else {
      row += "," + fmt(*r.envelope) + "," + fmt(*r.constant);
      if (part == 1) row += std::string(",") + (r.sums->exact() ? "true" : "false");
    }
    text += row + "\n";
  }
  return text;
}

std::string cmd_conjecture(const Options& o) {
  ConjectureConfig cc;
  cc.l = o.l;
  cc.m = o.m;
  cc.n = o.n;
  cc.qs = parse_list(o.qs.empty() ? "3,5,7" : o.qs);
  cc.moduli_per_field = o.moduli_per_field;
  cc.seed = o.seed;
  json cfg = base_config("conjecture", o);
  cfg["l"] = cc.l;
  cfg["m"] = cc.m;
  cfg["n"] = cc.n;
  cfg["qs"] = o.qs.empty() ? "3,5,7" : o.qs;
  cfg["moduli_per_field"] = cc.moduli_per_field;
  std::string text = config_line(cfg);
  text += "family,q,modulus,n,characters,average,reference,deviation\n";
  for (const auto& r : conjecture_scan(cc)) {
    text += r.family + "," + std::to_string(r.q) + "," + csv_quote(r.modulus) + "," + std::to_string(r.n) + "," +
            std::to_string(r.characters) + "," + fmt(r.average) + "," + fmt(r.reference) + "," + fmt(r.deviation) +
            "\n";
  }
  return text;
}

json zeros_json(const CVec& zs, double sqrt_q) {
  json arr = json::array();
  for (const auto& z : zs)
    arr.push_back({{"re", z.real()}, {"im", z.imag()}, {"abs", std::abs(z)}, {"abs_times_sqrt_q", std::abs(z) * sqrt_q}});
  return arr;
}

std::string cmd_genl(const Options& o) {
  const Field F = field_from(o);
  const Poly Q1 = parse_poly(*F, o.Q1);
  if (Q1.degree() < 1) throw PreconditionError("need deg Q1 >= 1");
  if (o.m < 1) throw PreconditionError("need m >= 1");
  const UnitGroup G(Q1, o.seed);
  const UnitGroup H(Poly::monomial(*F, o.m), o.seed);
  const CharacterGroup X(G), Y(H);
  if (o.chi_index >= X.size()) throw PreconditionError("chi index out of range");
  if (o.chistar_index >= Y.size()) throw PreconditionError("chi* index out of range");
  const DirichletCharacter chi = X.character(o.chi_index);
  const DirichletCharacter chi_star = Y.character(o.chistar_index);

  const GenLSeries s = genl_coefficients(chi, chi_star, o.nmax);
  PrimeCache cache(*F);
  const int cut = std::min(o.euler_cut, o.nmax);
  const double euler_dev = euler_product_check(chi, chi_star, s, cut, cache);
  const RecurrenceFit fit = detect_recurrence(s, o.max_order, o.tol);

  json cfg = base_config("genl", o);
  cfg["field"] = F->spec_string();
  cfg["Q1"] = o.Q1;
  cfg["chi_index"] = o.chi_index;
  cfg["m"] = o.m;
  cfg["chistar_index"] = o.chistar_index;
  cfg["nmax"] = o.nmax;
  cfg["max_order"] = o.max_order;
  cfg["tol"] = o.tol;
  cfg["euler_cut"] = cut;

  json coeffs = json::array();
  for (const auto& z : s.coeffs) coeffs.push_back(complex_pair(z));
  const double sq = std::sqrt(static_cast<double>(F->q()));
  json jf;
  if (fit.found) {
    json rec = json::array(), num = json::array();
    for (const auto& z : fit.recurrence) rec.push_back(complex_pair(z));
    for (const auto& z : fit.numerator) num.push_back(complex_pair(z));
    jf = {{"outcome", "recurrence"},
          {"order", fit.order},
          {"residual", fit.residual},
          {"recurrence", rec},
          {"numerator", num},
          {"singular_values", fit.singular_values},
          {"zeros", zeros_json(fit.poles, sq)},
          {"numerator_zeros", zeros_json(fit.numerator_zeros, sq)}};
  } else {
    jf = {{"outcome", "no recurrence up to max_order"}, {"order", nullptr}, {"residual", nullptr},
          {"zeros", json::array()}};
  }
  json j = {{"config", cfg},
            {"chi", {{"modulus", format_poly(G.modulus())}, {"exps", chi.exponents()}, {"even", chi.is_even()}}},
            {"chi_star", {{"modulus", format_poly(H.modulus())}, {"exps", chi_star.exponents()}}},
            {"coeffs", coeffs},
            {"euler", {{"cut", cut}, {"max_deviation", euler_dev}}},
            {"fit", jf},
            {"reference_radii", {{"inv_sqrt_q", 1.0 / sq}, {"inv_q", 1.0 / F->q()}}}};
  return j.dump(2) + "\n";
}

void emit_error(std::ostream& err, const std::string& kind, const std::string& message) {
  err << json{{"error", {{"kind", kind}, {"message", message}}}}.dump() << "\n";
}

const std::set<std::string> kSubcommands{"characters", "lfunc",    "variance", "theorem1", "theorem2",
                                         "theorem3",   "conjecture", "genl",   "selftest"};

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--version") {
      out << kVersion << "\n";
      return exit_code::kOk;
    }
    if (a.rfind("-", 0) == 0) continue;
    if (!kSubcommands.count(a)) {
      emit_error(err, "usage", "unknown subcommand: " + a);
      return exit_code::kUnknownSubcommand;
    }
    break;
  }

  CLI::App app{"Prime polynomials in progressions and short intervals over F_q[T]", "ffvar"};
  app.set_help_flag("--help", "print help");
  app.require_subcommand(1);
  Options o;

  auto field_opts = [&](CLI::App* s) {
    s->add_option("--q", o.q, "field order");
    s->add_option("--field", o.field, "field spec, e.g. p=2,r=2");
    s->add_option("--seed", o.seed, "seed");
    s->add_option("--out", o.out_path, "write the report here instead of stdout");
  };

  auto* characters = app.add_subcommand("characters", "character census mod Q");
  field_opts(characters);
  characters->add_option("--Q", o.Q, "modulus, coefficients constant term first")->required();

  auto* lfunc = app.add_subcommand("lfunc", "L-polynomials and Frobenius spectra mod Q");
  field_opts(lfunc);
  lfunc->add_option("--Q", o.Q, "modulus")->required();
  lfunc->add_flag("--all", o.all_characters, "include non-primitive characters");

  auto* variance = app.add_subcommand("variance", "variance report for one (q, n, h, Q)");
  field_opts(variance);
  variance->add_option("--n", o.n)->required();
  variance->add_option("--h", o.h)->required();
  variance->add_option("--Q", o.Q)->required();
  variance->add_option("--route", o.route, "all, direct or spectral");

  std::vector<CLI::App*> theorems;
  for (int part = 1; part <= 3; ++part) {
    auto* t = app.add_subcommand("theorem" + std::to_string(part), "scan table as CSV");
    field_opts(t);
    t->add_option("--n", o.n)->required();
    t->add_option("--h", o.h)->required();
    t->add_option("--Q", o.Q, "single modulus (with --q or --field)");
    t->add_option("--deg", o.deg, "degree of random moduli");
    t->add_option("--qs", o.qs, "field orders, comma separated");
    t->add_option("--moduli-per-field", o.moduli_per_field);
    theorems.push_back(t);
  }

  auto* conjecture = app.add_subcommand("conjecture", "trace moment scan");
  conjecture->add_option("--l", o.l);
  conjecture->add_option("--m", o.m);
  conjecture->add_option("--n", o.n)->required();
  conjecture->add_option("--qs", o.qs);
  conjecture->add_option("--seed", o.seed);
  conjecture->add_option("--moduli-per-field", o.moduli_per_field);
  conjecture->add_option("--out", o.out_path);

  auto* genl = app.add_subcommand("genl", "coefficients and recurrence fit of L(u, chi, chi*)");
  field_opts(genl);
  genl->add_option("--Q1", o.Q1)->required();
  genl->add_option("--chi-index", o.chi_index);
  genl->add_option("--m", o.m);
  genl->add_option("--chistar-index", o.chistar_index);
  genl->add_option("--nmax", o.nmax);
  genl->add_option("--max-order", o.max_order);
  genl->add_option("--tol", o.tol);
  genl->add_option("--euler-cut", o.euler_cut);

  auto* self = app.add_subcommand("selftest", "quick invariant suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_code::kOk;
  } catch (const CLI::ParseError& e) {
    emit_error(err, "usage", e.what());
    return exit_code::kPrecondition;
  }

  try {
    if (self->parsed()) {
      const int failures = selftest(out);
      return failures == 0 ? exit_code::kOk : exit_code::kFailure;
    }
    std::string report;
    if (characters->parsed()) report = cmd_characters(o);
    if (lfunc->parsed()) report = cmd_lfunc(o);
    if (variance->parsed()) report = cmd_variance(o);
    for (int part = 1; part <= 3; ++part)
      if (theorems[static_cast<std::size_t>(part - 1)]->parsed()) report = cmd_theorem(part, o);
    if (conjecture->parsed()) report = cmd_conjecture(o);
    if (genl->parsed()) report = cmd_genl(o);
    if (o.out_path.empty()) {
      out << report;
    } else {
      std::ofstream f(o.out_path, std::ios::binary);
      if (!f) throw PreconditionError("cannot open output file " + o.out_path);
      f << report;
    }
    return exit_code::kOk;
  } catch (const PreconditionError& e) {
    emit_error(err, "precondition", e.what());
    return exit_code::kPrecondition;
  } catch (const BudgetError& e) {
    emit_error(err, "budget", e.what());
    return exit_code::kBudget;
  } catch (const InvariantError& e) {
    emit_error(err, "invariant", e.what());
    return exit_code::kInternal;
  } catch (const std::exception& e) {
    emit_error(err, "internal", e.what());
    return exit_code::kInternal;
  }
}

}  // namespace ffvar::cli
