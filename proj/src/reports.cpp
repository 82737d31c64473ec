#include "ffvar/reports.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ffvar/errors.hpp"
#include "ffvar/lfunctions.hpp"

namespace ffvar {

IntervalSums interval_sums(int n, int h, const Poly& Q, PrimeCache& cache) {
  if (Q.degree() < 1) throw PreconditionError("need deg Q >= 1");
  if (Q[0] == 0) throw PreconditionError("need Q(0) != 0");
  if (n < 1 || h < 0 || h >= n) throw PreconditionError("h out of range: need 0 <= h <= n - 1");
  const FiniteField& F = Q.field();
  const std::uint64_t q = F.q();
  const std::uint64_t qn = ipow(q, static_cast<unsigned>(n));
  const std::uint64_t block = ipow(q, static_cast<unsigned>(h + 1));
  if (qn > budget::kMaxEnumeration || qn * block > 10 * budget::kMaxEnumeration)
    throw BudgetError("interval sums exceed budget: q^(n+h+1) = " + std::to_string(qn * block));

  const UnitGroup G(Q);
  const MonicReducer red(G.ring(), n);
  const MangoldtTable& table = cache.mangoldt(n);
  std::vector<std::uint8_t> lam(qn, 0);
  for (const auto& e : table.prime_powers()) lam[e.code] = static_cast<std::uint8_t>(e.lambda);

  IntervalSums s;
  for (std::uint64_t c = 0; c < qn; ++c) {
    const std::uint64_t base = c / block * block;
    for (std::uint64_t low = 0; low < block; ++low) {
      const std::uint64_t code = base + low;
      const std::uint64_t l = lam[code];
      if (!l || code % q == 0) continue;
      if (G.index_of_code(red.residue(code)) == UnitGroup::kNotUnit) continue;
      s.lambda_lhs += l;
      s.lambda_sq_lhs += l * l;
    }
  }

  std::uint64_t ex = 1, ex_sq = 1;  // Lambda(T^n), Lambda(T^n)^2
  for (const auto& [P, e] : G.factorization().factors) {
    const std::uint64_t d = static_cast<std::uint64_t>(P.degree());
    if (n % P.degree() == 0) {
      ex += d;
      ex_sq += d * d;
    }
  }
  s.lambda_rhs = block * (qn - ex);
  s.lambda_sq_rhs = block * (table.total_squares() - ex_sq);
  return s;
}

namespace {

TheoremReport base_report(int part, int n, int h, const Poly& Q, PrimeCache& cache) {
  TheoremReport r;
  r.part = part;
  r.q = Q.field().q();
  r.n = n;
  r.h = h;
  r.Q = make_monic(Q);
  r.direct = variance_direct(n, h, r.Q, cache);
  r.phi = r.direct.phi;
  return r;
}

void finish(TheoremReport& r) {
  r.residual = r.direct.v - r.main_term;
  r.ratio = r.main_term != 0.0 ? r.direct.v / r.main_term : 0.0;
  if (r.envelope) r.constant = std::abs(r.residual) / *r.envelope;
}

}  // namespace

TheoremReport theorem_i_report(int n, int h, const Poly& Q, PrimeCache& cache) {
  if (Q.is_zero() || Q[0] == 0) throw PreconditionError("need Q(0) != 0");
  if (h < 0 || h >= n) throw PreconditionError("h out of range: need 0 <= h <= n - 1");
  if (Q.degree() <= h) throw PreconditionError("need deg Q > h");
  TheoremReport r = base_report(1, n, h, Q, cache);
  const double q = r.q;
  const double phi = static_cast<double>(r.phi);
  const double qh1 = std::pow(q, h + 1);
  const double qn = std::pow(q, n);
  const double degQ = Q.degree();
  r.main_term = n * qh1 - qh1 * qh1 / phi;
  r.envelope = n * n * qh1 / std::pow(q, n / 2.0) + qh1 * degQ * degQ / qn + qh1 * qh1 * degQ / (phi * qn);
  r.sums = interval_sums(n, h, r.Q, cache);
  finish(r);
  return r;
}

TheoremReport theorem_ii_report(int n, int h, const Poly& Q, PrimeCache& cache) {
  if (Q.is_zero() || Q[0] == 0) throw PreconditionError("involution transfer requires Q(0) ≠ 0");
  if (Q.degree() < 1 || Q.degree() > n) throw PreconditionError("need 1 <= deg Q <= n");
  if (h < 0 || h >= n) throw PreconditionError("h out of range: need 0 <= h <= n - 1");
  TheoremReport r = base_report(2, n, h, Q, cache);
  r.spectral = variance_spectral(n, h, r.Q, cache);
  r.main_term = r.spectral->primitive_even_main;
  const double k = n - h - 1 + Q.degree();
  r.envelope = std::pow(static_cast<double>(r.q), h) * k * k;
  finish(r);
  return r;
}

TheoremReport theorem_iii_report(int n, int h, const Poly& Q, PrimeCache& cache) {
  if (n < 5) throw PreconditionError("need n >= 5");
  if (h < 1 || h > n - 4) throw PreconditionError("need 1 <= h <= n - 4");
  if (Q.is_zero() || Q[0] == 0) throw PreconditionError("need Q(0) != 0");
  if (Q.degree() < 3 || Q.degree() > h + 2) throw PreconditionError("need 3 <= deg Q <= h + 2");
  if (mobius(Q) == 0) throw PreconditionError("need Q square-free");
  TheoremReport r = base_report(3, n, h, Q, cache);
  r.main_term = std::pow(static_cast<double>(r.q), h + 1) * (n - h - 2 + Q.degree());
  r.note = "conditional on the hybrid equidistribution conjecture";
  finish(r);
  return r;
}

// ---------------------------------------------------------------------------

TraceMoment primitive_trace_moment(const Poly& Q, int n, Parity parity, PrimeCache& cache) {
  const UnitGroup G(Q);
  const CharacterGroup X(G);
  const double qn2 = std::pow(static_cast<double>(G.field().q()), n / 2.0);
  TraceMoment out;
  CompensatedSum acc;
  for (const auto& r : sweep_characters(X, mangoldt_histogram(G, cache.mangoldt(n)), parity)) {
    if (!r.primitive) continue;
    const std::complex<double> tr = -(r.sum + (r.even ? 1.0 : 0.0)) / qn2;
    acc.add(std::norm(tr));
    ++out.characters;
  }
  out.average = out.characters ? acc.value() / static_cast<double>(out.characters) : 0.0;
  return out;
}

EquidistributionRow even_baseline(const FiniteField& F, int l, int n, PrimeCache& cache) {
  if (l < 2) throw PreconditionError("need l >= 2");
  EquidistributionRow row;
  row.family = "even";
  row.q = F.q();
  const Poly Q = Poly::monomial(F, l);
  row.modulus = format_poly(Q);
  row.n = n;
  const auto m = primitive_trace_moment(Q, n, Parity::kEven, cache);
  row.characters = m.characters;
  row.average = m.average;
  row.reference = std::min(n, l - 2);
  row.deviation = row.average - row.reference;
  return row;
}

EquidistributionRow odd_baseline(const Poly& Q, int n, PrimeCache& cache) {
  if (mobius(Q) == 0) throw PreconditionError("need Q square-free");
  EquidistributionRow row;
  row.family = "odd";
  row.q = Q.field().q();
  row.modulus = format_poly(make_monic(Q));
  row.n = n;
  const auto m = primitive_trace_moment(Q, n, Parity::kOdd, cache);
  row.characters = m.characters;
  row.average = m.average;
  row.reference = std::min(n, Q.degree() - 1);
  row.deviation = row.average - row.reference;
  return row;
}

Poly random_squarefree(const FiniteField& F, int m, std::mt19937_64& rng) {
  if (m < 1) throw PreconditionError("need m >= 1");
  for (int attempt = 0; attempt < 100000; ++attempt) {
    const Poly Q = random_poly(F, m, rng, true);
    if (Q[0] != 0 && mobius(Q) != 0) return Q;
  }
  throw PreconditionError("no square-free Q of requested degree with Q(0) != 0");
}

std::vector<EquidistributionRow> conjecture_scan(const ConjectureConfig& cfg) {
  if (cfg.l < 4) throw PreconditionError("need l >= 4");
  if (cfg.m < 3) throw PreconditionError("need m >= 3");
  if (cfg.n < 1) throw PreconditionError("need n >= 1");
  if (cfg.moduli_per_field < 1) throw PreconditionError("need at least one modulus per field");
  std::vector<EquidistributionRow> rows;
  for (const std::uint32_t q : cfg.qs) {
    const Field F = field_of_order(q);
    PrimeCache cache(*F);
    rows.push_back(even_baseline(*F, cfg.l, cfg.n, cache));
    std::mt19937_64 rng(cfg.seed ^ (std::uint64_t{q} * 0x9e3779b97f4a7c15ull));
    for (int j = 0; j < cfg.moduli_per_field; ++j) {
      const Poly Q = random_squarefree(*F, cfg.m, rng);
      EquidistributionRow hyb;
      hyb.family = "hybrid";
      hyb.q = q;
      const Poly M = Q.shifted(cfg.l);
      hyb.modulus = format_poly(M);
      hyb.n = cfg.n;
      const auto mom = primitive_trace_moment(M, cfg.n, Parity::kEven, cache);
      hyb.characters = mom.characters;
      hyb.average = mom.average;
      hyb.reference = std::min(cfg.n, cfg.l + cfg.m - 2);
      hyb.deviation = hyb.average - hyb.reference;
      rows.push_back(hyb);
      rows.push_back(odd_baseline(Q, cfg.n, cache));
    }
  }
  return rows;
}

}  // namespace ffvar
