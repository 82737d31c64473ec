#include "ffvar/variance.hpp"

#include <cmath>
#include <optional>
#include <string>

#include "ffvar/errors.hpp"
#include "ffvar/lfunctions.hpp"
#include "ffvar/unitgroup.hpp"

namespace ffvar {

void CompensatedSum::add(double x) {
  const double t = sum_ + x;
  if (std::abs(sum_) >= std::abs(x))
    comp_ += (sum_ - t) + x;
  else
    comp_ += (x - t) + sum_;
  sum_ = t;
}

namespace {

void require_coprime(const Poly& A, const Poly& Q) {
  if (A.field_ptr() != Q.field_ptr()) throw PreconditionError("polynomials over different fields");
  if (gcd(A, Q).degree() != 0) throw PreconditionError("A is not coprime to Q");
}

std::uint64_t interval_size(const FiniteField& F, int h) {
  std::uint64_t count = 1;
  for (int i = 0; i <= h; ++i) {
    count *= F.q();
    if (count > budget::kMaxEnumeration) throw BudgetError("interval too large: q^(h+1) exceeds 10^8");
  }
  return count;
}

}  // namespace

std::uint64_t nu(const Poly& C, int h) {
  if (!C.is_monic()) throw PreconditionError("nu needs a monic C");
  if (h < 0 || h >= C.degree()) throw PreconditionError("h out of range: need 0 <= h < deg C");
  const FiniteField& F = C.field();
  const std::uint64_t count = interval_size(F, h);
  std::uint64_t total = 0;
  for (std::uint64_t code = 0; code < count; ++code) {
    const Poly f = C + poly_from_code(F, code);
    if (f[0] != 0) total += von_mangoldt(f);
  }
  return total;
}

std::uint64_t psi_progression(int n, const Poly& Q, const Poly& A) {
  if (n < 1) throw PreconditionError("psi_progression needs n >= 1");
  require_coprime(A, Q);
  const FiniteField& F = Q.field();
  IrreducibleSieve sieve(F);
  const MangoldtTable table(sieve, n);
  std::uint64_t total = 0;
  for (const auto& e : table.prime_powers()) {
    if (mod(monic_from_code(F, n, e.code) - A, Q).is_zero()) total += e.lambda;
  }
  return total;
}

std::uint64_t psi_hybrid(const Poly& C, int h, const Poly& Q, const Poly& A) {
  if (C.is_zero() || h < 0 || h >= C.degree()) throw PreconditionError("h out of range: need 0 <= h < deg C");
  require_coprime(A, Q);
  const FiniteField& F = C.field();
  const std::uint64_t count = interval_size(F, h);
  std::uint64_t total = 0;
  for (std::uint64_t code = 0; code < count; ++code) {
    const Poly N = C + poly_from_code(F, code);
    if (N[0] == 0) continue;
    if (!mod(N - A, Q).is_zero()) continue;
    total += von_mangoldt(N);
  }
  return total;
}

Rational mean_value_closed_form(int n, int h, const Poly& Q) {
  if (Q.is_zero()) throw PreconditionError("zero modulus");
  if (n < 1 || h < 0 || h >= n) throw PreconditionError("h out of range: need 0 <= h <= n - 1");
  const FiniteField& F = Q.field();
  std::int64_t excluded = 1;  // Lambda(T^n)
  std::uint64_t phi = 1;
  if (Q.degree() >= 1) {
    const auto fac = factor(Q);
    phi = euler_phi(fac, F.q());
    for (const auto& [P, e] : fac.factors) {
      const bool is_t = P.degree() == 1 && P[0] == 0;
      if (!is_t && n % P.degree() == 0) excluded += P.degree();
    }
  }
  const std::int64_t qn = static_cast<std::int64_t>(ipow(F.q(), static_cast<unsigned>(n)));
  const std::int64_t den = static_cast<std::int64_t>(phi * ipow(F.q(), static_cast<unsigned>(n - h - 1)));
  return Rational(qn - excluded, den);
}

namespace {

// Class id of each monic degree-n code: unit index mod Q, or kNotUnit when
// not coprime to Q or when N(0) = 0.
struct ClassMap {
  std::uint32_t phi = 1;
  std::optional<UnitGroup> group;
  std::optional<MonicReducer> reducer;
  std::uint32_t q = 0;

  ClassMap(const Poly& Q, int n) : q(Q.field().q()) {
    if (Q.degree() >= 1) {
      group.emplace(Q);
      reducer.emplace(group->ring(), n);
      phi = group->order();
    }
  }
  std::uint32_t operator()(std::uint64_t code) const {
    if (code % q == 0) return UnitGroup::kNotUnit;
    if (!group) return 0;
    return group->index_of_code(reducer->residue(code));
  }
};

}  // namespace

Rational mean_value(int n, int h, const Poly& Q, PrimeCache& cache) {
  const Rational closed = mean_value_closed_form(n, h, Q);
  const FiniteField& F = Q.field();
  const std::uint64_t qn = ipow(F.q(), static_cast<unsigned>(n));
  const std::uint64_t block = ipow(F.q(), static_cast<unsigned>(h + 1));
  if (qn > budget::kMaxEnumeration || qn * block > 10 * budget::kMaxEnumeration)
    throw BudgetError("mean value enumeration exceeds budget: q^(n+h+1) = " + std::to_string(qn * block));
  const ClassMap cls(Q, n);
  const MangoldtTable& table = cache.mangoldt(n);
  std::vector<std::uint8_t> weight(qn, 0);
  for (const auto& e : table.prime_powers())
    if (cls(e.code) != UnitGroup::kNotUnit) weight[e.code] = static_cast<std::uint8_t>(e.lambda);
  // Definition: sum over C in M_n and A of Psi(C,h;Q,A) equals the sum over C
  // of the admissible Lambda-mass in I(C;h).
  std::uint64_t total = 0;
  for (std::uint64_t c = 0; c < qn; ++c) {
    const std::uint64_t base = c / block * block;
    for (std::uint64_t low = 0; low < block; ++low) total += weight[base + low];
  }
  const Rational by_definition(static_cast<std::int64_t>(total), static_cast<std::int64_t>(qn * cls.phi));
  if (by_definition != closed) throw InvariantError("mean value routes disagree");
  return closed;
}

DirectVariance variance_direct(int n, int h, const Poly& Q, PrimeCache& cache) {
  if (Q.is_zero()) throw PreconditionError("zero modulus");
  if (n < 1 || h < 0 || h >= n) throw PreconditionError("h out of range: need 0 <= h <= n - 1");
  const FiniteField& F = Q.field();
  const std::uint64_t q = F.q();
  const std::uint64_t qn = ipow(q, static_cast<unsigned>(n));
  const std::uint64_t phi_est = Q.degree() >= 1 ? euler_phi(Q) : 1;
  if (qn > budget::kMaxDirectWork || qn * phi_est > budget::kMaxDirectWork)
    throw BudgetError("direct variance budget exceeded: q^n * phi(Q) = " + std::to_string(qn * phi_est) +
                      " > 10^8");
  const ClassMap cls(Q, n);
  const std::uint64_t phi = cls.phi;
  const MangoldtTable& table = cache.mangoldt(n);
  const std::uint64_t block = ipow(q, static_cast<unsigned>(h + 1));
  const std::uint64_t intervals = qn / block;

  struct Hit {
    std::uint64_t interval;
    std::uint32_t cls;
    std::uint32_t lambda;
  };
  std::vector<Hit> hits;
  std::uint64_t mass = 0;
  for (const auto& e : table.prime_powers()) {
    const std::uint32_t c = cls(e.code);
    if (c == UnitGroup::kNotUnit) continue;
    hits.push_back({e.code / block, c, e.lambda});
    mass += e.lambda;
  }

  DirectVariance out;
  out.phi = phi;
  out.mean = Rational(static_cast<std::int64_t>(mass), static_cast<std::int64_t>(phi * (intervals)));
  if (out.mean != mean_value_closed_form(n, h, Q)) throw InvariantError("mean value routes disagree");
  const double c1 = static_cast<double>(block) / static_cast<double>(phi);
  const double c2 = boost::rational_cast<double>(out.mean);

  CompensatedSum s1, s2;
  std::vector<std::uint64_t> psi(phi, 0);
  std::vector<std::uint32_t> touched;
  std::uint64_t nonempty = 0;
  for (std::size_t i = 0; i < hits.size();) {
    const std::uint64_t iv = hits[i].interval;
    for (; i < hits.size() && hits[i].interval == iv; ++i) {
      if (psi[hits[i].cls] == 0) touched.push_back(hits[i].cls);
      psi[hits[i].cls] += hits[i].lambda;
    }
    ++nonempty;
    double a = 0.0, b = 0.0;
    for (auto k : touched) {
      const double v = static_cast<double>(psi[k]);
      a += (v - c1) * (v - c1);
      b += (v - c2) * (v - c2);
      psi[k] = 0;
    }
    const double rest = static_cast<double>(phi - touched.size());
    s1.add(a + rest * c1 * c1);
    s2.add(b + rest * c2 * c2);
    touched.clear();
  }
  const double empty = static_cast<double>(intervals - nonempty) * static_cast<double>(phi);
  s1.add(empty * c1 * c1);
  s2.add(empty * c2 * c2);
  // Each interval stands for the q^{h+1} centers C sharing its top part.
  out.v = s1.value() / static_cast<double>(intervals);
  out.v_tilde = s2.value() / static_cast<double>(intervals);
  return out;
}

Poly degree_n_representative(const Poly& A, const Poly& Q, int n) {
  if (Q.degree() < 1 || Q.degree() > n) throw PreconditionError("need 1 <= deg Q <= n");
  const Poly A0 = mod(A, Q);
  return A0 + Q.shifted(n - Q.degree());
}

Poly dual_modulus(int n, int h, const Poly& Q) {
  return involution(make_monic(Q)).shifted(n - h);
}

std::uint64_t dual_transfer(const Poly& B, int h, const Poly& Q, const Poly& A) {
  if (Q.is_zero() || Q[0] == 0) throw PreconditionError("involution transfer requires Q(0) ≠ 0");
  if (B.is_zero()) throw PreconditionError("B must be nonzero");
  if (h < 0) throw PreconditionError("h out of range");
  require_coprime(A, Q);
  const FiniteField& F = B.field();
  const int n = h + 1 + B.degree();
  const Poly Qs = involution(Q);
  const Poly target = mod(involution(degree_n_representative(A, Q, n)), Qs);
  const Poly Bs = involution(B);
  std::uint64_t total = 0;
  const std::uint64_t count = interval_size(F, h);
  // N = B* + T^{n-h} U with deg U = h exactly.
  for (std::uint64_t code = count / F.q(); code < count; ++code) {
    const Poly N = Bs + poly_from_code(F, code).shifted(n - h);
    if (!(mod(N, Qs) == target)) continue;
    total += von_mangoldt(N);
  }
  return total;
}

SpectralVariance variance_spectral(int n, int h, const Poly& Q, PrimeCache& cache) {
  if (Q.is_zero() || Q[0] == 0) throw PreconditionError("involution transfer requires Q(0) ≠ 0");
  if (Q.degree() < 1 || Q.degree() > n) throw PreconditionError("spectral route needs 1 <= deg Q <= n");
  if (h < 0 || h >= n) throw PreconditionError("h out of range: need 0 <= h <= n - 1");
  const FiniteField& F = Q.field();
  const double q = F.q();

  SpectralVariance out;
  out.q_tilde = dual_modulus(n, h, Q);
  const UnitGroup G(out.q_tilde);
  out.phi_q_tilde = G.order();
  const std::uint64_t expected = (F.q() - 1) * ipow(F.q(), static_cast<unsigned>(n - h - 1)) * euler_phi(Q);
  if (out.phi_q_tilde != expected) throw InvariantError("phi(T^{n-h} Q*) != (q-1) q^{n-h-1} phi(Q)");
  const CharacterGroup X(G);

  const auto results = sweep_characters(X, mangoldt_histogram(G, cache.mangoldt(n)), Parity::kEven);
  CompensatedSum full, prim;
  const double qn2 = std::pow(q, n / 2.0);
  for (const auto& r : results) {
    ++out.even_characters;
    if (r.primitive) {
      ++out.primitive_even_characters;
      const std::complex<double> tr = -(r.sum + 1.0) / qn2;
      prim.add(std::norm(tr));
    }
    if (r.character == 0) continue;
    // Even characters: Psi(n, chi) = (q - 1) * monic sum.
    full.add(std::norm((q - 1.0) * r.sum));
  }
  const double phiq = static_cast<double>(out.phi_q_tilde);
  out.full = full.value() / ((q - 1.0) * std::pow(q, n - h - 1) * phiq);
  out.primitive_even_main = std::pow(q, h + 1) * (q - 1.0) / phiq * prim.value();
  return out;
}

double variance_spectral_unfiltered(int n, int h, const Poly& Q, PrimeCache& cache) {
  if (Q.is_zero() || Q[0] == 0) throw PreconditionError("involution transfer requires Q(0) ≠ 0");
  if (Q.degree() < 1 || Q.degree() > n) throw PreconditionError("spectral route needs 1 <= deg Q <= n");
  if (h < 0 || h >= n) throw PreconditionError("h out of range: need 0 <= h <= n - 1");
  const FiniteField& F = Q.field();
  const double q = F.q();
  const Poly Qt = dual_modulus(n, h, Q);
  const UnitGroup G(Qt);
  const CharacterGroup X(G);
  const MangoldtTable& table = cache.mangoldt(n);
  // Every N of degree n: c times a monic prime power.
  std::vector<WeightedUnit> entries;
  for (const auto& e : table.prime_powers()) {
    const Poly N = monic_from_code(F, n, e.code);
    for (Elem c : F.units()) {
      const std::uint32_t u = G.index_of(N.scaled(c));
      if (u != UnitGroup::kNotUnit) entries.push_back({u, static_cast<double>(e.lambda)});
    }
  }
  CompensatedSum s;
  for (const auto& r : sweep_characters(X, std::move(entries), Parity::kAll)) {
    if (r.character != 0) s.add(std::norm(r.sum));
  }
  return s.value() / ((q - 1.0) * std::pow(q, n - h - 1) * static_cast<double>(G.order()));
}

}  // namespace ffvar
