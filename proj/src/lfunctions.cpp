#include "ffvar/lfunctions.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "ffvar/errors.hpp"

namespace ffvar {

CVec l_polynomial(const DirichletCharacter& chi) {
  if (chi.is_trivial()) throw PreconditionError("no finite L-polynomial for the trivial character");
  const UnitGroup& G = chi.group().units();
  const ResidueRing& ring = G.ring();
  const int D = ring.degree();
  const std::uint32_t q = G.field().q();
  if (ring.size() > budget::kMaxEnumeration)
    throw BudgetError("L-polynomial enumeration exceeds budget: q^deg Q = " + std::to_string(ring.size()));

  CVec c(static_cast<std::size_t>(D) + 1);
  for (int n = 0; n <= D; ++n) {
    const MonicReducer red(ring, n);
    const std::uint64_t count = ipow(q, static_cast<unsigned>(n));
    std::complex<double> acc = 0.0;
    for (std::uint64_t code = 0; code < count; ++code) {
      const std::uint32_t u = G.index_of_code(red.residue(code));
      if (u != UnitGroup::kNotUnit) acc += chi.value_at(u);
    }
    c[static_cast<std::size_t>(n)] = acc;
  }
  const double extra = std::abs(c.back());
  if (extra > 1e-6 * std::max(1.0, std::pow(static_cast<double>(q), D)))
    throw InvariantError("L-polynomial coefficient beyond deg Q - 1 does not vanish");
  c.pop_back();
  return c;
}

CVec completed_l(const DirichletCharacter& chi, const CVec& L) {
  if (chi.is_trivial() || !chi.is_primitive())
    throw PreconditionError("completion defined for primitive characters only");
  if (chi.is_odd()) return L;
  // Synthetic division by (1 - u); the remainder is L(1).
  CVec p(L.size());
  std::complex<double> run = 0.0;
  double scale = 0.0;
  for (std::size_t k = 0; k < L.size(); ++k) {
    run += L[k];
    p[k] = run;
    scale += std::abs(L[k]);
  }
  if (std::abs(run) > 1e-6 * std::max(1.0, scale)) throw InvariantError("unexpected trivial-zero structure");
  p.pop_back();
  return p;
}

FrobeniusSpectrum frobenius_spectrum(const DirichletCharacter& chi) {
  const CVec Lstar = completed_l(chi, l_polynomial(chi));
  const double q = chi.group().field().q();
  const int degQ = chi.group().units().modulus().degree();
  FrobeniusSpectrum out;
  out.d = degQ - 1 - chi.lambda();
  const int d = out.d;
  if (static_cast<int>(Lstar.size()) != d + 1) throw InvariantError("completed L-function has wrong degree");
  if (d == 0) return out;

  // L*(u) = prod (1 - alpha_j u): the alpha_j are the roots of the reversed,
  // monic polynomial x^d + p_1 x^{d-1} + ... + p_d.
  Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(d, d);
  for (int j = 0; j < d; ++j) C(0, j) = -Lstar[static_cast<std::size_t>(j + 1)];
  for (int i = 1; i < d; ++i) C(i, i - 1) = 1.0;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(C, false);
  if (solver.info() != Eigen::Success) throw InvariantError("companion eigenvalue solver failed");

  auto eval = [&](std::complex<double> x, std::complex<double>& deriv) {
    std::complex<double> f = 1.0, df = 0.0;
    for (int k = 1; k <= d; ++k) {
      df = df * x + f;
      f = f * x + Lstar[static_cast<std::size_t>(k)];
    }
    deriv = df;
    return f;
  };

  std::vector<std::pair<double, std::complex<double>>> roots;
  const double sq = std::sqrt(q);
  for (int j = 0; j < d; ++j) {
    std::complex<double> x = solver.eigenvalues()[j];
    // Polish, keeping only steps that shrink |f|: near a repeated root f is
    // rounding noise and an unguarded step can jump far away.
    for (int it = 0; it < 3; ++it) {
      std::complex<double> df, dn;
      const std::complex<double> f = eval(x, df);
      if (std::abs(df) == 0.0) break;
      const std::complex<double> nx = x - f / df;
      if (!std::isfinite(nx.real()) || !std::isfinite(nx.imag())) break;
      if (std::abs(eval(nx, dn)) >= std::abs(f)) break;
      x = nx;
    }
    const double dev = std::abs(std::abs(x) / sq - 1.0);
    out.rh_max_deviation = std::max(out.rh_max_deviation, dev);
    double theta = std::arg(x);
    if (theta < 0) theta += 2.0 * std::numbers::pi;
    if (theta >= 2.0 * std::numbers::pi) theta -= 2.0 * std::numbers::pi;
    roots.emplace_back(theta, x);
  }
  if (out.rh_max_deviation > 1e-4)
    throw InvariantError("RH violation: relative deviation " + std::to_string(out.rh_max_deviation));
  std::sort(roots.begin(), roots.end(), [](auto& a, auto& b) { return a.first < b.first; });
  for (auto& [t, a] : roots) {
    out.phases.push_back(t);
    out.inverse_roots.push_back(a);
  }
  return out;
}

std::complex<double> trace_theta(const FrobeniusSpectrum& spec, int n) {
  if (n == 0) return static_cast<double>(spec.d);
  std::complex<double> acc = 0.0;
  for (double t : spec.phases) acc += std::polar(1.0, n * t);
  return acc;
}

std::vector<WeightedUnit> mangoldt_histogram(const UnitGroup& G, const MangoldtTable& table) {
  const MonicReducer red(G.ring(), table.degree());
  std::vector<WeightedUnit> out;
  out.reserve(table.prime_powers().size());
  for (const auto& e : table.prime_powers()) {
    const std::uint32_t u = G.index_of_code(red.residue(e.code));
    if (u != UnitGroup::kNotUnit) out.push_back({u, static_cast<double>(e.lambda)});
  }
  return out;
}

std::complex<double> mangoldt_character_sum(const DirichletCharacter& chi, const MangoldtTable& table) {
  std::complex<double> acc = 0.0;
  for (const auto& e : mangoldt_histogram(chi.group().units(), table)) acc += e.weight * chi.value_at(e.index);
  return acc;
}

std::complex<double> trace_theta_explicit(const DirichletCharacter& chi, const MangoldtTable& table) {
  const double q = chi.group().field().q();
  const std::complex<double> s = mangoldt_character_sum(chi, table);
  return -(s + static_cast<double>(chi.lambda())) / std::pow(q, table.degree() / 2.0);
}

std::complex<double> trace_theta_checked(const DirichletCharacter& chi, const FrobeniusSpectrum& spec,
                                         const MangoldtTable& table) {
  const std::complex<double> a = trace_theta(spec, table.degree());
  const std::complex<double> b = trace_theta_explicit(chi, table);
  if (std::abs(a - b) > 1e-6 * std::max(spec.d, 1)) throw InvariantError("explicit formula mismatch");
  return a;
}

std::complex<double> psi_chi(const DirichletCharacter& chi, int n, bool monic_only, PrimeCache& cache) {
  if (n < 1) throw PreconditionError("psi_chi needs n >= 1");
  const std::complex<double> s = mangoldt_character_sum(chi, cache.mangoldt(n));
  if (monic_only) return s;
  // Lambda(cN) = Lambda(N) and chi(cN) = chi(c) chi(N).
  const FiniteField& F = chi.group().field();
  std::complex<double> c = 0.0;
  for (Elem a : F.units()) c += chi(Poly::constant(F, a));
  return c * s;
}

}  // namespace ffvar
