#include "ffvar/genlfunc.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <string>

#include "ffvar/errors.hpp"

namespace ffvar {

namespace {

int tame_power_degree(const DirichletCharacter& chi_star) {
  const Poly& M = chi_star.group().units().modulus();
  if (M.degree() < 1 || !(M == Poly::monomial(M.field(), M.degree())))
    throw PreconditionError("chi* must be a character modulo a power of T");
  return M.degree();
}

void check_same_field(const DirichletCharacter& a, const DirichletCharacter& b) {
  if (a.group().field().q() != b.group().field().q() || a.group().field().p() != b.group().field().p())
    throw PreconditionError("chi and chi* live over different fields");
}

}  // namespace

std::complex<double> genl_weight(const DirichletCharacter& chi, const DirichletCharacter& chi_star, const Poly& N) {
  const int m = tame_power_degree(chi_star);
  if (N.is_zero() || N[0] == 0) return 0.0;
  const Poly star = mod(involution(N), Poly::monomial(N.field(), m));
  return chi(N) * chi_star(star);
}

GenLSeries genl_coefficients(const DirichletCharacter& chi, const DirichletCharacter& chi_star, int nmax) {
  check_same_field(chi, chi_star);
  const int m = tame_power_degree(chi_star);
  if (nmax < 0) throw PreconditionError("need nmax >= 0");
  const FiniteField& F = chi.group().field();
  const std::uint64_t q = F.q();
  std::uint64_t work = 0;
  for (int n = 0; n <= nmax; ++n) {
    work += ipow(q, static_cast<unsigned>(n));
    if (work > budget::kMaxEnumeration)
      throw BudgetError("series coefficients exceed the enumeration budget at degree " + std::to_string(n));
  }

  const UnitGroup& G = chi.group().units();
  const UnitGroup& H = chi_star.group().units();
  GenLSeries s;
  s.nmax = nmax;
  s.q = F.q();
  s.coeffs.assign(static_cast<std::size_t>(nmax) + 1, 0.0);
  s.coeffs[0] = 1.0;
  std::vector<std::uint64_t> digits;
  for (int n = 1; n <= nmax; ++n) {
    const MonicReducer red(G.ring(), n);
    const std::uint64_t count = ipow(q, static_cast<unsigned>(n));
    std::complex<double> acc = 0.0;
    digits.assign(static_cast<std::size_t>(n) + 1, 0);
    for (std::uint64_t code = 0; code < count; ++code) {
      if (code % q == 0) continue;
      const std::uint32_t u = G.index_of_code(red.residue(code));
      if (u == UnitGroup::kNotUnit) continue;
      std::uint64_t rest = code;
      for (int i = 0; i < n; ++i, rest /= q) digits[static_cast<std::size_t>(i)] = rest % q;
      digits[static_cast<std::size_t>(n)] = 1;
      // N* mod T^m has coefficients c_n, c_{n-1}, ..., c_{n-m+1}.
      std::uint64_t star = 0;
      for (int i = std::min(m - 1, n); i >= 0; --i) star = star * q + digits[static_cast<std::size_t>(n - i)];
      const std::uint32_t v = H.index_of_code(star);
      acc += chi.value_at(u) * chi_star.value_at(v);
    }
    s.coeffs[static_cast<std::size_t>(n)] = acc;
  }
  return s;
}

double euler_product_check(const DirichletCharacter& chi, const DirichletCharacter& chi_star,
                           const GenLSeries& series, int degree_cut, PrimeCache& cache) {
  check_same_field(chi, chi_star);
  if (degree_cut < 1 || degree_cut > series.nmax) throw PreconditionError("degree cut out of range");
  const FiniteField& F = cache.field();
  const std::size_t len = static_cast<std::size_t>(degree_cut) + 1;
  CVec prod(len, 0.0);
  prod[0] = 1.0;
  for (int d = 1; d <= degree_cut; ++d) {
    for (const std::uint64_t code : cache.sieve().of_degree(d)) {
      const Poly P = monic_from_code(F, d, code);
      if (P[0] == 0) continue;  // P = T
      const std::complex<double> w = genl_weight(chi, chi_star, P);
      if (w == 0.0) continue;
      // multiply by 1 / (1 - w u^d) = sum_k w^k u^{dk}
      for (std::size_t k = static_cast<std::size_t>(d); k < len; ++k) prod[k] += w * prod[k - static_cast<std::size_t>(d)];
    }
  }
  double dev = 0.0;
  for (std::size_t k = 0; k < len; ++k) dev = std::max(dev, std::abs(prod[k] - series.coeffs[k]));
  if (dev > 1e-6) throw InvariantError("Euler product mismatch: deviation " + std::to_string(dev));
  return dev;
}

CVec polynomial_roots(const CVec& p, double rel_tol) {
  double scale = 0.0;
  for (const auto& c : p) scale = std::max(scale, std::abs(c));
  if (scale == 0.0) return {};
  int k = static_cast<int>(p.size()) - 1;
  while (k > 0 && std::abs(p[static_cast<std::size_t>(k)]) <= rel_tol * scale) --k;
  if (k < 1) return {};
  const std::complex<double> lead = p[static_cast<std::size_t>(k)];
  Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(k, k);
  for (int j = 0; j < k; ++j) C(0, j) = -p[static_cast<std::size_t>(k - 1 - j)] / lead;
  for (int i = 1; i < k; ++i) C(i, i - 1) = 1.0;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(C, false);
  if (solver.info() != Eigen::Success) throw InvariantError("companion eigenvalue solver failed");

  CVec roots(static_cast<std::size_t>(k));
  for (int j = 0; j < k; ++j) {
    std::complex<double> x = solver.eigenvalues()[j];
    auto eval = [&](std::complex<double> y, std::complex<double>& df) {
      std::complex<double> f = 0.0;
      df = 0.0;
      for (int i = k; i >= 0; --i) {
        df = df * y + f;
        f = f * y + p[static_cast<std::size_t>(i)];
      }
      return f;
    };
    for (int it = 0; it < 3; ++it) {
      std::complex<double> df, dn;
      const std::complex<double> f = eval(x, df);
      if (std::abs(df) == 0.0) break;
      const std::complex<double> nx = x - f / df;
      if (!std::isfinite(nx.real()) || !std::isfinite(nx.imag())) break;
      if (std::abs(eval(nx, dn)) >= std::abs(f)) break;  // repeated roots: f is noise
      x = nx;
    }
    roots[static_cast<std::size_t>(j)] = x;
  }
  std::sort(roots.begin(), roots.end(), [](const auto& a, const auto& b) {
    if (std::abs(a) != std::abs(b)) return std::abs(a) < std::abs(b);
    return std::arg(a) < std::arg(b);
  });
  return roots;
}

RecurrenceFit detect_recurrence(const GenLSeries& series, int max_order, double tol) {
  if (max_order < 1) throw PreconditionError("need max_order >= 1");
  if (series.nmax < 2 * max_order + 4)
    throw PreconditionError("need nmax >= 2 max_order + 4 coefficients to fit a recurrence");
  // c_k is a sum of up to q^k unit terms, so rounding noise grows like q^k eps.
  CVec c = series.coeffs;
  for (std::size_t k = 0; k < c.size(); ++k)
    if (std::abs(c[k]) < 1e-13 * std::pow(static_cast<double>(series.q), static_cast<double>(k))) c[k] = 0.0;
  double cmax = 0.0;
  for (const auto& x : c) cmax = std::max(cmax, std::abs(x));

  RecurrenceFit fit;
  for (int r = 1; r <= max_order; ++r) {
    const int rows = series.nmax - r + 1;
    Eigen::MatrixXcd A(rows, r);
    Eigen::VectorXcd b(rows);
    std::vector<double> weight(static_cast<std::size_t>(rows), 0.0);
    for (int k = r; k <= series.nmax; ++k) {
      const int row = k - r;
      double scale = std::abs(c[static_cast<std::size_t>(k)]);
      for (int i = 1; i <= r; ++i) {
        A(row, i - 1) = c[static_cast<std::size_t>(k - i)];
        scale = std::max(scale, std::abs(c[static_cast<std::size_t>(k - i)]));
      }
      b(row) = c[static_cast<std::size_t>(k)];
      // rows that are numerically zero are satisfied by any recurrence
      weight[static_cast<std::size_t>(row)] = scale > 1e-9 * cmax ? 1.0 / scale : 0.0;
      A.row(row) *= weight[static_cast<std::size_t>(row)];
      b(row) *= weight[static_cast<std::size_t>(row)];
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    svd.setThreshold(tol);
    const Eigen::VectorXcd a = svd.solve(b);
    const double residual = rows ? (A * a - b).cwiseAbs().maxCoeff() : 0.0;
    if (residual >= tol) continue;

    fit.found = true;
    fit.order = r;
    fit.residual = residual;
    for (int i = 0; i < svd.singularValues().size(); ++i) fit.singular_values.push_back(svd.singularValues()[i]);
    fit.recurrence.assign(a.data(), a.data() + r);
    fit.denominator.assign(static_cast<std::size_t>(r) + 1, 0.0);
    fit.denominator[0] = 1.0;
    for (int i = 1; i <= r; ++i) fit.denominator[static_cast<std::size_t>(i)] = -a(i - 1);
    fit.numerator.assign(static_cast<std::size_t>(r), 0.0);
    for (int k = 0; k < r; ++k) {
      std::complex<double> v = 0.0;
      for (int i = 0; i <= k; ++i) v += fit.denominator[static_cast<std::size_t>(i)] * c[static_cast<std::size_t>(k - i)];
      fit.numerator[static_cast<std::size_t>(k)] = v;
    }
    // Entries below tol relative to the series are noise, not structure.
    for (auto& x : fit.recurrence)
      if (std::abs(x) < tol) x = 0.0;
    for (std::size_t i = 1; i < fit.denominator.size(); ++i)
      if (std::abs(fit.denominator[i]) < tol) fit.denominator[i] = 0.0;
    for (auto& x : fit.numerator)
      if (std::abs(x) < tol * std::max(1.0, cmax)) x = 0.0;
    fit.poles = polynomial_roots(fit.denominator);
    fit.numerator_zeros = polynomial_roots(fit.numerator);
    return fit;
  }
  return fit;
}

}  // namespace ffvar
