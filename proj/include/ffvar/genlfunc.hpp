#pragma once

#include <vector>

#include "ffvar/lfunctions.hpp"

namespace ffvar {

/// Coefficients in u = q^{-s} of sum over monic N with N(0) != 0 of
/// chi(N) chi*(N*) u^{deg N}, where chi* is a character modulo T^m.
struct GenLSeries {
  CVec coeffs;  // c_0..c_nmax
  int nmax = 0;
  std::uint32_t q = 0;
};

/// chi(N) chi*(N*); zero when T | N.
std::complex<double> genl_weight(const DirichletCharacter& chi, const DirichletCharacter& chi_star, const Poly& N);

GenLSeries genl_coefficients(const DirichletCharacter& chi, const DirichletCharacter& chi_star, int nmax);

/// Largest coefficient deviation between the series and the Euler product
/// over monic irreducible P != T of degree <= degree_cut. Throws
/// InvariantError when it exceeds 1e-6.
double euler_product_check(const DirichletCharacter& chi, const DirichletCharacter& chi_star,
                           const GenLSeries& series, int degree_cut, PrimeCache& cache);

struct RecurrenceFit {
  bool found = false;
  /// Length r of the recurrence c_k = sum_{i=1..r} a_i c_{k-i} (k >= r).
  int order = 0;
  CVec recurrence;   // a_1..a_r
  CVec denominator;  // 1 - a_1 u - ... - a_r u^r
  CVec numerator;    // p_0..p_{r-1}, series times denominator
  double residual = 0.0;
  std::vector<double> singular_values;
  CVec poles;            // zeros of the denominator
  CVec numerator_zeros;  // zeros of the numerator
};

/// Smallest r <= max_order whose least-squares recurrence (Hankel system,
/// singular values below tol * sigma_max dropped) reproduces c_r..c_nmax
/// with relative residual < tol. Needs nmax >= 2 max_order + 4.
RecurrenceFit detect_recurrence(const GenLSeries& series, int max_order, double tol = 1e-8);

/// Roots of p_0 + p_1 u + ... + p_k u^k after trimming negligible top terms.
CVec polynomial_roots(const CVec& p, double rel_tol = 1e-9);

}  // namespace ffvar
