#pragma once

#include <complex>
#include <vector>

#include "ffvar/characters.hpp"
#include "ffvar/polyring.hpp"

namespace ffvar {

using CVec = std::vector<std::complex<double>>;

/// Coefficients c_0..c_D of L(u, chi) = sum_n (sum_{N in M_n} chi(N)) u^n,
/// D = deg Q - 1, by direct enumeration. One extra coefficient is computed
/// and must vanish. Throws for the trivial character.
CVec l_polynomial(const DirichletCharacter& chi);

/// L*(u, chi): L divided by (1 - u) for even chi, unchanged for odd chi.
/// chi must be primitive.
CVec completed_l(const DirichletCharacter& chi, const CVec& L);

struct FrobeniusSpectrum {
  int d = 0;
  /// Eigenphases of Theta_chi in [0, 2 pi), ascending.
  std::vector<double> phases;
  /// Inverse roots alpha_j of L*, in the order of `phases`.
  CVec inverse_roots;
  /// max_j | |alpha_j| / sqrt(q) - 1 |.
  double rh_max_deviation = 0.0;
};

/// Spectrum of the unitarized Frobenius for a primitive nontrivial chi.
/// Throws InvariantError("RH violation") when an inverse root is off the
/// circle |u| = sqrt(q) by more than 1e-4 sqrt(q).
FrobeniusSpectrum frobenius_spectrum(const DirichletCharacter& chi);

/// sum_j e^{i n theta_j}; n = 0 gives d.
std::complex<double> trace_theta(const FrobeniusSpectrum& spec, int n);

/// sum_{N in M_n} chi(N) Lambda(N).
std::complex<double> mangoldt_character_sum(const DirichletCharacter& chi, const MangoldtTable& table);

/// -q^{-n/2} (sum_{N in M_n} chi(N) Lambda(N) + lambda_chi).
std::complex<double> trace_theta_explicit(const DirichletCharacter& chi, const MangoldtTable& table);

/// Both routes; throws InvariantError("explicit formula mismatch") when they
/// differ by more than 1e-6 max(d, 1).
std::complex<double> trace_theta_checked(const DirichletCharacter& chi, const FrobeniusSpectrum& spec,
                                         const MangoldtTable& table);

/// sum chi(N) Lambda(N) over degree-n N: monic only, or all of them.
std::complex<double> psi_chi(const DirichletCharacter& chi, int n, bool monic_only, PrimeCache& cache);

/// Histogram of Lambda over monic N of degree n coprime to Q, keyed by unit
/// index mod Q (the input of sweep_characters for the sums above).
std::vector<WeightedUnit> mangoldt_histogram(const UnitGroup& G, const MangoldtTable& table);

}  // namespace ffvar
