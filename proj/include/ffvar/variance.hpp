#pragma once

#include <cstdint>
#include <vector>

#include <boost/rational.hpp>

#include "ffvar/characters.hpp"
#include "ffvar/polyring.hpp"

namespace ffvar {

using Rational = boost::rational<std::int64_t>;

/// sum of Lambda(f) over f in I(C;h) = C + P_{<=h} with f(0) != 0.
std::uint64_t nu(const Poly& C, int h);

/// sum of Lambda(N) over monic N of degree n with N = A mod Q.
std::uint64_t psi_progression(int n, const Poly& Q, const Poly& A);

/// sum of Lambda(N) over N in I(C;h) with N(0) != 0 and N = A mod Q. C need
/// not be monic; the interval is C plus every polynomial of degree <= h.
std::uint64_t psi_hybrid(const Poly& C, int h, const Poly& Q, const Poly& A);

/// Exact mean of Psi(C,h;Q,A) over C in M_n and (A,Q) = 1, by the definition
/// and by the closed form; throws InvariantError if they differ.
Rational mean_value(int n, int h, const Poly& Q, PrimeCache& cache);

/// Closed form (q^n - sum_{P | Q, P != T, deg P | n} deg P - Lambda(T^n)) /
/// (phi(Q) q^{n-h-1}).
Rational mean_value_closed_form(int n, int h, const Poly& Q);

struct DirectVariance {
  /// Centered at q^{h+1}/phi(Q).
  double v = 0.0;
  /// Centered at the exact mean.
  double v_tilde = 0.0;
  Rational mean;
  std::uint64_t phi = 0;
};

/// V and V~ by enumeration of the prime powers of degree n, bucketed by the
/// interval (top coefficients) and by residue class. Q may be constant.
DirectVariance variance_direct(int n, int h, const Poly& Q, PrimeCache& cache);

/// The representative A0 + Q T^{n - deg Q} of A mod Q, of degree exactly n.
Poly degree_n_representative(const Poly& A, const Poly& Q, int n);

/// sum of Lambda(N) over deg N = n (n = h + 1 + deg B) with N = B* mod T^{n-h}
/// and N = A~* mod Q*. Equals psi_hybrid(T^{h+1} B, h, Q, A).
std::uint64_t dual_transfer(const Poly& B, int h, const Poly& Q, const Poly& A);

/// T^{n-h} Q*.
Poly dual_modulus(int n, int h, const Poly& Q);

struct SpectralVariance {
  Poly q_tilde;
  std::uint64_t phi_q_tilde = 0;
  /// (1/((q-1) q^{n-h-1} phi(Q~))) sum over even nontrivial chi mod Q~ of |Psi(n, chi)|^2.
  double full = 0.0;
  /// q^{h+1}(q-1)/phi(Q~) sum over primitive even chi of |tr Theta^n|^2.
  double primitive_even_main = 0.0;
  std::uint64_t even_characters = 0;
  std::uint64_t primitive_even_characters = 0;
};

/// Needs Q(0) != 0, 1 <= deg Q <= n, 0 <= h <= n - 1.
SpectralVariance variance_spectral(int n, int h, const Poly& Q, PrimeCache& cache);

/// The same sum taken over every nontrivial character mod Q~ with Psi(n, chi)
/// summed over all (not only monic) N of degree n, with no parity filter.
double variance_spectral_unfiltered(int n, int h, const Poly& Q, PrimeCache& cache);

/// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x);
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace ffvar
