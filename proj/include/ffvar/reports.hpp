#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ffvar/variance.hpp"

namespace ffvar {

/// Empirical constant allowed in front of every error envelope.
inline constexpr double kEnvelopeConstant = 10.0;

/// The two exact sums behind the small-interval regime deg Q > h: each side
/// of both identities, the left computed by literal enumeration of every
/// C in M_n and every N in I(C;h).
struct IntervalSums {
  std::uint64_t lambda_lhs = 0, lambda_rhs = 0;
  std::uint64_t lambda_sq_lhs = 0, lambda_sq_rhs = 0;
  bool exact() const { return lambda_lhs == lambda_rhs && lambda_sq_lhs == lambda_sq_rhs; }
};

IntervalSums interval_sums(int n, int h, const Poly& Q, PrimeCache& cache);

struct TheoremReport {
  int part = 0;  // 1, 2 or 3
  std::uint32_t q = 0;
  int n = 0, h = 0;
  Poly Q;
  std::uint64_t phi = 0;
  DirectVariance direct;
  double main_term = 0.0;
  double residual = 0.0;
  /// Shape of the error term (without the constant); absent for part 3.
  std::optional<double> envelope;
  /// |residual| / envelope.
  std::optional<double> constant;
  double ratio = 0.0;  // V / main_term
  std::optional<IntervalSums> sums;
  std::optional<SpectralVariance> spectral;
  std::string note;
};

/// deg Q > h, Q(0) != 0. Main term n q^{h+1} - q^{2(h+1)}/phi(Q).
TheoremReport theorem_i_report(int n, int h, const Poly& Q, PrimeCache& cache);
/// 1 <= deg Q <= n, Q(0) != 0. Main term from the primitive even spectrum.
TheoremReport theorem_ii_report(int n, int h, const Poly& Q, PrimeCache& cache);
/// n >= 5, 1 <= h <= n-4, Q square-free, 3 <= deg Q <= h+2, Q(0) != 0.
/// Prediction q^{h+1}(n-h-2+deg Q), which rests on an unproven hypothesis.
TheoremReport theorem_iii_report(int n, int h, const Poly& Q, PrimeCache& cache);

// ---------------------------------------------------------------------------

struct TraceMoment {
  std::uint64_t characters = 0;
  double average = 0.0;
};

/// Average of |tr Theta^n_chi|^2 over primitive characters of the given
/// parity modulo Q, with traces from the explicit formula.
TraceMoment primitive_trace_moment(const Poly& Q, int n, Parity parity, PrimeCache& cache);

struct EquidistributionRow {
  std::string family;  // "hybrid", "even", "odd"
  std::uint32_t q = 0;
  std::string modulus;  // coefficient list, constant term first
  int n = 0;
  std::uint64_t characters = 0;
  double average = 0.0;
  double reference = 0.0;
  double deviation = 0.0;  // average - reference
};

/// Primitive even characters mod T^l against min{n, l-2}.
EquidistributionRow even_baseline(const FiniteField& F, int l, int n, PrimeCache& cache);
/// Primitive odd characters mod a square-free Q against min{n, deg Q - 1}.
EquidistributionRow odd_baseline(const Poly& Q, int n, PrimeCache& cache);

/// Uniform monic square-free polynomial of degree m with nonzero constant term.
Poly random_squarefree(const FiniteField& F, int m, std::mt19937_64& rng);

struct ConjectureConfig {
  int l = 4;
  int m = 3;
  int n = 6;
  std::vector<std::uint32_t> qs{3, 5, 7};
  int moduli_per_field = 2;
  std::uint64_t seed = 0;
};

/// Per field: the even baseline mod T^l, then for each random square-free Q
/// of degree m the hybrid row mod T^l Q (reference min{n, l+m-2}) and the odd
/// baseline mod Q.
std::vector<EquidistributionRow> conjecture_scan(const ConjectureConfig& cfg);

}  // namespace ffvar
