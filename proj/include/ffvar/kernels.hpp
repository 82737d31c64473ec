#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>

// Inner loops of the character sweeps. Each kernel has a portable scalar
// version and an AVX2 version; both accumulate in the same four interleaved
// lanes (element i goes to lane i % 4, lanes combined as (l0 + l1) + (l2 + l3))
// without fused multiply-add, so the two produce bit-identical results.

namespace ffvar::kernels {

enum class Isa { kScalar, kAvx2 };

/// ISA used by the dispatching entry points. Chosen once from the CPU
/// features; FFVAR_ISA=scalar forces the portable path.
Isa active_isa();
const char* isa_name(Isa isa);
bool avx2_supported();

/// phase[i] = (phase[i] + step[i]) mod m for phases and steps in [0, m), m < 2^31.
void advance_phases(std::uint32_t* phase, const std::uint32_t* step, std::size_t n, std::uint32_t m);

/// sum_i w[i] * (cos_t[phase[i]] + i sin_t[phase[i]]).
std::complex<double> weighted_phase_sum(const std::uint32_t* phase, const double* w, std::size_t n,
                                        const double* cos_t, const double* sin_t);

/// advance_phases followed by weighted_phase_sum in one pass.
std::complex<double> advance_and_sum(std::uint32_t* phase, const std::uint32_t* step, std::size_t n,
                                     std::uint32_t m, const double* w, const double* cos_t,
                                     const double* sin_t);

namespace scalar {
void advance_phases(std::uint32_t* phase, const std::uint32_t* step, std::size_t n, std::uint32_t m);
std::complex<double> weighted_phase_sum(const std::uint32_t* phase, const double* w, std::size_t n,
                                        const double* cos_t, const double* sin_t);
std::complex<double> advance_and_sum(std::uint32_t* phase, const std::uint32_t* step, std::size_t n,
                                     std::uint32_t m, const double* w, const double* cos_t,
                                     const double* sin_t);
}  // namespace scalar

namespace avx2 {
// Only callable when avx2_supported(). Results come back through out[2]
// (real, imaginary) so no std::complex code is compiled with -mavx2.
void advance_phases(std::uint32_t* phase, const std::uint32_t* step, std::size_t n, std::uint32_t m);
void weighted_phase_sum(const std::uint32_t* phase, const double* w, std::size_t n, const double* cos_t,
                        const double* sin_t, double* out);
void advance_and_sum(std::uint32_t* phase, const std::uint32_t* step, std::size_t n, std::uint32_t m,
                     const double* w, const double* cos_t, const double* sin_t, double* out);
}  // namespace avx2

}  // namespace ffvar::kernels
