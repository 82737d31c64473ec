#include "ffvar/kernels.hpp"

namespace ffvar::kernels::scalar {

void advance_phases(std::uint32_t* phase, const std::uint32_t* step, std::size_t n, std::uint32_t m) {
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint32_t v = phase[i] + step[i];
    phase[i] = v >= m ? v - m : v;
  }
}

std::complex<double> weighted_phase_sum(const std::uint32_t* phase, const double* w, std::size_t n,
                                        const double* cos_t, const double* sin_t) {
  double re[4] = {0, 0, 0, 0};
  double im[4] = {0, 0, 0, 0};
  for (std::size_t i = 0; i < n; ++i) {
    const double a = w[i] * cos_t[phase[i]];
    const double b = w[i] * sin_t[phase[i]];
    re[i & 3] += a;
    im[i & 3] += b;
  }
  return {(re[0] + re[1]) + (re[2] + re[3]), (im[0] + im[1]) + (im[2] + im[3])};
}

std::complex<double> advance_and_sum(std::uint32_t* phase, const std::uint32_t* step, std::size_t n,
                                     std::uint32_t m, const double* w, const double* cos_t,
                                     const double* sin_t) {
  advance_phases(phase, step, n, m);
  return weighted_phase_sum(phase, w, n, cos_t, sin_t);
}

}  // namespace ffvar::kernels::scalar
