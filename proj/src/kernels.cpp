#include "ffvar/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace ffvar::kernels {

bool avx2_supported() {
#if defined(__x86_64__) || defined(__i386__)
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Isa active_isa() {
  static const Isa isa = [] {
    const char* env = std::getenv("FFVAR_ISA");
    if (env && std::strcmp(env, "scalar") == 0) return Isa::kScalar;
    return avx2_supported() ? Isa::kAvx2 : Isa::kScalar;
  }();
  return isa;
}

const char* isa_name(Isa isa) { return isa == Isa::kAvx2 ? "avx2" : "scalar"; }

void advance_phases(std::uint32_t* phase, const std::uint32_t* step, std::size_t n, std::uint32_t m) {
  if (active_isa() == Isa::kAvx2)
    avx2::advance_phases(phase, step, n, m);
  else
    scalar::advance_phases(phase, step, n, m);
}

std::complex<double> weighted_phase_sum(const std::uint32_t* phase, const double* w, std::size_t n,
                                        const double* cos_t, const double* sin_t) {
  if (active_isa() == Isa::kAvx2) {
    double out[2];
    avx2::weighted_phase_sum(phase, w, n, cos_t, sin_t, out);
    return {out[0], out[1]};
  }
  return scalar::weighted_phase_sum(phase, w, n, cos_t, sin_t);
}

std::complex<double> advance_and_sum(std::uint32_t* phase, const std::uint32_t* step, std::size_t n,
                                     std::uint32_t m, const double* w, const double* cos_t,
                                     const double* sin_t) {
  if (active_isa() == Isa::kAvx2) {
    double out[2];
    avx2::advance_and_sum(phase, step, n, m, w, cos_t, sin_t, out);
    return {out[0], out[1]};
  }
  return scalar::advance_and_sum(phase, step, n, m, w, cos_t, sin_t);
}

}  // namespace ffvar::kernels
