// Compiled with -mavx2. Nothing here may be called unless the CPU has AVX2.
#include <immintrin.h>

#include <cstddef>
#include <cstdint>

namespace ffvar::kernels::avx2 {

namespace {

inline __m256i advance8(__m256i p, __m256i s, __m256i m) {
  const __m256i v = _mm256_add_epi32(p, s);
  // v - m wraps to a large value exactly when v < m.
  return _mm256_min_epu32(v, _mm256_sub_epi32(v, m));
}

inline void accumulate4(const std::uint32_t* phase, const double* w, const double* cos_t,
                        const double* sin_t, __m256d& re, __m256d& im) {
  const __m128i idx = _mm_loadu_si128(reinterpret_cast<const __m128i*>(phase));
  const __m256d c = _mm256_i32gather_pd(cos_t, idx, 8);
  const __m256d s = _mm256_i32gather_pd(sin_t, idx, 8);
  const __m256d wv = _mm256_loadu_pd(w);
  re = _mm256_add_pd(re, _mm256_mul_pd(wv, c));
  im = _mm256_add_pd(im, _mm256_mul_pd(wv, s));
}

void finish(__m256d re, __m256d im, const std::uint32_t* phase, const double* w, std::size_t start,
            std::size_t n, const double* cos_t, const double* sin_t, double* out) {
  alignas(32) double r[4], s[4];
  _mm256_store_pd(r, re);
  _mm256_store_pd(s, im);
  for (std::size_t i = start; i < n; ++i) {
    const double a = w[i] * cos_t[phase[i]];
    const double b = w[i] * sin_t[phase[i]];
    r[i & 3] += a;
    s[i & 3] += b;
  }
  out[0] = (r[0] + r[1]) + (r[2] + r[3]);
  out[1] = (s[0] + s[1]) + (s[2] + s[3]);
}

}  // namespace

void advance_phases(std::uint32_t* phase, const std::uint32_t* step, std::size_t n, std::uint32_t m) {
  const __m256i mv = _mm256_set1_epi32(static_cast<int>(m));
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256i p = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(phase + i));
    const __m256i s = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(step + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(phase + i), advance8(p, s, mv));
  }
  for (; i < n; ++i) {
    const std::uint32_t v = phase[i] + step[i];
    phase[i] = v >= m ? v - m : v;
  }
}

void weighted_phase_sum(const std::uint32_t* phase, const double* w, std::size_t n, const double* cos_t,
                        const double* sin_t, double* out) {
  __m256d re = _mm256_setzero_pd();
  __m256d im = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) accumulate4(phase + i, w + i, cos_t, sin_t, re, im);
  finish(re, im, phase, w, i, n, cos_t, sin_t, out);
}

void advance_and_sum(std::uint32_t* phase, const std::uint32_t* step, std::size_t n, std::uint32_t m,
                     const double* w, const double* cos_t, const double* sin_t, double* out) {
  const __m256i mv = _mm256_set1_epi32(static_cast<int>(m));
  __m256d re = _mm256_setzero_pd();
  __m256d im = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256i p = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(phase + i));
    const __m256i s = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(step + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(phase + i), advance8(p, s, mv));
    accumulate4(phase + i, w + i, cos_t, sin_t, re, im);
    accumulate4(phase + i + 4, w + i + 4, cos_t, sin_t, re, im);
  }
  for (std::size_t j = i; j < n; ++j) {
    const std::uint32_t v = phase[j] + step[j];
    phase[j] = v >= m ? v - m : v;
  }
  for (; i + 4 <= n; i += 4) accumulate4(phase + i, w + i, cos_t, sin_t, re, im);
  finish(re, im, phase, w, i, n, cos_t, sin_t, out);
}

}  // namespace ffvar::kernels::avx2
