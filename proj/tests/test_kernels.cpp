#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "ffvar/kernels.hpp"

using namespace ffvar;

namespace {

struct Table {
  std::vector<double> c, s;
  explicit Table(std::uint32_t m) : c(m), s(m) {
    for (std::uint32_t k = 0; k < m; ++k) {
      c[k] = std::cos(2 * std::numbers::pi * k / m);
      s[k] = std::sin(2 * std::numbers::pi * k / m);
    }
  }
};

}  // namespace

TEST_CASE("scalar kernels against a plain loop") {
  std::mt19937_64 rng(2);
  for (std::uint32_t m : {1u, 2u, 6u, 97u, 1000u}) {
    const Table t(m);
    for (std::size_t n : {0u, 1u, 2u, 3u, 4u, 7u, 33u}) {
      std::vector<std::uint32_t> ph(n), st(n);
      std::vector<double> w(n);
      for (std::size_t i = 0; i < n; ++i) {
        ph[i] = static_cast<std::uint32_t>(rng() % m);
        st[i] = static_cast<std::uint32_t>(rng() % m);
        w[i] = static_cast<double>(rng() % 100);
      }
      auto expect_ph = ph;
      std::complex<double> expect = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        expect_ph[i] = (expect_ph[i] + st[i]) % m;
        expect += w[i] * std::complex<double>(t.c[expect_ph[i]], t.s[expect_ph[i]]);
      }
      const auto got = kernels::scalar::advance_and_sum(ph.data(), st.data(), n, m, w.data(), t.c.data(), t.s.data());
      CHECK(ph == expect_ph);
      CHECK(std::abs(got - expect) < 1e-9 * (1.0 + n));
      const auto again = kernels::scalar::weighted_phase_sum(ph.data(), w.data(), n, t.c.data(), t.s.data());
      CHECK(again == got);
    }
  }
}

TEST_CASE("AVX2 kernels are bit-identical to scalar") {
  if (!kernels::avx2_supported()) {
    MESSAGE("AVX2 not available; skipped");
    return;
  }
  std::mt19937_64 rng(4);
  for (std::uint32_t m : {1u, 2u, 12u, 97u, 65536u, (1u << 31) - 1}) {
    const std::uint32_t tm = std::min<std::uint32_t>(m, 1u << 16);
    const Table t(tm);
    for (int rep = 0; rep < 40; ++rep) {
      const std::size_t n = rng() % 300;
      std::vector<std::uint32_t> ph(n), st(n);
      std::vector<double> w(n);
      for (std::size_t i = 0; i < n; ++i) {
        ph[i] = static_cast<std::uint32_t>(rng() % m);
        st[i] = static_cast<std::uint32_t>(rng() % m);
        w[i] = std::ldexp(static_cast<double>(rng() % 100000), -7);
      }
      auto a = ph, b = ph;
      kernels::scalar::advance_phases(a.data(), st.data(), n, m);
      kernels::avx2::advance_phases(b.data(), st.data(), n, m);
      CHECK(a == b);
      if (m > tm) continue;
      const auto s1 = kernels::scalar::weighted_phase_sum(a.data(), w.data(), n, t.c.data(), t.s.data());
      double v1[2];
      kernels::avx2::weighted_phase_sum(a.data(), w.data(), n, t.c.data(), t.s.data(), v1);
      CHECK(s1.real() == v1[0]);
      CHECK(s1.imag() == v1[1]);
      auto c = ph, d = ph;
      const auto s2 = kernels::scalar::advance_and_sum(c.data(), st.data(), n, m, w.data(), t.c.data(), t.s.data());
      double v2[2];
      kernels::avx2::advance_and_sum(d.data(), st.data(), n, m, w.data(), t.c.data(), t.s.data(), v2);
      CHECK(c == d);
      CHECK(s2.real() == v2[0]);
      CHECK(s2.imag() == v2[1]);
    }
  }
}

TEST_CASE("dispatch") {
  CHECK((kernels::active_isa() == kernels::Isa::kScalar || kernels::avx2_supported()));
  CHECK(std::string(kernels::isa_name(kernels::Isa::kScalar)) == "scalar");
}
