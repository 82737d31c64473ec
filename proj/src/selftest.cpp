#include <cmath>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "ffvar/cli.hpp"
#include "ffvar/errors.hpp"
#include "ffvar/genlfunc.hpp"
#include "ffvar/kernels.hpp"
#include "ffvar/lfunctions.hpp"
#include "ffvar/reports.hpp"
#include "ffvar/variance.hpp"

namespace ffvar::cli {

namespace {

struct Check {
  std::string name;
  std::function<std::string()> run;  // empty string means pass
};

std::string expect(bool ok, const std::string& what) { return ok ? std::string() : what; }

std::vector<Check> checks() {
  std::vector<Check> c;

  c.push_back({"euclidean division", [] {
                 const Field F = field_of_order(3);
                 const auto [quo, rem] = euclidean_division(parse_poly(*F, "1,2,1"), parse_poly(*F, "1,1"));
                 return expect(quo == parse_poly(*F, "1,1") && rem.is_zero(), "(T^2+2T+1)/(T+1) wrong");
               }});

  c.push_back({"involution", [] {
                 const Field F = field_of_order(3);
                 return expect(involution(parse_poly(*F, "0,2,0,1")) == parse_poly(*F, "1,0,2"), "(T^3+2T)* wrong");
               }});

  c.push_back({"prime number theorem", [] {
                 for (std::uint32_t q : {2u, 3u, 4u, 5u}) {
                   const Field F = field_of_order(q);
                   for (int n = 1; n <= 6; ++n)
                     if (psi_total(*F, n) != ipow(q, static_cast<unsigned>(n)))
                       return "q=" + std::to_string(q) + " n=" + std::to_string(n);
                 }
                 return std::string();
               }});

  c.push_back({"euler phi", [] {
                 const Field F = field_of_order(3);
                 return expect(euler_phi(parse_poly(*F, "0,1")) == 2 && euler_phi(parse_poly(*F, "0,0,1")) == 6 &&
                                   euler_phi(parse_poly(*F, "0,1,1")) == 4,
                               "phi values wrong");
               }});

  c.push_back({"mean value", [] {
                 const Field F = field_of_order(3);
                 PrimeCache cache(*F);
                 return expect(mean_value(2, 0, parse_poly(*F, "1,1"), cache) == Rational(7, 6), "mean != 7/6");
               }});

  c.push_back({"character census", [] {
                 const Field F = field_of_order(3);
                 const UnitGroup G(parse_poly(*F, "0,0,1"));
                 const auto a = character_census(CharacterGroup(G));
                 const UnitGroup H(parse_poly(*F, "1,0,1"));
                 const auto b = character_census(CharacterGroup(H));
                 return expect(a.even == 3 && b.total == 8 && b.even == 4, "census counts wrong");
               }});

  c.push_back({"orthogonality", [] {
                 const Field F = field_of_order(3);
                 const UnitGroup G(parse_poly(*F, "0,0,1,1"));
                 const CharacterGroup X(G);
                 for (std::uint32_t a = 0; a < X.size(); ++a) {
                   std::complex<double> s = 0.0;
                   for (std::uint32_t u = 0; u < G.order(); ++u) s += X.root(X.phase(a, u));
                   const double want = a == 0 ? G.order() : 0.0;
                   if (std::abs(s - want) > 1e-9 * G.order()) return "character " + std::to_string(a);
                 }
                 return std::string();
               }});

  c.push_back({"explicit formula", [] {
                 const Field F = field_of_order(3);
                 PrimeCache cache(*F);
                 const UnitGroup G(parse_poly(*F, "1,0,2,1"));
                 const CharacterGroup X(G);
                 for (std::uint32_t i = 1; i < X.size(); ++i) {
                   const auto chi = X.character(i);
                   if (!chi.is_primitive()) continue;
                   const auto spec = frobenius_spectrum(chi);
                   for (int n = 1; n <= 6; ++n) trace_theta_checked(chi, spec, cache.mangoldt(n));
                 }
                 return std::string();
               }});

  c.push_back({"spectral identity", [] {
                 const Field F = field_of_order(3);
                 PrimeCache cache(*F);
                 for (const char* text : {"1,1", "1,0,1", "2,1,1"}) {
                   const Poly Q = parse_poly(*F, text);
                   const auto d = variance_direct(4, 1, Q, cache);
                   const auto s = variance_spectral(4, 1, Q, cache);
                   if (std::abs(d.v_tilde - s.full) > 1e-6 * (1.0 + s.full)) return std::string("Q = ") + text;
                 }
                 return std::string();
               }});

  c.push_back({"dual transfer", [] {
                 const Field F = field_of_order(3);
                 std::mt19937_64 rng(0);
                 for (int t = 0; t < 20; ++t) {
                   const Poly Q = random_squarefree(*F, 2, rng);
                   const int h = static_cast<int>(rng() % 2);
                   Poly B = random_poly(*F, 1 + static_cast<int>(rng() % 2), rng, false);
                   Poly A = random_poly(*F, 1, rng, false);
                   if (gcd(A, Q).degree() != 0) A = Poly::constant(*F, 1);
                   if (dual_transfer(B, h, Q, A) != psi_hybrid(B.shifted(h + 1), h, Q, A))
                     return "instance " + std::to_string(t);
                 }
                 return std::string();
               }});

  c.push_back({"generalized series", [] {
                 const Field F = field_of_order(3);
                 const UnitGroup G(parse_poly(*F, "1,1"));
                 const UnitGroup H(Poly::monomial(*F, 2));
                 const CharacterGroup X(G), Y(H);
                 const auto s = genl_coefficients(X.character(0), Y.character(0), 8);
                 PrimeCache cache(*F);
                 euler_product_check(X.character(0), Y.character(0), s, 6, cache);
                 // monic N prime to T(T+1): q^n - 2 q^{n-1} + q^{n-2}
                 for (int n = 1; n <= 8; ++n) {
                   const double want = std::pow(3.0, n) - 2.0 * std::pow(3.0, n - 1) + (n >= 2 ? std::pow(3.0, n - 2) : 0.0);
                   if (std::abs(s.coeffs[static_cast<std::size_t>(n)] - want) > 1e-9) return "c_" + std::to_string(n);
                 }
                 return expect(std::abs(s.coeffs[0] - 1.0) < 1e-12, "c_0 != 1");
               }});

  c.push_back({"kernel equivalence", [] {
                 if (!kernels::avx2_supported()) return std::string();
                 const std::uint32_t m = 60;
                 std::vector<double> cs(m), sn(m);
                 for (std::uint32_t k = 0; k < m; ++k) {
                   cs[k] = std::cos(2 * M_PI * k / m);
                   sn[k] = std::sin(2 * M_PI * k / m);
                 }
                 std::mt19937_64 rng(1);
                 for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 17u, 64u, 101u}) {
                   std::vector<std::uint32_t> p(n), st(n);
                   std::vector<double> w(n);
                   for (std::size_t i = 0; i < n; ++i) {
                     p[i] = static_cast<std::uint32_t>(rng() % m);
                     st[i] = static_cast<std::uint32_t>(rng() % m);
                     w[i] = static_cast<double>(rng() % 1000) / 7.0;
                   }
                   auto p2 = p;
                   const auto a = kernels::scalar::advance_and_sum(p.data(), st.data(), n, m, w.data(), cs.data(), sn.data());
                   double b[2];
                   kernels::avx2::advance_and_sum(p2.data(), st.data(), n, m, w.data(), cs.data(), sn.data(), b);
                   if (p != p2 || a.real() != b[0] || a.imag() != b[1]) return "n = " + std::to_string(n);
                 }
                 return std::string();
               }});

  return c;
}

}  // namespace

int selftest(std::ostream& out) {
  int failures = 0;
  for (const auto& check : checks()) {
    std::string msg;
    try {
      msg = check.run();
    } catch (const std::exception& e) {
      msg = e.what();
    }
    if (msg.empty()) {
      out << "ok   " << check.name << "\n";
    } else {
      out << "FAIL " << check.name << ": " << msg << "\n";
      ++failures;
    }
  }
  out << (failures ? "selftest failed: " + std::to_string(failures) + " check(s)\n" : std::string("selftest passed\n"));
  return failures;
}

}  // namespace ffvar::cli
