#include <doctest.h>

#include <cmath>
#include <map>
#include <random>
#include <set>

#include "ffvar/errors.hpp"
#include "ffvar/lfunctions.hpp"
#include "ffvar/reports.hpp"
#include "ffvar/variance.hpp"

#include "oracles.hpp"

using namespace ffvar;

namespace {

struct Literal {
  double v = 0.0, v_tilde = 0.0;
  Rational mean;
};

// Definition of V and V~: every C in M_n, every unit class A, with Psi(C,h;Q,A)
// accumulated by walking the interval and reducing mod Q.
Literal literal_variance(int n, int h, const Poly& Q) {
  const FiniteField& F = Q.field();
  const std::uint64_t phi = euler_phi(Q);
  const std::uint64_t block = ipow(F.q(), static_cast<unsigned>(h + 1));
  std::vector<std::map<std::vector<Elem>, std::int64_t>> per_c;
  std::int64_t total = 0;
  for (const Poly& C : enumerate_monic(F, n)) {
    std::map<std::vector<Elem>, std::int64_t> psi;
    for (std::uint64_t code = 0; code < block; ++code) {
      const Poly N = C + poly_from_code(F, code);
      if (N[0] == 0 || gcd(N, Q).degree() != 0) continue;
      psi[mod(N, Q).coeffs()] += von_mangoldt(N);
      total += von_mangoldt(N);
    }
    per_c.push_back(std::move(psi));
  }
  const double qn = static_cast<double>(ipow(F.q(), static_cast<unsigned>(n)));
  Literal out;
  out.mean = Rational(total, static_cast<std::int64_t>(qn) * static_cast<std::int64_t>(phi));
  const double c1 = static_cast<double>(block) / static_cast<double>(phi);
  const double c2 = boost::rational_cast<double>(out.mean);
  for (const auto& psi : per_c) {
    for (const auto& [a, v] : psi) {
      out.v += (v - c1) * (v - c1);
      out.v_tilde += (v - c2) * (v - c2);
    }
    const double empty = static_cast<double>(phi - psi.size());
    out.v += empty * c1 * c1;
    out.v_tilde += empty * c2 * c2;
  }
  out.v /= qn;
  out.v_tilde /= qn;
  return out;
}

std::vector<Poly> unit_residues(const Poly& Q) {
  std::vector<Poly> out;
  const FiniteField& F = Q.field();
  for (std::uint64_t c = 0; c < ipow(F.q(), static_cast<unsigned>(Q.degree())); ++c) {
    const Poly A = poly_from_code(F, c);
    if (!A.is_zero() && gcd(A, Q).degree() == 0) out.push_back(A);
  }
  return out;
}

bool close(double a, double b, double rel = 1e-9) { return std::abs(a - b) <= rel * (1.0 + std::abs(b)); }

}  // namespace

TEST_CASE("nu") {
  const Field F = field_of_order(3);
  CHECK(nu(Poly::monomial(*F, 2), 0) == 2);
  CHECK_THROWS_AS(nu(Poly::monomial(*F, 2), 2), PreconditionError);
  for (std::uint64_t q : {2, 3, 5}) {
    const Field G = field_of_order(q);
    for (int n = 2; n <= 4; ++n)
      for (int h = 0; h < n; ++h) {
        if (ipow(q, static_cast<unsigned>(n + h + 1)) > 200000) continue;
        std::uint64_t total = 0;
        for (const Poly& C : enumerate_monic(*G, n)) total += nu(C, h);
        CHECK(total == ipow(q, static_cast<unsigned>(h + 1)) * (ipow(q, static_cast<unsigned>(n)) - 1));
      }
  }
}

TEST_CASE("psi_progression and psi_hybrid") {
  const Field F = field_of_order(3);
  PrimeCache cache(*F);
  for (const char* text : {"1,1", "0,0,1", "2,1,1", "1,0,1,1"}) {
    const auto parsed = oracle::try_parse(*F, text);
      if (!parsed) continue;
      const Poly Q = *parsed;
    for (int n = 1; n <= 4; ++n) {
      std::uint64_t total = 0, excluded = 0;
      for (const Poly& A : unit_residues(Q)) total += psi_progression(n, Q, A);
      for (const Poly& N : enumerate_monic(*F, n))
        if (gcd(N, Q).degree() != 0) excluded += von_mangoldt(N);
      CHECK(total == ipow(3, static_cast<unsigned>(n)) - excluded);
    }
  }
  {
    // deg Q > n: a prime A of degree n is its own unique representative
    const Poly Q = parse_poly(*F, "1,0,0,0,1");
    CHECK(psi_progression(2, Q, parse_poly(*F, "1,0,1")) == 2);
    CHECK(psi_progression(2, Q, parse_poly(*F, "1,0,0,1")) == 0);
  }
  CHECK_THROWS_AS(psi_progression(2, parse_poly(*F, "0,1"), parse_poly(*F, "0,2")), PreconditionError);

  // deg Q > h: at most one N in the interval hits the class
  std::mt19937_64 rng(31);
  for (int t = 0; t < 200; ++t) {
    const int n = 3 + static_cast<int>(rng() % 2);
    const int h = static_cast<int>(rng() % 2);
    const Poly Q = random_poly(*F, h + 1 + static_cast<int>(rng() % 2), rng, true);
    const Poly C = random_poly(*F, n, rng, true);
    Poly A = random_poly(*F, 1, rng, false);
    if (gcd(A, Q).degree() != 0) A = Poly::constant(*F, 1);
    int hits = 0;
    unsigned lam = 0;
    for (std::uint64_t code = 0; code < ipow(3, static_cast<unsigned>(h + 1)); ++code) {
      const Poly N = C + poly_from_code(*F, code);
      if (N[0] != 0 && mod(N - A, Q).is_zero()) {
        ++hits;
        lam = von_mangoldt(N);
      }
    }
    CHECK(hits <= 1);
    CHECK(psi_hybrid(C, h, Q, A) == (hits ? lam : 0));
  }
  {
    // deg Q = 1, h = n - 1: summing over A gives the interval total
    const Poly C = Poly::monomial(*F, 3);
    const Poly Q = parse_poly(*F, "1,1");
    std::uint64_t total = 0, direct = 0;
    for (const Poly& A : unit_residues(Q)) total += psi_hybrid(C, 2, Q, A);
    for (std::uint64_t code = 0; code < 27; ++code) {
      const Poly N = C + poly_from_code(*F, code);
      if (N[0] != 0 && gcd(N, Q).degree() == 0) direct += von_mangoldt(N);
    }
    CHECK(total == direct);
  }
}

TEST_CASE("mean value") {
  const Field F = field_of_order(3);
  PrimeCache cache(*F);
  CHECK(mean_value(2, 0, parse_poly(*F, "1,1"), cache) == Rational(7, 6));
  // no prime factor of Q has degree dividing n
  CHECK(mean_value_closed_form(3, 1, parse_poly(*F, "1,0,1")) ==
        Rational(27 - 1, static_cast<std::int64_t>(8 * 3)));
  for (std::uint64_t q : {2, 3, 4, 5}) {
    const Field G = field_of_order(q);
    PrimeCache c(*G);
    for (const char* text : {"0,1", "1,1", "0,0,1", "1,0,1,1", "0,1,1"}) {
      const auto parsed = oracle::try_parse(*G, text);
      if (!parsed) continue;
      const Poly Q = *parsed;
      for (int n = 2; n <= 4; ++n)
        for (int h = 0; h < n && ipow(q, static_cast<unsigned>(n + h + 1)) < 200000; ++h) {
          const Rational m = mean_value(n, h, Q, c);
          if (ipow(q, static_cast<unsigned>(n + h)) < 3000) CHECK(m == literal_variance(n, h, Q).mean);
        }
    }
  }
}

TEST_CASE("direct variance against the literal definition") {
  const Field F = field_of_order(3);
  PrimeCache cache(*F);
  const auto golden = variance_direct(2, 0, parse_poly(*F, "1,1"), cache);
  CHECK(close(golden.v, 11.0 / 6.0));
  CHECK(close(golden.v_tilde, 29.0 / 18.0));
  CHECK(golden.mean == Rational(7, 6));

  for (std::uint64_t q : {2, 3, 4, 5}) {
    const Field G = field_of_order(q);
    PrimeCache c(*G);
    for (const char* text : {"0,1", "1,1", "0,0,1", "1,0,1", "2,1,1", "0,1,1", "1,0,0,1"}) {
      const auto parsed = oracle::try_parse(*G, text);
      if (!parsed) continue;
      const Poly Q = *parsed;
      for (int n = 1; n <= 4; ++n)
        for (int h = 0; h < n; ++h) {
          if (ipow(q, static_cast<unsigned>(n + h + 1)) > 30000) continue;
          const auto d = variance_direct(n, h, Q, c);
          const auto lit = literal_variance(n, h, Q);
          CHECK(close(d.v, lit.v));
          CHECK(close(d.v_tilde, lit.v_tilde));
          CHECK(d.v >= 0.0);
          CHECK(d.v_tilde <= d.v + 1e-9);
        }
    }
  }
  // constant modulus smoke case
  const auto flat = variance_direct(3, 1, Poly::constant(*F, 1), cache);
  CHECK(flat.phi == 1);
  CHECK(flat.v >= 0.0);
  CHECK_THROWS_AS(variance_direct(20, 1, parse_poly(*F, "1,0,0,0,0,1"), cache), BudgetError);
}

TEST_CASE("mean shift bound") {
  for (std::uint64_t q : {3, 5}) {
    const Field F = field_of_order(q);
    PrimeCache cache(*F);
    std::mt19937_64 rng(q);
    for (int t = 0; t < 20; ++t) {
      const int n = 2 + static_cast<int>(rng() % 3);
      const int h = static_cast<int>(rng() % n);
      const Poly Q = random_poly(*F, 1 + static_cast<int>(rng() % 3), rng, true);
      const auto d = variance_direct(n, h, Q, cache);
      const double bound = 10.0 * std::pow(double(q), 2 * (h + 1)) * Q.degree() / (double(d.phi) * std::pow(double(q), n));
      CHECK(std::abs(d.v - d.v_tilde) <= bound);
    }
  }
}

TEST_CASE("dual transfer") {
  const Field F = field_of_order(3);
  CHECK_THROWS_WITH_AS(dual_transfer(parse_poly(*F, "1,1"), 0, parse_poly(*F, "0,1"), parse_poly(*F, "1")),
                       doctest::Contains("involution transfer requires Q(0) ≠ 0"), PreconditionError);
  for (std::uint64_t q : {3, 5}) {
    const Field G = field_of_order(q);
    std::mt19937_64 rng(q * 7);
    for (int t = 0; t < 100; ++t) {
      const int h = static_cast<int>(rng() % 3);
      const Poly B = random_poly(*G, static_cast<int>(rng() % 3), rng, false);
      const int n = h + 1 + B.degree();
      Poly Q = random_poly(*G, 1 + static_cast<int>(rng() % std::min(n, 3)), rng, false);
      if (Q[0] == 0) Q = Q + Poly::constant(*G, 1);
      if (Q.degree() < 1 || Q.degree() > n) continue;
      Poly A = random_poly(*G, static_cast<int>(rng() % 2), rng, false);
      if (gcd(A, Q).degree() != 0) A = Poly::constant(*G, 1);
      CHECK(dual_transfer(B, h, Q, A) == psi_hybrid(B.shifted(h + 1), h, Q, A));
    }
  }
}

TEST_CASE("A -> A~* is a bijection onto units mod Q*") {
  const Field F = field_of_order(5);
  for (const char* text : {"1,1", "2,0,1", "1,3,0,1", "4,1,1"}) {
    const auto parsed = oracle::try_parse(*F, text);
      if (!parsed) continue;
      const Poly Q = *parsed;
    const Poly Qs = involution(Q);
    for (int n = Q.degree(); n <= Q.degree() + 2; ++n) {
      std::set<std::vector<Elem>> images;
      for (const Poly& A : unit_residues(Q)) {
        const Poly img = mod(involution(degree_n_representative(A, Q, n)), Qs);
        CHECK(gcd(img, Qs).degree() == 0);
        images.insert(img.coeffs());
        // any degree-n representative gives the same class
        const Poly other = degree_n_representative(A, Q, n) + Q.scaled(2);
        if (other.degree() == n) CHECK(mod(involution(other), Qs) == img);
      }
      CHECK(images.size() == unit_residues(Q).size());
    }
  }
}

TEST_CASE("orthogonality expansion of the dual progression") {
  const Field F = field_of_order(3);
  PrimeCache cache(*F);
  std::mt19937_64 rng(41);
  for (int t = 0; t < 12; ++t) {
    const int h = static_cast<int>(rng() % 2);
    const Poly Q = random_squarefree(*F, 1 + static_cast<int>(rng() % 2), rng);
    const int n = h + 1 + std::max(Q.degree(), 1) + static_cast<int>(rng() % 2);
    Poly B = random_poly(*F, n - h - 1, rng, false);
    Poly A = random_poly(*F, 1, rng, false);
    if (gcd(A, Q).degree() != 0) A = Poly::constant(*F, 1);
    const Poly Qt = dual_modulus(n, h, Q);
    const UnitGroup G(Qt);
    const CharacterGroup X(G);
    // the class R mod Q~ with R = B* mod T^{n-h}, R = A~* mod Q*
    const Poly Tn = Poly::monomial(*F, n - h);
    const Poly target = mod(involution(degree_n_representative(A, Q, n)), involution(Q));
    std::uint32_t R = UnitGroup::kNotUnit;
    for (std::uint64_t c = 0; c < G.ring().size(); ++c) {
      const Poly r = G.ring().poly(c);
      if (mod(r - involution(B), Tn).is_zero() && mod(r, involution(Q)) == target) R = G.index_of_code(c);
    }
    REQUIRE(R != UnitGroup::kNotUnit);
    std::complex<double> s = 0.0;
    for (std::uint32_t a = 0; a < X.size(); ++a)
      s += std::conj(X.root(X.phase(a, R))) * psi_chi(X.character(a), n, false, cache);
    s /= static_cast<double>(G.order());
    CHECK(std::abs(s - double(psi_hybrid(B.shifted(h + 1), h, Q, A))) < 1e-6);
  }
}

TEST_CASE("leading coefficient decomposition") {
  // summing over every B of degree n-h-1 and dividing by q-1 equals the monic-B sum
  const Field F = field_of_order(3);
  const Poly Q = parse_poly(*F, "1,0,1");
  const int n = 4, h = 1;
  const double mean = boost::rational_cast<double>(mean_value_closed_form(n, h, Q));
  double all = 0.0, monic = 0.0;
  const auto units = unit_residues(Q);
  for (std::uint64_t code = 0; code < ipow(3, static_cast<unsigned>(n - h)); ++code) {
    const Poly B = poly_from_code(*F, code);
    if (B.degree() != n - h - 1) continue;
    double s = 0.0;
    for (const Poly& A : units) {
      const double d = double(psi_hybrid(B.shifted(h + 1), h, Q, A)) - mean;
      s += d * d;
    }
    all += s;
    if (B.is_monic()) monic += s;
  }
  CHECK(close(all / 2.0, monic));
}

TEST_CASE("spectral identity") {
  for (std::uint64_t q : {2, 3, 4, 5}) {
    const Field F = field_of_order(q);
    PrimeCache cache(*F);
    for (const char* text : {"1,1", "1,0,1", "2,1,1", "1,1,0,1", "1,0,0,1"}) {
      const auto parsed = oracle::try_parse(*F, text);
      if (!parsed) continue;
      const Poly Q = *parsed;
      if (Q[0] == 0) continue;
      for (int n = std::max(Q.degree(), 1); n <= 4; ++n)
        for (int h = 0; h < n; ++h) {
          if (ipow(q, static_cast<unsigned>(n)) * euler_phi(Q) > 200000) continue;
          const auto d = variance_direct(n, h, Q, cache);
          const auto s = variance_spectral(n, h, Q, cache);
          CHECK(s.phi_q_tilde == (q - 1) * ipow(q, static_cast<unsigned>(n - h - 1)) * euler_phi(Q));
          CHECK(std::abs(d.v_tilde - s.full) <= 1e-6 * (1.0 + s.full));
          if (q <= 3 && n <= 3) CHECK(close(variance_spectral_unfiltered(n, h, Q, cache), s.full, 1e-6));
        }
    }
  }
  const Field F = field_of_order(3);
  PrimeCache cache(*F);
  CHECK_THROWS_WITH_AS(variance_spectral(2, 0, parse_poly(*F, "0,1"), cache),
                       doctest::Contains("involution transfer requires Q(0) ≠ 0"), PreconditionError);
  CHECK_THROWS_AS(variance_spectral(2, 0, parse_poly(*F, "1,0,0,1"), cache), PreconditionError);
}
