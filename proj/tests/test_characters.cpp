#include <doctest.h>

#include <cmath>
#include <random>

#include "ffvar/characters.hpp"
#include "ffvar/errors.hpp"

#include "oracles.hpp"

using namespace ffvar;

namespace {

// Primitive by definition: chi does not factor through any proper divisor
// modulus D | Q, i.e. it is nontrivial on {u : u = 1 mod D} for every such D.
bool primitive_by_divisors(const CharacterGroup& X, std::uint32_t chi) {
  const UnitGroup& G = X.units();
  const Poly& Q = G.modulus();
  const ResidueRing& R = G.ring();
  const auto fac = G.factorization();
  for (const auto& [P, e] : fac.factors) {
    const Poly D = euclidean_division(Q, P).first;
    bool trivial = true;
    for (std::uint64_t c = 0; c < R.size() && trivial; ++c) {
      const std::uint32_t u = G.index_of_code(c);
      if (u == UnitGroup::kNotUnit) continue;
      if (D.degree() >= 1 && !mod(R.poly(c) - Poly::constant(G.field(), 1), D).is_zero()) continue;
      trivial = X.phase(chi, u) == 0;
    }
    if (trivial) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("enumeration and evaluation") {
  const Field F = field_of_order(3);
  const UnitGroup G1(parse_poly(*F, "0,1"));
  const CharacterGroup X1(G1);
  CHECK(X1.enumerate().size() == 2);
  const auto chi = X1.character(1);
  CHECK(std::abs(chi(parse_poly(*F, "2")) - std::complex<double>(-1.0, 0.0)) < 1e-12);
  CHECK(chi(parse_poly(*F, "0,1")) == std::complex<double>(0.0, 0.0));
  CHECK_FALSE(chi.is_even());
  CHECK(X1.character(0).is_even());
  CHECK(X1.character(0).lambda() == 1);
  CHECK(chi.lambda() == 0);

  CHECK(CharacterGroup(UnitGroup(parse_poly(*F, "0,0,1"))).enumerate().size() == 6);
  CHECK(CharacterGroup(UnitGroup(parse_poly(*F, "0,1,1"))).enumerate().size() == 4);

  const UnitGroup G4(parse_poly(*F, "0,0,1,1"));
  const CharacterGroup X4(G4);
  const auto chars = X4.enumerate();
  for (std::size_t i = 1; i < chars.size(); ++i) CHECK(chars[i - 1].exponents() < chars[i].exponents());
  CHECK(chars[0].is_trivial());
  CHECK_FALSE(chars[0].is_primitive());

}

TEST_CASE("orthogonality and multiplicativity") {
  std::mt19937_64 rng(17);
  for (std::uint64_t q : {2, 3, 4, 5}) {
    const Field F = field_of_order(q);
    for (const char* text : {"0,0,1", "1,1,0,1", "0,1,1"}) {
      const auto parsed = oracle::try_parse(*F, text);
      if (!parsed) continue;
      const Poly Q = *parsed;
      if (Q.degree() < 1) continue;
      const UnitGroup G(Q);
      const CharacterGroup X(G);
      const std::uint32_t n = G.order();
      for (std::uint32_t u = 0; u < n; ++u)
        for (std::uint32_t v = 0; v < n; ++v) {
          std::complex<double> s = 0.0;
          for (std::uint32_t a = 0; a < n; ++a) s += X.root(X.phase(a, u)) * std::conj(X.root(X.phase(a, v)));
          CHECK(std::abs(s - (u == v ? double(n) : 0.0)) < 1e-9 * n);
        }
      const ResidueRing& R = G.ring();
      std::vector<std::uint64_t> units;
      for (std::uint64_t c = 0; c < R.size(); ++c)
        if (G.index_of_code(c) != UnitGroup::kNotUnit) units.push_back(c);
      for (int t = 0; t < 1000; ++t) {
        const auto chi = X.character(static_cast<std::uint32_t>(rng() % n));
        const Poly a = R.poly(units[rng() % units.size()]), b = R.poly(units[rng() % units.size()]);
        CHECK(std::abs(chi(a * b) - chi(a) * chi(b)) < 1e-12);
        CHECK(std::abs(std::abs(chi(a)) - 1.0) < 1e-12);
      }
    }
  }
}

TEST_CASE("parity") {
  for (std::uint64_t q : {3, 4, 5, 7}) {
    const Field F = field_of_order(q);
    const UnitGroup G(parse_poly(*F, "1,0,1,1"));
    const CharacterGroup X(G);
    for (const auto& chi : X.enumerate()) {
      std::complex<double> s = 0.0;
      bool trivial_on_constants = true;
      for (Elem c : F->units()) {
        const auto v = chi(Poly::constant(*F, c));
        s += v;
        trivial_on_constants = trivial_on_constants && std::abs(v - 1.0) < 1e-12;
      }
      CHECK(chi.is_even() == trivial_on_constants);
      if (chi.is_odd()) CHECK(std::abs(s) < 1e-9);
    }
  }
  const Field F2 = field_of_order(2);
  const UnitGroup G2(parse_poly(*F2, "1,1,0,1"));
  const CharacterGroup X2(G2);
  for (const auto& chi : X2.enumerate()) CHECK(chi.is_even());
}

TEST_CASE("primitivity against the divisor definition") {
  for (std::uint64_t q : {2, 3, 5}) {
    const Field F = field_of_order(q);
    for (const char* text : {"0,0,1", "0,0,1,1", "1,0,1", "0,1,1", "1,2,1", "0,0,0,1"}) {
      const auto parsed = oracle::try_parse(*F, text);
      if (!parsed) continue;
      const Poly Q = *parsed;
      const UnitGroup G(Q);
      if (G.order() > 200) continue;
      const CharacterGroup X(G);
      for (std::uint32_t a = 0; a < X.size(); ++a) CHECK(X.is_primitive(a) == primitive_by_divisors(X, a));
      if (is_irreducible(Q))
        for (std::uint32_t a = 1; a < X.size(); ++a) CHECK(X.is_primitive(a));
    }
  }
}

TEST_CASE("census") {
  const Field F = field_of_order(3);
  const auto a = character_census(CharacterGroup(UnitGroup(parse_poly(*F, "0,0,1"))));
  CHECK(a.total == 6);
  CHECK(a.even == 3);
  const auto b = character_census(CharacterGroup(UnitGroup(parse_poly(*F, "1,0,1"))));
  CHECK(b.total == 8);
  CHECK(b.even == 4);
  // T^2 (T + 1)
  const auto c = character_census(CharacterGroup(UnitGroup(parse_poly(*F, "0,0,1,1"))));
  CHECK(c.even == 6);
  CHECK(c.primitive_even_formula == boost::rational<std::int64_t>(c.primitive_even));
  CHECK(c.even_formula == boost::rational<std::int64_t>(c.even));
  CHECK(c.primitive_even + c.nonprimitive_even == c.even);

  // Square-free moduli: the closed form is off by the mu(Q) correction.
  const auto d = character_census(CharacterGroup(UnitGroup(parse_poly(*F, "0,1,1"))));
  CHECK(d.primitive_even == 1);
  CHECK(d.primitive_even_formula == boost::rational<std::int64_t>(1, 2));
}

TEST_CASE("primitive count formula") {
  std::mt19937_64 rng(23);
  for (std::uint64_t q : {2, 3, 4, 5}) {
    const Field F = field_of_order(q);
    for (int t = 0; t < 20; ++t) {
      const Poly Q = random_poly(*F, 1 + static_cast<int>(rng() % 4), rng, true);
      const UnitGroup G(Q);
      if (G.order() > 5000) continue;
      const auto c = character_census(CharacterGroup(G));
      CHECK(static_cast<std::int64_t>(c.primitive) == primitive_count_formula(G.factorization(), F->q()));
      CHECK(c.primitive_even + c.primitive_odd == c.primitive);
    }
  }
}

TEST_CASE("sweep equals per-character sums") {
  std::mt19937_64 rng(29);
  for (std::uint64_t q : {2, 3, 4, 5}) {
    const Field F = field_of_order(q);
    for (const char* text : {"0,0,1,1", "1,1,0,1", "0,0,0,1"}) {
      const UnitGroup G(parse_poly(*F, text));
      const CharacterGroup X(G);
      std::vector<WeightedUnit> entries;
      for (int k = 0; k < 300; ++k)
        entries.push_back({static_cast<std::uint32_t>(rng() % G.order()), static_cast<double>(rng() % 5)});
      for (Parity parity : {Parity::kAll, Parity::kEven, Parity::kOdd}) {
        const auto results = sweep_characters(X, entries, parity);
        std::size_t k = 0;
        for (std::uint32_t a = 0; a < X.size(); ++a) {
          const bool even = X.is_even(a);
          if ((parity == Parity::kEven && !even) || (parity == Parity::kOdd && even)) continue;
          REQUIRE(k < results.size());
          CHECK(results[k].character == a);
          CHECK(results[k].even == even);
          CHECK(results[k].primitive == X.is_primitive(a));
          std::complex<double> s = 0.0;
          for (const auto& e : entries) s += e.weight * X.root(X.phase(a, e.index));
          CHECK(std::abs(results[k].sum - s) < 1e-9 * (1.0 + entries.size()));
          ++k;
        }
        CHECK(k == results.size());
      }
    }
  }
}
