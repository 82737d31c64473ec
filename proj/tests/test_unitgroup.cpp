#include <doctest.h>

#include <random>

#include "ffvar/errors.hpp"
#include "ffvar/unitgroup.hpp"
#include "oracles.hpp"

using namespace ffvar;

namespace {

// Reproduce every unit from its discrete log, exhaustively.
void check_round_trip(const UnitGroup& G) {
  const ResidueRing& R = G.ring();
  std::uint64_t units = 0;
  std::vector<bool> seen(G.order(), false);
  for (std::uint64_t code = 0; code < R.size(); ++code) {
    const std::uint32_t idx = G.index_of_code(code);
    const bool coprime = code != 0 && gcd(R.poly(code), G.modulus()).degree() == 0;
    CHECK((idx != UnitGroup::kNotUnit) == coprime);
    if (idx == UnitGroup::kNotUnit) continue;
    ++units;
    CHECK_FALSE(seen[idx]);
    seen[idx] = true;
    const auto e = G.exponents(idx);
    std::uint64_t x = R.one();
    for (std::size_t i = 0; i < e.size(); ++i) x = R.mul(x, R.pow(R.code(G.generators()[i]), e[i]));
    CHECK(x == code);
    CHECK(G.index_from_exponents(e) == idx);
    CHECK(G.element(e) == R.poly(code));
  }
  CHECK(units == G.order());
  CHECK(G.order() == euler_phi(G.modulus()));
  std::uint64_t prod = 1;
  for (auto m : G.orders()) prod *= m;
  CHECK(prod == G.order());
}

std::uint64_t element_order(const ResidueRing& R, std::uint64_t x) {
  std::uint64_t k = 1, y = x;
  while (y != R.one()) {
    y = R.mul(y, x);
    ++k;
  }
  return k;
}

}  // namespace

TEST_CASE("worked examples") {
  const Field F = field_of_order(3);
  const UnitGroup G1(parse_poly(*F, "0,1"));
  CHECK(G1.orders() == std::vector<std::uint32_t>{2});
  CHECK(G1.discrete_log(parse_poly(*F, "1")) == std::vector<std::uint32_t>{0});
  CHECK(G1.discrete_log(G1.generators()[0]) == std::vector<std::uint32_t>{1});

  const UnitGroup G2(parse_poly(*F, "0,0,1"));
  CHECK(G2.order() == 6);
  std::uint64_t max_order = 0;
  for (std::uint64_t c = 0; c < G2.ring().size(); ++c)
    if (G2.index_of_code(c) != UnitGroup::kNotUnit) max_order = std::max(max_order, element_order(G2.ring(), c));
  CHECK(max_order == 6);

  const UnitGroup G3(parse_poly(*F, "0,1,1"));
  CHECK(G3.order() == 4);
  CHECK_THROWS_WITH_AS(G3.discrete_log(parse_poly(*F, "0,1")), doctest::Contains("not a unit"), PreconditionError);
  CHECK_THROWS_AS(UnitGroup(parse_poly(*F, "2")), PreconditionError);
}

TEST_CASE("exhaustive round trip") {
  std::mt19937_64 rng(5);
  for (std::uint64_t q : {2, 3, 4, 5, 7, 9}) {
    const Field F = field_of_order(q);
    for (int t = 0; t < 12; ++t) {
      const int d = 1 + static_cast<int>(rng() % 4);
      if (ipow(q, static_cast<unsigned>(d)) > 20000) continue;
      const Poly Q = random_poly(*F, d, rng, true);
      check_round_trip(UnitGroup(Q));
    }
    for (int l = 1; l <= 4 && ipow(q, static_cast<unsigned>(l)) <= 20000; ++l)
      check_round_trip(UnitGroup(Poly::monomial(*F, l)));
  }
}

TEST_CASE("basis property") {
  const Field F = field_of_order(3);
  for (const char* text : {"0,0,0,1", "1,2,1,1,0,1", "0,0,1,1,0,1", "2,0,0,0,1"}) {
    const UnitGroup G(parse_poly(*F, text));
    const ResidueRing& R = G.ring();
    for (std::size_t i = 0; i < G.generators().size(); ++i) {
      // g_i^{m_i} lies in the span of the earlier generators, no smaller power does
      const std::uint64_t g = R.code(G.generators()[i]);
      for (std::uint32_t k = 1; k <= G.orders()[i]; ++k) {
        const auto e = G.exponents(G.index_of_code(R.pow(g, k)));
        bool in_prefix = true;
        for (std::size_t j = i; j < e.size(); ++j) in_prefix = in_prefix && e[j] == 0;
        CHECK(in_prefix == (k == G.orders()[i]));
      }
    }
  }
}

TEST_CASE("discrete log is a homomorphism") {
  std::mt19937_64 rng(9);
  const Field F = field_of_order(5);
  for (const char* text : {"0,0,1", "1,0,1,1", "0,0,0,1,1", "2,1"}) {
    const UnitGroup G(parse_poly(*F, text));
    const ResidueRing& R = G.ring();
    std::vector<std::uint64_t> units;
    for (std::uint64_t c = 0; c < R.size(); ++c)
      if (G.index_of_code(c) != UnitGroup::kNotUnit) units.push_back(c);
    for (int t = 0; t < 1000; ++t) {
      const std::uint64_t u = units[rng() % units.size()], v = units[rng() % units.size()];
      const auto eu = G.exponents(G.index_of_code(u)), ev = G.exponents(G.index_of_code(v));
      const auto ew = G.exponents(G.index_of_code(R.mul(u, v)));
      for (std::size_t i = 0; i < eu.size(); ++i) CHECK(ew[i] == (eu[i] + ev[i]) % G.orders()[i]);
    }
  }
}

TEST_CASE("constants occupy the leading coordinate when T divides Q") {
  for (std::uint64_t q : {3, 4, 5, 7}) {
    const Field F = field_of_order(q);
    const UnitGroup G(parse_poly(*F, "0,0,1,1"));
    REQUIRE(G.constants_coordinate().has_value());
    CHECK(*G.constants_coordinate() == 0);
    CHECK(G.orders()[0] == q - 1);
    CHECK(G.generators()[0] == Poly::constant(*F, F->primitive_element()));
  }
}

TEST_CASE("budget") {
  const Field F = field_of_order(5);
  CHECK_THROWS_WITH_AS(UnitGroup(Poly::monomial(*F, 10)), doctest::Contains("phi"), BudgetError);
}

TEST_CASE("monic reducer matches polynomial reduction") {
  const Field F = field_of_order(3);
  const Poly Q = parse_poly(*F, "2,1,0,1");
  const ResidueRing R(Q);
  for (int n = 0; n <= 6; ++n) {
    const MonicReducer red(R, n);
    for (const Poly& f : enumerate_monic(*F, n)) CHECK(red.residue(monic_code(f)) == R.code(mod(f, Q)));
  }
}
