#include <doctest.h>

#include <algorithm>

#include <random>

#include "ffvar/errors.hpp"
#include "ffvar/field.hpp"
#include "oracles.hpp"

using namespace ffvar;

TEST_CASE("construction and errors") {
  const Field F3 = construct_field(3);
  CHECK(F3->q() == 3);
  CHECK(F3->units() == std::vector<Elem>{1, 2});
  CHECK(construct_field(2)->units() == std::vector<Elem>{1});

  const Field F4 = construct_field(2, 2);
  CHECK(F4->q() == 4);
  CHECK(F4->modulus() == std::vector<std::uint32_t>{1, 1, 1});
  CHECK(F4->units().size() == 3);

  CHECK_THROWS_WITH_AS(construct_field(4), doctest::Contains("not prime"), PreconditionError);
  CHECK_THROWS_WITH_AS(construct_field(2, 21), doctest::Contains("field too large"), BudgetError);
  CHECK(parse_field_spec("p=2,r=3")->q() == 8);
  CHECK(parse_field_spec("p=5")->spec_string() == "p=5");
  CHECK(field_of_order(9)->r() == 2);
}

TEST_CASE("extension modulus is the smallest irreducible") {
  for (auto [p, r] : {std::pair{2, 2}, {2, 3}, {3, 2}, {5, 2}, {2, 4}}) {
    const Field F = construct_field(p, r);
    const oracle::V mod(F->modulus().begin(), F->modulus().end());
    CHECK(oracle::irreducible(mod, p));
    auto candidates = oracle::monics(p, r);
    std::sort(candidates.begin(), candidates.end());  // lexicographic, constant term first
    for (const auto& g : candidates) {
      if (g == mod) break;
      CHECK_FALSE(oracle::irreducible(g, p));
    }
  }
}

TEST_CASE("field axioms on random triples") {
  std::mt19937_64 rng(7);
  for (std::uint64_t q : {2, 3, 4, 5, 7, 8, 9, 16, 25, 27}) {
    const Field F = field_of_order(q);
    const int p = static_cast<int>(F->p());
    const oracle::V mod(F->modulus().begin(), F->modulus().end());
    auto pick = [&] { return static_cast<Elem>(rng() % q); };
    for (int t = 0; t < 1000; ++t) {
      const Elem a = pick(), b = pick(), c = pick();
      CHECK(F->add(F->add(a, b), c) == F->add(a, F->add(b, c)));
      CHECK(F->mul(a, F->add(b, c)) == F->add(F->mul(a, b), F->mul(a, c)));
      CHECK(F->add(a, 0) == a);
      CHECK(F->mul(a, 1) == a);
      CHECK(F->sub(F->add(a, b), b) == a);
      if (a != 0) CHECK(F->mul(a, F->inv(a)) == 1);
      if (F->r() > 1) {
        // product via polynomial multiplication mod the defining polynomial
        auto ca = F->coeffs(a), cb = F->coeffs(b);
        const oracle::V va(ca.begin(), ca.end()), vb(cb.begin(), cb.end());
        oracle::V prod = oracle::rem(oracle::mul(oracle::trim(va), oracle::trim(vb), p), mod, p);
        prod.resize(static_cast<std::size_t>(F->r()), 0);
        const std::vector<std::uint32_t> pc(prod.begin(), prod.end());
        CHECK(F->mul(a, b) == F->from_coeffs(pc));
      }
    }
    for (Elem a = 0; a < q; ++a) CHECK(F->pow(a, q) == a);
    CHECK(F->units().size() == q - 1);
    Elem g = F->primitive_element(), x = g;
    std::uint64_t order = 1;
    while (x != 1) {
      x = F->mul(x, g);
      ++order;
    }
    CHECK(order == q - 1);
  }
}

TEST_CASE("units are ordered by coefficient tuple") {
  const Field F = field_of_order(9);
  const auto u = F->units();
  for (std::size_t i = 1; i < u.size(); ++i) {
    auto a = F->coeffs(u[i - 1]), b = F->coeffs(u[i]);
    CHECK(std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end()));
  }
}
