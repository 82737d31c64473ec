#pragma once

#include <cstdint>
#include <iterator>
#include <map>
#include <memory>
#include <random>
#include <utility>
#include <vector>

#include "ffvar/field.hpp"
#include "ffvar/poly.hpp"

namespace ffvar {

/// unit * prod P_i^{e_i} with distinct monic irreducible P_i sorted by
/// (degree, lexicographic coefficient tuple).
struct Factorization {
  Elem unit = 1;
  std::vector<std::pair<Poly, int>> factors;

  Poly product(const FiniteField& field) const;
};

/// Seed used by the equal-degree splitting step when none is supplied.
inline constexpr std::uint64_t kDefaultFactorSeed = 0;

bool is_irreducible(const Poly& f);
Factorization factor(const Poly& f, std::uint64_t seed = kDefaultFactorSeed);

/// deg P if N = c P^k with P monic irreducible, else 0.
unsigned von_mangoldt(const Poly& N);
int mobius(const Poly& Q);
/// Number of distinct monic irreducible factors.
int omega(const Poly& Q);
/// Number of invertible residues mod Q, from the factorization. deg Q >= 1.
std::uint64_t euler_phi(const Poly& Q);
/// Same, from an existing factorization (phi of a constant is 1).
std::uint64_t euler_phi(const Factorization& fac, std::uint32_t q);

/// X*(T) = T^{deg X} X(1/T).
Poly involution(const Poly& X);

/// (1/n) sum_{d | n} mu(d) q^{n/d}.
std::uint64_t irreducible_count_formula(std::uint32_t q, int n);

// ---------------------------------------------------------------------------

/// The q^n monic polynomials of degree n in lexicographic order of their
/// coefficient tuples (constant term first). Lazily generated.
class MonicRange {
 public:
  MonicRange(const FiniteField& field, int n);

  class iterator {
   public:
    using value_type = Poly;
    using difference_type = std::ptrdiff_t;
    using iterator_category = std::input_iterator_tag;
    using pointer = const Poly*;
    using reference = const Poly&;

    const Poly& operator*() const { return current_; }
    const Poly* operator->() const { return &current_; }
    iterator& operator++();
    iterator operator++(int) {
      iterator old = *this;
      ++*this;
      return old;
    }
    bool operator==(const iterator& o) const { return index_ == o.index_; }

   private:
    friend class MonicRange;
    iterator(const FiniteField* field, int n, std::uint64_t index);
    const FiniteField* field_;
    int n_;
    std::uint64_t index_;
    std::vector<Elem> digits_;
    std::vector<Elem> order_;  // field elements by rank
    Poly current_;
  };

  iterator begin() const { return {field_, n_, 0}; }
  iterator end() const { return {field_, n_, count_}; }
  std::uint64_t size() const { return count_; }

 private:
  const FiniteField* field_;
  int n_;
  std::uint64_t count_;
};

/// Throws BudgetError when q^n exceeds the enumeration budget.
MonicRange enumerate_monic(const FiniteField& field, int n);

/// sum_{N in M_n} Lambda(N).
std::uint64_t psi_total(const FiniteField& field, int n);

// ---------------------------------------------------------------------------

/// Monic irreducibles by degree, found by sieving out every product P*M with
/// deg P <= deg/2. Entries are monic codes (lower coefficients), ascending.
class IrreducibleSieve {
 public:
  explicit IrreducibleSieve(const FiniteField& field) : field_(&field) {}

  const std::vector<std::uint64_t>& of_degree(int d);
  const FiniteField& field() const { return *field_; }

 private:
  void extend_to(int d);

  const FiniteField* field_;
  std::vector<std::vector<std::uint64_t>> by_degree_{{}};
};

/// Lambda on monic polynomials of a fixed degree n, stored sparsely as the
/// sorted list of prime powers.
class MangoldtTable {
 public:
  struct Entry {
    std::uint64_t code;
    std::uint32_t lambda;
  };

  MangoldtTable(IrreducibleSieve& sieve, int n);

  int degree() const { return n_; }
  const std::vector<Entry>& prime_powers() const { return entries_; }
  /// Lambda of the monic polynomial with the given code.
  std::uint32_t lambda(std::uint64_t code) const;
  std::uint64_t total() const;
  std::uint64_t total_squares() const;

 private:
  int n_;
  std::vector<Entry> entries_;
};

/// Lazily filled cache of sieves and Mangoldt tables for one field.
class PrimeCache {
 public:
  explicit PrimeCache(const FiniteField& field) : sieve_(field) {}

  const FiniteField& field() const { return sieve_.field(); }
  IrreducibleSieve& sieve() { return sieve_; }
  const MangoldtTable& mangoldt(int n);

 private:
  IrreducibleSieve sieve_;
  std::map<int, std::unique_ptr<MangoldtTable>> tables_;
};

// ---------------------------------------------------------------------------

/// Uniform polynomial of degree exactly n (monic when requested).
Poly random_poly(const FiniteField& field, int n, std::mt19937_64& rng, bool monic);

}  // namespace ffvar
