#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ffvar {

/// Packed field element: the base-p digits of the code are the coefficients
/// a_0..a_{r-1} of the element in F_p[x]/(modulus), a_0 least significant.
/// For prime fields the code is simply the residue.
using Elem = std::uint32_t;

/// The finite field F_q with q = p^r. Immutable after construction.
class FiniteField {
 public:
  /// Builds F_{p^r}. For r > 1 the defining modulus is the lexicographically
  /// smallest monic irreducible of degree r over F_p (coefficient tuples
  /// compared constant term first).
  static std::shared_ptr<const FiniteField> construct(std::uint64_t p, int r);

  std::uint32_t p() const { return p_; }
  int r() const { return r_; }
  std::uint32_t q() const { return q_; }
  bool is_prime_field() const { return r_ == 1; }

  /// Coefficients of the defining polynomial over F_p, constant term first,
  /// monic of degree r. For prime fields this is the placeholder {0, 1}.
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }

  Elem zero() const { return 0; }
  Elem one() const { return 1; }

  Elem add(Elem a, Elem b) const {
    if (r_ == 1) {
      const Elem s = a + b;
      return s >= p_ ? s - p_ : s;
    }
    if (p_ == 2) return a ^ b;
    if (!add_table_.empty()) return add_table_[a * q_ + b];
    return add_digits(a, b);
  }

  Elem neg(Elem a) const {
    if (r_ == 1) return a == 0 ? 0 : p_ - a;
    if (p_ == 2) return a;
    return neg_table_[a];
  }

  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }

  Elem mul(Elem a, Elem b) const {
    if (r_ == 1) return static_cast<Elem>(std::uint64_t{a} * b % p_);
    if (a == 0 || b == 0) return 0;
    std::uint32_t e = log_[a] + log_[b];
    if (e >= q_ - 1) e -= q_ - 1;
    return exp_[e];
  }

  /// Multiplicative inverse; a must be nonzero.
  Elem inv(Elem a) const;
  Elem pow(Elem a, std::uint64_t e) const;

  /// Image of an integer under Z -> F_p -> F_q.
  Elem from_int(std::int64_t v) const;

  /// Coefficient vector (length r, constant term first) of an element.
  std::vector<std::uint32_t> coeffs(Elem a) const;
  Elem from_coeffs(std::span<const std::uint32_t> c) const;

  /// All q-1 nonzero elements ordered lexicographically by coefficient tuple.
  std::vector<Elem> units() const;

  /// A generator of the cyclic group F_q^*.
  Elem primitive_element() const { return generator_; }

  /// "p=3" or "p=2,r=2".
  std::string spec_string() const;

 private:
  FiniteField() = default;
  Elem add_digits(Elem a, Elem b) const;

  std::uint32_t p_ = 0;
  int r_ = 0;
  std::uint32_t q_ = 0;
  std::vector<std::uint32_t> modulus_;
  Elem generator_ = 1;
  std::vector<Elem> exp_;
  std::vector<std::uint32_t> log_;
  std::vector<Elem> add_table_;
  std::vector<Elem> neg_table_;
};

using Field = std::shared_ptr<const FiniteField>;

/// Throws PreconditionError("not prime") or BudgetError("field too large").
Field construct_field(std::uint64_t p, int r = 1);

/// Field of order q, where q must be a prime power.
Field field_of_order(std::uint64_t q);

/// Parses "p=3" or "p=2,r=2".
Field parse_field_spec(std::string_view spec);

bool is_prime(std::uint64_t n);

/// Distinct prime divisors in increasing order.
std::vector<std::uint64_t> prime_divisors(std::uint64_t n);

}  // namespace ffvar
