#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ffvar/field.hpp"
#include "ffvar/poly.hpp"
#include "ffvar/polyring.hpp"

namespace ffvar {

/// F_q[T]/Q with residues packed as integer codes (see poly_code). Q is made
/// monic on construction.
class ResidueRing {
 public:
  explicit ResidueRing(const Poly& Q);

  const FiniteField& field() const { return *field_; }
  const Poly& modulus() const { return Q_; }
  int degree() const { return D_; }
  /// q^{deg Q}, the number of residues.
  std::uint64_t size() const { return size_; }

  std::uint64_t code(const Poly& a) const;
  Poly poly(std::uint64_t code) const { return poly_from_code(*field_, code); }
  std::uint64_t one() const { return 1; }

  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const;

 private:
  const FiniteField* field_;
  Poly Q_;
  int D_;
  std::uint64_t size_;
};

/// Residue codes of monic polynomials of one fixed degree n, computed from
/// their monic codes with a table for the part of degree >= deg Q.
class MonicReducer {
 public:
  MonicReducer(const ResidueRing& ring, int n);

  std::uint64_t residue(std::uint64_t monic_code) const;

 private:
  const FiniteField* field_;
  int D_;
  int n_;
  std::uint64_t low_size_;
  std::uint64_t direct_offset_ = 0;
  std::vector<std::uint64_t> high_;
};

/// (F_q[T]/Q)^* as a direct product of cyclic groups <g_i> of order m_i, with
/// a discrete-log table covering every residue.
///
/// Generators are listed local factor by local factor, following the order of
/// factor(Q). Within a factor P^e the cyclic part of order q^{deg P} - 1 comes
/// first, then a basis of the 1-units in decreasing order. Units are indexed by
/// the mixed-radix number of their exponent vector, last coordinate fastest.
class UnitGroup {
 public:
  static constexpr std::uint32_t kNotUnit = 0xffffffffu;

  explicit UnitGroup(const Poly& Q, std::uint64_t seed = 0);

  const FiniteField& field() const { return ring_.field(); }
  const ResidueRing& ring() const { return ring_; }
  const Poly& modulus() const { return ring_.modulus(); }
  const Factorization& factorization() const { return fac_; }
  std::uint64_t seed() const { return seed_; }

  const std::vector<Poly>& generators() const { return generators_; }
  const std::vector<std::uint32_t>& orders() const { return orders_; }
  const std::vector<std::uint32_t>& strides() const { return strides_; }
  std::uint32_t order() const { return order_; }

  /// Coordinate whose generator is a primitive constant of F_q, when such a
  /// coordinate exists (it does whenever T divides Q).
  std::optional<std::size_t> constants_coordinate() const { return constants_coord_; }

  /// Linear index of the residue with the given code, or kNotUnit.
  std::uint32_t index_of_code(std::uint64_t code) const { return table_[code]; }
  std::uint32_t index_of(const Poly& N) const { return table_[ring_.code(N)]; }

  std::vector<std::uint32_t> exponents(std::uint32_t index) const;
  std::uint32_t index_from_exponents(const std::vector<std::uint32_t>& e) const;

  /// Exponent vector of N; throws PreconditionError("not a unit") when
  /// gcd(N, Q) != 1.
  std::vector<std::uint32_t> discrete_log(const Poly& N) const;

  /// prod g_i^{e_i} mod Q.
  Poly element(const std::vector<std::uint32_t>& e) const;

 private:
  ResidueRing ring_;
  Factorization fac_;
  std::uint64_t seed_;
  std::vector<Poly> generators_;
  std::vector<std::uint32_t> orders_;
  std::vector<std::uint32_t> strides_;
  std::uint32_t order_ = 1;
  std::optional<std::size_t> constants_coord_;
  std::vector<std::uint32_t> table_;
};

}  // namespace ffvar
