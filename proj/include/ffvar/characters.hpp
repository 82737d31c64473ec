#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include <boost/rational.hpp>

#include "ffvar/unitgroup.hpp"

namespace ffvar {

class DirichletCharacter;

/// The dual of a UnitGroup. The character with exponent vector (a_i) sends
/// the unit with discrete log (e_i) to exp(2 pi i sum a_i e_i / m_i); all
/// values are kept as integer phases modulo M = lcm(m_i) until accumulation.
/// Characters are indexed like units (mixed radix, last coordinate fastest),
/// which is lexicographic order on exponent vectors.
class CharacterGroup {
 public:
  explicit CharacterGroup(const UnitGroup& units);

  const UnitGroup& units() const { return *units_; }
  const FiniteField& field() const { return units_->field(); }
  std::uint32_t size() const { return units_->order(); }

  std::uint32_t phase_modulus() const { return M_; }
  /// M / m_i per coordinate.
  const std::vector<std::uint32_t>& scales() const { return scales_; }
  const std::vector<double>& cos_table() const { return cos_; }
  const std::vector<double>& sin_table() const { return sin_; }
  std::complex<double> root(std::uint32_t phase) const { return {cos_[phase], sin_[phase]}; }

  /// Phase of character `chi` at unit `unit`, both given by index.
  std::uint32_t phase(std::uint32_t chi, std::uint32_t unit) const;

  /// Unit index of the primitive constant of F_q (unused when q = 2).
  std::uint32_t constant_index() const { return constant_index_; }
  /// For each prime P | Q, unit indices generating {u : u = 1 mod Q/P}.
  const std::vector<std::vector<std::uint32_t>>& kernel_generators() const { return kernels_; }

  bool is_even(std::uint32_t chi) const;
  bool is_primitive(std::uint32_t chi) const;

  /// Index of the conjugate character.
  std::uint32_t conjugate(std::uint32_t chi) const;

  DirichletCharacter character(std::uint32_t chi) const;
  std::vector<DirichletCharacter> enumerate() const;

 private:
  const UnitGroup* units_;
  std::uint32_t M_ = 1;
  std::vector<std::uint32_t> scales_;
  std::vector<double> cos_, sin_;
  std::uint32_t constant_index_ = 0;
  std::vector<std::vector<std::uint32_t>> kernels_;
};

class DirichletCharacter {
 public:
  DirichletCharacter(const CharacterGroup& group, std::uint32_t index);

  const CharacterGroup& group() const { return *group_; }
  std::uint32_t index() const { return index_; }
  const std::vector<std::uint32_t>& exponents() const { return exps_; }
  bool is_trivial() const { return index_ == 0; }
  bool is_even() const { return even_; }
  bool is_odd() const { return !even_; }
  bool is_primitive() const { return primitive_; }
  /// 1 for even characters, 0 for odd ones.
  int lambda() const { return even_ ? 1 : 0; }

  std::uint32_t phase_at(std::uint32_t unit_index) const { return group_->phase(index_, unit_index); }
  std::complex<double> value_at(std::uint32_t unit_index) const { return group_->root(phase_at(unit_index)); }
  /// chi(N); exactly 0 when gcd(N, Q) != 1.
  std::complex<double> operator()(const Poly& N) const;

  DirichletCharacter conjugate() const { return {*group_, group_->conjugate(index_)}; }

 private:
  const CharacterGroup* group_;
  std::uint32_t index_;
  std::vector<std::uint32_t> exps_;
  bool even_;
  bool primitive_;
};

struct CharacterCensus {
  std::uint64_t total = 0;
  std::uint64_t even = 0;
  std::uint64_t odd = 0;
  std::uint64_t primitive = 0;
  std::uint64_t primitive_even = 0;
  std::uint64_t nonprimitive_even = 0;
  std::uint64_t primitive_odd = 0;
  /// phi(Q) / (q - 1).
  boost::rational<std::int64_t> even_formula;
  /// (1/(q-1)) sum_{D | Q} mu(D) phi(Q/D), with phi(1) = 1.
  boost::rational<std::int64_t> primitive_even_formula;
};

/// Counts by scanning every character's flags, plus the closed formulas.
CharacterCensus character_census(const CharacterGroup& G);

/// sum_{D | Q} mu(D) phi(Q/D) from a factorization: the number of primitive
/// characters modulo Q.
std::int64_t primitive_count_formula(const Factorization& fac, std::uint32_t q);

// ---------------------------------------------------------------------------
// Sweeps: sum_u w_u chi(u) for every character in one pass.

struct WeightedUnit {
  std::uint32_t index;
  double weight;
};

enum class Parity { kAll, kEven, kOdd };

struct SweepResult {
  std::uint32_t character;
  bool even;
  bool primitive;
  std::complex<double> sum;
};

/// For every character of the requested parity, in index order, the sum
/// sum_j w_j chi(u_j). Duplicate unit indices are merged first.
std::vector<SweepResult> sweep_characters(const CharacterGroup& G, std::vector<WeightedUnit> entries,
                                          Parity parity);

}  // namespace ffvar
