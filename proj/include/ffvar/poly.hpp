#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ffvar/field.hpp"

namespace ffvar {

/// Element of F_q[T]. Coefficients are stored constant term first with no
/// trailing zeros, so the zero polynomial has an empty coefficient vector.
///
/// A Poly keeps a non-owning pointer to its field; the FiniteField must
/// outlive every polynomial built over it.
class Poly {
 public:
  Poly() = default;
  explicit Poly(const FiniteField& field) : field_(&field) {}
  Poly(const FiniteField& field, std::vector<Elem> coeffs);
  Poly(const FiniteField& field, std::initializer_list<Elem> coeffs)
      : Poly(field, std::vector<Elem>(coeffs)) {}

  static Poly constant(const FiniteField& field, Elem c);
  static Poly monomial(const FiniteField& field, int degree, Elem c = 1);
  static Poly t(const FiniteField& field) { return monomial(field, 1); }

  const FiniteField& field() const { return *field_; }
  const FiniteField* field_ptr() const { return field_; }

  bool is_zero() const { return c_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  Elem lead() const { return c_.empty() ? 0 : c_.back(); }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }
  Elem operator[](int i) const {
    return i >= 0 && i < static_cast<int>(c_.size()) ? c_[static_cast<std::size_t>(i)] : 0;
  }
  const std::vector<Elem>& coeffs() const { return c_; }

  /// |f| = q^{deg f}; the zero polynomial has norm 0.
  double norm() const;

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  Poly scaled(Elem c) const;
  Poly shifted(int k) const;

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

  /// Lexicographic order on coefficient tuples, constant term first.
  friend bool lex_less(const Poly& a, const Poly& b);

 private:
  void normalize();

  const FiniteField* field_ = nullptr;
  std::vector<Elem> c_;
};

/// (quotient, remainder) with a = quotient * b + remainder.
std::pair<Poly, Poly> euclidean_division(const Poly& a, const Poly& b);
Poly mod(const Poly& a, const Poly& b);
Poly make_monic(const Poly& a);
/// Monic gcd; gcd(0, 0) = 0.
Poly gcd(const Poly& a, const Poly& b);
/// Inverse of a modulo m; throws PreconditionError when gcd(a, m) != 1.
Poly inverse_mod(const Poly& a, const Poly& m);
Poly mulmod(const Poly& a, const Poly& b, const Poly& m);
Poly powmod(const Poly& a, std::uint64_t e, const Poly& m);
Poly pow(const Poly& a, unsigned e);
Poly derivative(const Poly& a);
Elem evaluate(const Poly& a, Elem x);

// ---------------------------------------------------------------------------
// Integer codes. The code of a polynomial of degree < n is sum c_i q^i with
// element codes as digits. A monic polynomial of degree n is identified with
// the code of its lower n coefficients.

std::uint64_t ipow(std::uint64_t base, unsigned e);

std::uint64_t poly_code(const Poly& f);
Poly poly_from_code(const FiniteField& field, std::uint64_t code);
std::uint64_t monic_code(const Poly& f);
Poly monic_from_code(const FiniteField& field, int n, std::uint64_t code);

// ---------------------------------------------------------------------------
// Text formats.

/// Parses "c0,c1,...,cn" (extension-field coefficients as "a0.a1...") or, for
/// prime fields, a pretty form like "T^2+2T+1".
Poly parse_poly(const FiniteField& field, std::string_view text);
/// "c0,c1,...,cn"; the zero polynomial prints as "0".
std::string format_poly(const Poly& f);
/// Human-readable form such as "T^2+2T+1" (extension coefficients in parens).
std::string pretty_poly(const Poly& f);

}  // namespace ffvar
