#pragma once

// Brute-force reference arithmetic for tests. Prime fields only, plain int
// coefficient vectors (constant term first), nothing shared with the library.

#include <complex>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <vector>

#include "ffvar/errors.hpp"
#include "ffvar/poly.hpp"

namespace oracle {

using V = std::vector<int>;

inline V trim(V a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}
inline int deg(const V& a) { return static_cast<int>(a.size()) - 1; }

inline V add(const V& a, const V& b, int p) {
  V r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i)
    r[i] = ((i < a.size() ? a[i] : 0) + (i < b.size() ? b[i] : 0)) % p;
  return trim(r);
}
inline V sub(const V& a, const V& b, int p) {
  V r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i)
    r[i] = (((i < a.size() ? a[i] : 0) - (i < b.size() ? b[i] : 0)) % p + p) % p;
  return trim(r);
}
inline V mul(const V& a, const V& b, int p) {
  if (a.empty() || b.empty()) return {};
  V r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  return trim(r);
}
inline int inv(int a, int p) {
  for (int x = 1; x < p; ++x)
    if (a * x % p == 1) return x;
  return 0;
}
/// Remainder of a by nonzero b.
inline V rem(V a, const V& b, int p) {
  a = trim(a);
  const int il = inv(b.back(), p);
  while (deg(a) >= deg(b)) {
    const int c = a.back() * il % p;
    const int shift = deg(a) - deg(b);
    for (std::size_t j = 0; j < b.size(); ++j)
      a[j + static_cast<std::size_t>(shift)] = ((a[j + static_cast<std::size_t>(shift)] - c * b[j]) % p + p) % p;
    a = trim(a);
  }
  return a;
}
inline bool divides(const V& d, const V& a, int p) { return rem(a, d, p).empty(); }

/// Monic polynomials of degree n in counting order (c_0 fastest).
inline std::vector<V> monics(int p, int n) {
  std::vector<V> out;
  std::uint64_t count = 1;
  for (int i = 0; i < n; ++i) count *= static_cast<std::uint64_t>(p);
  for (std::uint64_t c = 0; c < count; ++c) {
    V f(static_cast<std::size_t>(n) + 1, 0);
    std::uint64_t r = c;
    for (int i = 0; i < n; ++i, r /= static_cast<std::uint64_t>(p)) f[static_cast<std::size_t>(i)] = static_cast<int>(r % p);
    f[static_cast<std::size_t>(n)] = 1;
    out.push_back(f);
  }
  return out;
}

/// All polynomials of degree < n, including zero.
inline std::vector<V> residues(int p, int n) {
  std::vector<V> out;
  std::uint64_t count = 1;
  for (int i = 0; i < n; ++i) count *= static_cast<std::uint64_t>(p);
  for (std::uint64_t c = 0; c < count; ++c) {
    V f(static_cast<std::size_t>(n), 0);
    std::uint64_t r = c;
    for (int i = 0; i < n; ++i, r /= static_cast<std::uint64_t>(p)) f[static_cast<std::size_t>(i)] = static_cast<int>(r % p);
    out.push_back(trim(f));
  }
  return out;
}

/// Trial division by every monic of degree 1..deg/2.
inline bool irreducible(const V& f, int p) {
  if (deg(f) < 1) return false;
  for (int d = 1; 2 * d <= deg(f); ++d)
    for (const V& g : monics(p, d))
      if (divides(g, f, p)) return false;
  return true;
}

inline V make_monic(V f, int p) {
  const int il = inv(f.back(), p);
  for (int& c : f) c = c * il % p;
  return f;
}

/// deg P when f = c P^k, else 0.
inline int lambda(const V& f, int p) {
  if (deg(f) < 1) return 0;
  V g = make_monic(f, p);
  for (int d = 1; d <= deg(g); ++d) {
    for (const V& P : monics(p, d)) {
      if (!divides(P, g, p)) continue;
      if (!irreducible(P, p)) continue;
      // smallest-degree irreducible divisor found; strip it
      V rest = g;
      while (deg(rest) >= 1 && divides(P, rest, p)) {
        // exact quotient by long division
        V q(static_cast<std::size_t>(deg(rest) - deg(P)) + 1, 0);
        V r = rest;
        for (int k = deg(rest) - deg(P); k >= 0; --k) {
          const int c = r[static_cast<std::size_t>(k + deg(P))];
          q[static_cast<std::size_t>(k)] = c;
          for (std::size_t j = 0; j < P.size(); ++j)
            r[j + static_cast<std::size_t>(k)] = ((r[j + static_cast<std::size_t>(k)] - c * P[j]) % p + p) % p;
        }
        rest = trim(q);
      }
      return deg(rest) == 0 ? d : 0;
    }
  }
  return 0;
}

inline V gcd(V a, V b, int p) {
  a = trim(a);
  b = trim(b);
  while (!b.empty()) {
    V r = rem(a, b, p);
    a = b;
    b = r;
  }
  return a.empty() ? a : make_monic(a, p);
}

/// Number of residues mod Q coprime to Q.
inline std::uint64_t phi(const V& Q, int p) {
  std::uint64_t count = 0;
  for (const V& a : residues(p, deg(Q)))
    if (!a.empty() && deg(gcd(a, Q, p)) == 0) ++count;
  return count;
}

inline V reverse(const V& f) {
  V r(f.rbegin(), f.rend());
  return trim(r);
}

inline ffvar::Poly to_poly(const ffvar::FiniteField& F, const V& f) {
  std::vector<ffvar::Elem> c(f.begin(), f.end());
  return ffvar::Poly(F, c);
}

inline V from_poly(const ffvar::Poly& f) {
  V r;
  for (auto c : f.coeffs()) r.push_back(static_cast<int>(c));
  return r;
}

/// parse_poly, or nothing when the text does not fit the field.
inline std::optional<ffvar::Poly> try_parse(const ffvar::FiniteField& F, const char* text) {
  try {
    return ffvar::parse_poly(F, text);
  } catch (const ffvar::PreconditionError&) {
    return std::nullopt;
  }
}

inline V random_poly(int p, int n, std::mt19937_64& rng, bool monic) {
  V f(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i < n; ++i) f[static_cast<std::size_t>(i)] = static_cast<int>(rng() % p);
  f[static_cast<std::size_t>(n)] = monic ? 1 : 1 + static_cast<int>(rng() % (p - 1));
  return f;
}

}  // namespace oracle
