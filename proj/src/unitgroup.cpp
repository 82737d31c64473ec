#include "ffvar/unitgroup.hpp"

#include <array>
#include <random>
#include <string>
#include <unordered_map>

#include "ffvar/errors.hpp"

namespace ffvar {

namespace {

constexpr int kMaxRingDegree = 62;

}  // namespace

ResidueRing::ResidueRing(const Poly& Q) : field_(Q.field_ptr()) {
  if (Q.is_zero() || Q.degree() < 1) throw PreconditionError("constant modulus: need deg Q >= 1");
  Q_ = make_monic(Q);
  D_ = Q_.degree();
  size_ = 1;
  for (int i = 0; i < D_; ++i) {
    if (size_ > (std::uint64_t{1} << 62) / field_->q() || D_ > kMaxRingDegree)
      throw BudgetError("residue ring too large: deg Q = " + std::to_string(D_));
    size_ *= field_->q();
  }
}

std::uint64_t ResidueRing::code(const Poly& a) const { return poly_code(mod(a, Q_)); }

std::uint64_t ResidueRing::mul(std::uint64_t a, std::uint64_t b) const {
  const FiniteField& F = *field_;
  const std::uint64_t q = F.q();
  std::array<Elem, 64> da{}, db{};
  int la = 0, lb = 0;
  for (; a; a /= q) da[static_cast<std::size_t>(la++)] = static_cast<Elem>(a % q);
  for (; b; b /= q) db[static_cast<std::size_t>(lb++)] = static_cast<Elem>(b % q);
  if (la == 0 || lb == 0) return 0;
  std::array<Elem, 128> prod{};
  for (int i = 0; i < la; ++i) {
    const Elem x = da[static_cast<std::size_t>(i)];
    if (!x) continue;
    for (int j = 0; j < lb; ++j) {
      auto& slot = prod[static_cast<std::size_t>(i + j)];
      slot = F.add(slot, F.mul(x, db[static_cast<std::size_t>(j)]));
    }
  }
  const auto& qc = Q_.coeffs();
  for (int k = la + lb - 2; k >= D_; --k) {
    const Elem c = prod[static_cast<std::size_t>(k)];
    if (!c) continue;
    prod[static_cast<std::size_t>(k)] = 0;
    for (int i = 0; i < D_; ++i) {
      auto& slot = prod[static_cast<std::size_t>(k - D_ + i)];
      slot = F.sub(slot, F.mul(c, qc[static_cast<std::size_t>(i)]));
    }
  }
  std::uint64_t out = 0;
  for (int i = std::min(D_, la + lb - 1) - 1; i >= 0; --i) out = out * q + prod[static_cast<std::size_t>(i)];
  return out;
}

std::uint64_t ResidueRing::pow(std::uint64_t a, std::uint64_t e) const {
  std::uint64_t acc = 1;
  while (e) {
    if (e & 1) acc = mul(acc, a);
    e >>= 1;
    if (e) a = mul(a, a);
  }
  return acc;
}

MonicReducer::MonicReducer(const ResidueRing& ring, int n)
    : field_(&ring.field()), D_(ring.degree()), n_(n) {
  const FiniteField& F = *field_;
  low_size_ = ipow(F.q(), static_cast<unsigned>(D_));
  if (n < D_) {
    direct_offset_ = ipow(F.q(), static_cast<unsigned>(n));
    return;
  }
  const std::uint64_t count = ipow(F.q(), static_cast<unsigned>(n - D_));
  if (count > budget::kMaxEnumeration) throw BudgetError("reducer table too large");
  high_.resize(count);
  for (std::uint64_t h = 0; h < count; ++h) high_[h] = ring.code(monic_from_code(F, n - D_, h).shifted(D_));
}

std::uint64_t MonicReducer::residue(std::uint64_t monic_code) const {
  if (n_ < D_) return monic_code + direct_offset_;
  const FiniteField& F = *field_;
  const std::uint64_t q = F.q();
  std::uint64_t a = monic_code % low_size_;
  std::uint64_t b = high_[monic_code / low_size_];
  std::uint64_t out = 0, scale = 1;
  for (int i = 0; i < D_; ++i) {
    out += F.add(static_cast<Elem>(a % q), static_cast<Elem>(b % q)) * scale;
    a /= q;
    b /= q;
    scale *= q;
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

struct LocalGen {
  std::uint64_t code;  // residue code mod P^e
  std::uint32_t order;
};

bool is_t(const Poly& P) { return P.degree() == 1 && P[0] == 0 && P[1] == 1; }

// Generator of the cyclic part of order q^d - 1 in (F_q[T]/P^e)^*.
LocalGen cyclic_generator(const ResidueRing& lr, const Poly& P, int e, std::mt19937_64& rng) {
  const FiniteField& F = lr.field();
  const std::uint64_t qd = ipow(F.q(), static_cast<unsigned>(P.degree()));
  const std::uint64_t c = qd - 1;
  if (is_t(P)) return {F.primitive_element(), static_cast<std::uint32_t>(c)};
  const std::uint64_t teich = ipow(qd, static_cast<unsigned>(e - 1));
  const auto ls = prime_divisors(c);
  std::uniform_int_distribution<std::uint64_t> pick(1, lr.size() - 1);
  for (int attempt = 0; attempt < 100000; ++attempt) {
    const std::uint64_t x = pick(rng);
    if (mod(lr.poly(x), P).is_zero()) continue;
    const std::uint64_t y = lr.pow(x, teich);
    if (lr.pow(y, c) != 1) throw InvariantError("Teichmueller projection has wrong order");
    bool full = true;
    for (auto l : ls) {
      if (lr.pow(y, c / l) == 1) {
        full = false;
        break;
      }
    }
    if (full) return {y, static_cast<std::uint32_t>(c)};
  }
  throw InvariantError("no cyclic generator found");
}

// Basis of the 1-units {u = 1 mod P} of F_q[T]/P^e, a p-group, in decreasing
// order of the generator orders.
std::vector<LocalGen> one_unit_basis(const ResidueRing& lr, const Poly& P, int e) {
  const FiniteField& F = lr.field();
  const std::uint64_t p = F.p();
  const std::uint64_t count = ipow(F.q(), static_cast<unsigned>(P.degree() * (e - 1)));
  std::vector<std::uint64_t> units;
  units.reserve(count);
  const Poly one = Poly::constant(F, 1);
  for (std::uint64_t a = 0; a < count; ++a) units.push_back(lr.code(one + P * poly_from_code(F, a)));

  std::vector<LocalGen> basis;
  std::vector<std::uint64_t> h_codes{1};
  std::unordered_map<std::uint64_t, std::uint32_t> h_index{{1, 0}};
  while (h_codes.size() < count) {
    std::uint64_t best = 0;
    std::uint64_t best_order = 0;
    for (const auto u : units) {
      if (h_index.count(u)) continue;
      std::uint64_t j = 1, y = u;
      while (!h_index.count(y)) {
        y = lr.pow(y, p);
        j *= p;
      }
      if (j > best_order) {
        best_order = j;
        best = u;
      }
    }
    // best^j lies in H; split off the H-component so the new generator has
    // order exactly j in the whole group.
    const std::uint64_t j = best_order;
    std::uint32_t idx = h_index.at(lr.pow(best, j));
    std::vector<std::uint32_t> c(basis.size());
    for (std::size_t i = basis.size(); i-- > 0;) {
      c[i] = idx % basis[i].order;
      idx /= basis[i].order;
    }
    std::uint64_t x = best;
    for (std::size_t i = 0; i < basis.size(); ++i) {
      if (c[i] % j) throw InvariantError("one-unit basis reduction failed");
      const std::uint64_t k = (basis[i].order - c[i] / j) % basis[i].order;
      x = lr.mul(x, lr.pow(basis[i].code, k));
    }
    if (lr.pow(x, j) != 1) throw InvariantError("adjusted one-unit generator has wrong order");
    basis.push_back({x, static_cast<std::uint32_t>(j)});

    std::vector<std::uint64_t> grown;
    grown.reserve(h_codes.size() * j);
    for (const auto hc : h_codes) {
      std::uint64_t y = hc;
      for (std::uint64_t t = 0; t < j; ++t) {
        grown.push_back(y);
        y = lr.mul(y, x);
      }
    }
    h_codes = std::move(grown);
    h_index.clear();
    for (std::uint32_t i = 0; i < h_codes.size(); ++i) {
      if (!h_index.emplace(h_codes[i], i).second) throw InvariantError("one-unit subgroup collision");
    }
  }
  return basis;
}

}  // namespace

UnitGroup::UnitGroup(const Poly& Q, std::uint64_t seed) : ring_(Q), seed_(seed) {
  const FiniteField& F = ring_.field();
  const Poly& M = ring_.modulus();
  fac_ = factor(M);
  const std::uint64_t phi = euler_phi(fac_, F.q());
  if (phi > budget::kMaxUnitGroupOrder)
    throw BudgetError("unit group too large: phi(Q) = " + std::to_string(phi) + " exceeds 10^6");
  if (ring_.size() > budget::kMaxResidueTable)
    throw BudgetError("residue table too large: q^deg Q = " + std::to_string(ring_.size()) + " exceeds 2^26");

  std::mt19937_64 rng(seed);
  for (const auto& [P, e] : fac_.factors) {
    const Poly L = pow(P, static_cast<unsigned>(e));
    const ResidueRing lr(L);
    std::vector<LocalGen> local;
    const bool constant_slot = is_t(P) && F.q() > 2;
    if (ipow(F.q(), static_cast<unsigned>(P.degree())) > 2) local.push_back(cyclic_generator(lr, P, e, rng));
    if (e >= 2) {
      const auto b = one_unit_basis(lr, P, e);
      local.insert(local.end(), b.begin(), b.end());
    }
    // Lift through the CRT idempotent for this factor.
    Poly idem = Poly::constant(F, 1);
    if (fac_.factors.size() > 1) {
      const Poly cof = euclidean_division(M, L).first;
      idem = mod(cof * inverse_mod(mod(cof, L), L), M);
    }
    for (std::size_t i = 0; i < local.size(); ++i) {
      if (constant_slot && i == 0) {
        // The constants themselves: equal to the lift times a unit of the
        // other factors, so the generator set stays a basis.
        constants_coord_ = generators_.size();
        generators_.push_back(Poly::constant(F, F.primitive_element()));
      } else {
        const Poly g = lr.poly(local[i].code);
        const Poly one = Poly::constant(F, 1);
        generators_.push_back(mod(one + idem * (g - one), M));
      }
      orders_.push_back(local[i].order);
    }
  }

  std::uint64_t prod = 1;
  for (auto m : orders_) prod *= m;
  if (prod != phi) throw InvariantError("generator orders do not multiply to phi(Q)");
  order_ = static_cast<std::uint32_t>(phi);
  const std::size_t k = orders_.size();
  strides_.assign(k, 1);
  for (std::size_t i = k; i-- > 1;) strides_[i - 1] = strides_[i] * orders_[i];

  std::vector<std::uint64_t> gcode(k);
  for (std::size_t i = 0; i < k; ++i) gcode[i] = ring_.code(generators_[i]);
  table_.assign(ring_.size(), kNotUnit);
  std::vector<std::uint32_t> ex(k, 0);
  std::uint64_t cur = ring_.one();
  for (std::uint32_t idx = 0; idx < order_; ++idx) {
    if (table_[cur] != kNotUnit) throw InvariantError("discrete log table collision");
    table_[cur] = idx;
    for (std::size_t i = k; i-- > 0;) {
      cur = ring_.mul(cur, gcode[i]);
      if (++ex[i] < orders_[i]) break;
      ex[i] = 0;
    }
  }
  if (cur != ring_.one()) throw InvariantError("generator orders are not exact");
}

std::vector<std::uint32_t> UnitGroup::exponents(std::uint32_t index) const {
  std::vector<std::uint32_t> e(orders_.size());
  for (std::size_t i = orders_.size(); i-- > 0;) {
    e[i] = index % orders_[i];
    index /= orders_[i];
  }
  return e;
}

std::uint32_t UnitGroup::index_from_exponents(const std::vector<std::uint32_t>& e) const {
  if (e.size() != orders_.size()) throw PreconditionError("exponent vector has wrong length");
  std::uint32_t idx = 0;
  for (std::size_t i = 0; i < e.size(); ++i) idx += (e[i] % orders_[i]) * strides_[i];
  return idx;
}

std::vector<std::uint32_t> UnitGroup::discrete_log(const Poly& N) const {
  const std::uint32_t idx = index_of(N);
  if (idx == kNotUnit) throw PreconditionError("not a unit");
  return exponents(idx);
}

Poly UnitGroup::element(const std::vector<std::uint32_t>& e) const {
  const Poly& M = modulus();
  Poly acc = Poly::constant(field(), 1);
  for (std::size_t i = 0; i < e.size() && i < generators_.size(); ++i)
    acc = mulmod(acc, powmod(generators_[i], e[i], M), M);
  return mod(acc, M);
}

}  // namespace ffvar
