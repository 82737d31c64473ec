#include "ffvar/characters.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "ffvar/errors.hpp"
#include "ffvar/kernels.hpp"
#include "ffvar/parallel.hpp"

namespace ffvar {

namespace {

std::uint32_t multiply_indices(const UnitGroup& G, std::uint32_t a, std::uint32_t b) {
  const auto& m = G.orders();
  const auto& s = G.strides();
  std::uint32_t out = 0;
  for (std::size_t i = 0; i < m.size(); ++i) out += ((a / s[i]) % m[i] + (b / s[i]) % m[i]) % m[i] * s[i];
  return out;
}

// Greedy generating set of the subgroup formed by `members`.
std::vector<std::uint32_t> generating_set(const UnitGroup& G, const std::vector<std::uint32_t>& members) {
  std::vector<char> in(G.order(), 0);
  std::vector<std::uint32_t> closure{0};
  in[0] = 1;
  std::vector<std::uint32_t> gens;
  for (const auto g : members) {
    if (in[g]) continue;
    gens.push_back(g);
    const std::vector<std::uint32_t> base = closure;
    for (std::uint32_t gt = g; !in[gt]; gt = multiply_indices(G, gt, g)) {
      for (const auto h : base) {
        const std::uint32_t y = multiply_indices(G, h, gt);
        if (!in[y]) {
          in[y] = 1;
          closure.push_back(y);
        }
      }
    }
  }
  return gens;
}

}  // namespace

CharacterGroup::CharacterGroup(const UnitGroup& units) : units_(&units) {
  std::uint64_t M = 1;
  for (auto m : units.orders()) M = std::lcm(M, std::uint64_t{m});
  if (M >= (std::uint64_t{1} << 31)) throw BudgetError("character phase modulus too large");
  M_ = static_cast<std::uint32_t>(M);
  for (auto m : units.orders()) scales_.push_back(M_ / m);
  cos_.resize(M_);
  sin_.resize(M_);
  for (std::uint32_t k = 0; k < M_; ++k) {
    const double t = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(M_);
    cos_[k] = std::cos(t);
    sin_[k] = std::sin(t);
  }
  // Exact values at the quarter turns keep real characters real.
  if (M_ % 4 == 0) {
    cos_[M_ / 4] = 0.0;
    cos_[3 * M_ / 4] = 0.0;
    sin_[M_ / 4] = 1.0;
    sin_[3 * M_ / 4] = -1.0;
  }
  if (M_ % 2 == 0) {
    cos_[M_ / 2] = -1.0;
    sin_[M_ / 2] = 0.0;
  }

  const FiniteField& F = units.field();
  if (F.q() > 2) constant_index_ = units.index_of(Poly::constant(F, F.primitive_element()));

  const Poly& Q = units.modulus();
  const ResidueRing& ring = units.ring();
  for (const auto& [P, e] : units.factorization().factors) {
    const Poly R = euclidean_division(Q, P).first;
    std::vector<std::uint32_t> members;
    if (R.degree() == 0) {
      for (auto s : units.strides()) members.push_back(s);
    } else {
      const std::uint64_t count = ipow(F.q(), static_cast<unsigned>(P.degree()));
      const Poly one = Poly::constant(F, 1);
      for (std::uint64_t a = 0; a < count; ++a) {
        const std::uint32_t idx = units.index_of_code(ring.code(one + R * poly_from_code(F, a)));
        if (idx != UnitGroup::kNotUnit) members.push_back(idx);
      }
    }
    kernels_.push_back(generating_set(units, members));
  }
}

std::uint32_t CharacterGroup::phase(std::uint32_t chi, std::uint32_t unit) const {
  const auto& m = units_->orders();
  const auto& s = units_->strides();
  std::uint64_t acc = 0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    const std::uint64_t a = (chi / s[i]) % m[i];
    const std::uint64_t e = (unit / s[i]) % m[i];
    acc = (acc + a * e % m[i] * scales_[i]) % M_;
  }
  return static_cast<std::uint32_t>(acc);
}

bool CharacterGroup::is_even(std::uint32_t chi) const {
  return field().q() == 2 || phase(chi, constant_index_) == 0;
}

bool CharacterGroup::is_primitive(std::uint32_t chi) const {
  for (const auto& gens : kernels_) {
    bool trivial = true;
    for (auto g : gens) {
      if (phase(chi, g) != 0) {
        trivial = false;
        break;
      }
    }
    if (trivial) return false;
  }
  return true;
}

std::uint32_t CharacterGroup::conjugate(std::uint32_t chi) const {
  const auto& m = units_->orders();
  const auto& s = units_->strides();
  std::uint32_t out = 0;
  for (std::size_t i = 0; i < m.size(); ++i) out += (m[i] - (chi / s[i]) % m[i]) % m[i] * s[i];
  return out;
}

DirichletCharacter CharacterGroup::character(std::uint32_t chi) const {
  if (chi >= size()) throw PreconditionError("character index out of range");
  return {*this, chi};
}

std::vector<DirichletCharacter> CharacterGroup::enumerate() const {
  std::vector<DirichletCharacter> out;
  out.reserve(size());
  for (std::uint32_t i = 0; i < size(); ++i) out.emplace_back(*this, i);
  return out;
}

DirichletCharacter::DirichletCharacter(const CharacterGroup& group, std::uint32_t index)
    : group_(&group),
      index_(index),
      exps_(group.units().exponents(index)),
      even_(group.is_even(index)),
      primitive_(group.is_primitive(index)) {}

std::complex<double> DirichletCharacter::operator()(const Poly& N) const {
  const std::uint32_t u = group_->units().index_of(N);
  if (u == UnitGroup::kNotUnit) return {0.0, 0.0};
  return value_at(u);
}

// ---------------------------------------------------------------------------

std::int64_t primitive_count_formula(const Factorization& fac, std::uint32_t q) {
  const std::size_t k = fac.factors.size();
  std::int64_t total = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
    Factorization rest;
    int sign = 1;
    for (std::size_t i = 0; i < k; ++i) {
      int e = fac.factors[i].second;
      if (mask >> i & 1) {
        sign = -sign;
        --e;
      }
      if (e > 0) rest.factors.emplace_back(fac.factors[i].first, e);
    }
    total += sign * static_cast<std::int64_t>(euler_phi(rest, q));
  }
  return total;
}

CharacterCensus character_census(const CharacterGroup& G) {
  CharacterCensus c;
  c.total = G.size();
  for (std::uint32_t chi = 0; chi < G.size(); ++chi) {
    const bool even = G.is_even(chi);
    const bool prim = G.is_primitive(chi);
    c.even += even;
    c.odd += !even;
    c.primitive += prim;
    c.primitive_even += even && prim;
    c.nonprimitive_even += even && !prim;
    c.primitive_odd += !even && prim;
  }
  const std::int64_t q1 = G.field().q() - 1;
  c.even_formula = boost::rational<std::int64_t>(G.size(), q1);
  c.primitive_even_formula =
      boost::rational<std::int64_t>(primitive_count_formula(G.units().factorization(), G.field().q()), q1);
  return c;
}

// ---------------------------------------------------------------------------

std::vector<SweepResult> sweep_characters(const CharacterGroup& G, std::vector<WeightedUnit> entries,
                                          Parity parity) {
  const UnitGroup& U = G.units();
  const std::uint32_t M = G.phase_modulus();
  const auto& m = U.orders();
  const auto& s = U.strides();
  const auto& scale = G.scales();
  const std::size_t k = m.size();
  const bool q_two = G.field().q() == 2;

  std::sort(entries.begin(), entries.end(), [](auto& a, auto& b) { return a.index < b.index; });
  std::vector<std::uint32_t> idx;
  std::vector<double> w;
  for (const auto& e : entries) {
    if (e.index >= U.order()) throw PreconditionError("sweep entry is not a unit index");
    if (!idx.empty() && idx.back() == e.index)
      w.back() += e.weight;
    else {
      idx.push_back(e.index);
      w.push_back(e.weight);
    }
  }

  // Probes: the constant generator, then the kernel generators per prime.
  std::vector<std::uint32_t> probes;
  if (!q_two) probes.push_back(G.constant_index());
  std::vector<std::size_t> kernel_begin;
  for (const auto& gens : G.kernel_generators()) {
    kernel_begin.push_back(probes.size());
    probes.insert(probes.end(), gens.begin(), gens.end());
  }
  kernel_begin.push_back(probes.size());

  // E[i][j] = e_i(u_j) * M / m_i and the per-level odometer steps.
  auto build_steps = [&](const std::vector<std::uint32_t>& units) {
    const std::size_t n = units.size();
    std::vector<std::vector<std::uint32_t>> E(k, std::vector<std::uint32_t>(n));
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < k; ++i) E[i][j] = (units[j] / s[i]) % m[i] * scale[i];
    std::vector<std::vector<std::uint32_t>> step(k, std::vector<std::uint32_t>(n));
    for (std::size_t j = 0; j < n; ++j) {
      std::uint64_t carry = 0;  // sum_{l > i} (m_l - 1) E_l mod M
      for (std::size_t i = k; i-- > 0;) {
        step[i][j] = static_cast<std::uint32_t>((E[i][j] + M - carry) % M);
        carry = (carry + std::uint64_t{m[i] - 1} * E[i][j]) % M;
      }
    }
    return std::make_pair(std::move(E), std::move(step));
  };
  const auto [E, step] = build_steps(idx);
  const auto [PE, pstep] = build_steps(probes);

  std::uint32_t range = U.order();
  const bool even_block = parity == Parity::kEven && !q_two && U.constants_coordinate() == std::size_t{0};
  if (even_block) range = s[0];
  if (parity == Parity::kOdd && q_two) return {};

  const std::size_t chunks = std::min<std::size_t>(range, 64);
  std::vector<std::vector<SweepResult>> parts(chunks);
  const double* cs = G.cos_table().data();
  const double* sn = G.sin_table().data();

  parallel_chunks(range, chunks, [&](std::size_t c, std::size_t begin, std::size_t end) {
    const std::size_t n = idx.size(), np = probes.size();
    std::vector<std::uint32_t> ex = U.exponents(static_cast<std::uint32_t>(begin));
    auto init = [&](const std::vector<std::vector<std::uint32_t>>& EE, std::size_t count) {
      std::vector<std::uint32_t> ph(count, 0);
      for (std::size_t j = 0; j < count; ++j) {
        std::uint64_t acc = 0;
        for (std::size_t i = 0; i < k; ++i) acc = (acc + std::uint64_t{ex[i]} * EE[i][j]) % M;
        ph[j] = static_cast<std::uint32_t>(acc);
      }
      return ph;
    };
    std::vector<std::uint32_t> ph = init(E, n);
    std::vector<std::uint32_t> pph = init(PE, np);
    auto& out = parts[c];
    for (std::size_t chi = begin; chi < end; ++chi) {
      int level = -1;
      if (chi > begin) {
        for (std::size_t i = k; i-- > 0;) {
          if (++ex[i] < m[i]) {
            level = static_cast<int>(i);
            break;
          }
          ex[i] = 0;
        }
        kernels::scalar::advance_phases(pph.data(), pstep[static_cast<std::size_t>(level)].data(), np, M);
      }
      const bool even = q_two || pph[0] == 0;
      bool prim = true;
      for (std::size_t g = 0; g + 1 < kernel_begin.size(); ++g) {
        bool trivial = true;
        for (std::size_t j = kernel_begin[g]; j < kernel_begin[g + 1]; ++j) trivial = trivial && pph[j] == 0;
        if (trivial) {
          prim = false;
          break;
        }
      }
      const bool want = parity == Parity::kAll || (parity == Parity::kEven) == even;
      std::complex<double> sum;
      if (level >= 0) {
        const std::uint32_t* st = step[static_cast<std::size_t>(level)].data();
        if (want)
          sum = kernels::advance_and_sum(ph.data(), st, n, M, w.data(), cs, sn);
        else
          kernels::advance_phases(ph.data(), st, n, M);
      } else if (want) {
        sum = kernels::weighted_phase_sum(ph.data(), w.data(), n, cs, sn);
      }
      if (want) out.push_back({static_cast<std::uint32_t>(chi), even, prim, sum});
    }
  });

  std::vector<SweepResult> all;
  for (auto& p : parts) all.insert(all.end(), p.begin(), p.end());
  return all;
}

}  // namespace ffvar
