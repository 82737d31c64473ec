#include "ffvar/polyring.hpp"

#include <algorithm>
#include <string>

#include "ffvar/errors.hpp"

namespace ffvar {

Poly Factorization::product(const FiniteField& field) const {
  Poly acc = Poly::constant(field, unit);
  for (const auto& [P, e] : factors) acc *= pow(P, static_cast<unsigned>(e));
  return acc;
}

bool is_irreducible(const Poly& f) {
  if (f.is_zero() || f.degree() < 1) throw PreconditionError("degree zero: irreducibility needs deg f >= 1");
  const Poly g = make_monic(f);
  const FiniteField& F = g.field();
  const Poly x = Poly::t(F);
  Poly h = mod(x, g);
  for (int i = 1; i <= g.degree() / 2; ++i) {
    h = powmod(h, F.q(), g);
    if (gcd(h - x, g).degree() > 0) return false;
  }
  return true;
}

namespace {

Poly pth_root(const Poly& f) {
  const FiniteField& F = f.field();
  const std::uint32_t p = F.p();
  const std::uint64_t root_exp = F.q() / p;  // a^(q/p) is the p-th root of a
  std::vector<Elem> c(static_cast<std::size_t>(f.degree() / static_cast<int>(p)) + 1, 0);
  for (int i = 0; i <= f.degree(); i += static_cast<int>(p))
    c[static_cast<std::size_t>(i / static_cast<int>(p))] = F.pow(f[i], root_exp);
  return Poly(F, std::move(c));
}

Poly exact_quotient(const Poly& a, const Poly& b) { return euclidean_division(a, b).first; }

// Square-free decomposition of a monic polynomial: pairs (part, multiplicity)
// whose parts are square-free and pairwise coprime.
std::vector<std::pair<Poly, int>> squarefree_parts(const Poly& f) {
  std::vector<std::pair<Poly, int>> out;
  if (f.degree() < 1) return out;
  const int p = static_cast<int>(f.field().p());
  const Poly g = derivative(f);
  if (g.is_zero()) {
    for (auto& [s, m] : squarefree_parts(pth_root(f))) out.emplace_back(std::move(s), m * p);
    return out;
  }
  Poly c = gcd(f, g);
  Poly w = exact_quotient(f, c);
  int i = 1;
  while (w.degree() > 0) {
    Poly y = gcd(w, c);
    Poly fac = exact_quotient(w, y);
    if (fac.degree() > 0) out.emplace_back(std::move(fac), i);
    w = std::move(y);
    c = exact_quotient(c, w);
    ++i;
  }
  if (c.degree() > 0) {
    for (auto& [s, m] : squarefree_parts(pth_root(c))) out.emplace_back(std::move(s), m * p);
  }
  return out;
}

// Distinct-degree factorization of a monic square-free polynomial.
std::vector<std::pair<Poly, int>> distinct_degree(const Poly& f) {
  std::vector<std::pair<Poly, int>> out;
  const FiniteField& F = f.field();
  const Poly x = Poly::t(F);
  Poly rest = f;
  Poly h = mod(x, rest);
  for (int i = 1; rest.degree() >= 2 * i; ++i) {
    h = powmod(h, F.q(), rest);
    Poly g = gcd(h - x, rest);
    if (g.degree() > 0) {
      rest = exact_quotient(rest, g);
      h = mod(h, rest);
      out.emplace_back(std::move(g), i);
    }
  }
  if (rest.degree() > 0) out.emplace_back(rest, rest.degree());
  return out;
}

// Cantor-Zassenhaus splitting of a product of distinct irreducibles of degree d.
void equal_degree(const Poly& g, int d, std::mt19937_64& rng, std::vector<Poly>& out) {
  if (g.degree() == d) {
    out.push_back(g);
    return;
  }
  const FiniteField& F = g.field();
  const std::uint32_t q = F.q();
  while (true) {
    Poly a = random_poly(F, g.degree() - 1, rng, false);
    if (a.degree() < 1) continue;
    Poly b(F);
    if (F.p() == 2) {
      Poly term = a;
      b = a;
      const int steps = F.r() * d;
      for (int i = 1; i < steps; ++i) {
        term = mulmod(term, term, g);
        b += term;
      }
    } else {
      Poly norm = a;
      Poly frob = a;
      for (int i = 1; i < d; ++i) {
        frob = powmod(frob, q, g);
        norm = mulmod(norm, frob, g);
      }
      b = powmod(norm, (q - 1) / 2, g) - Poly::constant(F, 1);
    }
    Poly s = gcd(b, g);
    if (s.degree() > 0 && s.degree() < g.degree()) {
      equal_degree(s, d, rng, out);
      equal_degree(exact_quotient(g, s), d, rng, out);
      return;
    }
  }
}

bool factor_order(const std::pair<Poly, int>& a, const std::pair<Poly, int>& b) {
  if (a.first.degree() != b.first.degree()) return a.first.degree() < b.first.degree();
  return lex_less(a.first, b.first);
}

}  // namespace

Factorization factor(const Poly& f, std::uint64_t seed) {
  if (f.is_zero()) throw PreconditionError("cannot factor the zero polynomial");
  const FiniteField& F = f.field();
  Factorization out;
  out.unit = f.lead();
  const Poly m = make_monic(f);
  std::mt19937_64 rng(seed);
  for (const auto& [part, mult] : squarefree_parts(m)) {
    for (const auto& [block, d] : distinct_degree(part)) {
      std::vector<Poly> irreducibles;
      equal_degree(block, d, rng, irreducibles);
      for (auto& P : irreducibles) out.factors.emplace_back(std::move(P), mult);
    }
  }
  std::sort(out.factors.begin(), out.factors.end(), factor_order);
  // Square-free parts are coprime, but merge defensively against equal factors.
  std::vector<std::pair<Poly, int>> merged;
  for (auto& fe : out.factors) {
    if (!merged.empty() && merged.back().first == fe.first)
      merged.back().second += fe.second;
    else
      merged.push_back(std::move(fe));
  }
  out.factors = std::move(merged);
  if (!(out.product(F) == f)) throw InvariantError("factorization does not reproduce its input");
  return out;
}

unsigned von_mangoldt(const Poly& N) {
  if (N.is_zero()) throw PreconditionError("von Mangoldt function of zero");
  if (N.degree() < 1) return 0;
  const auto fac = factor(N);
  return fac.factors.size() == 1 ? static_cast<unsigned>(fac.factors[0].first.degree()) : 0u;
}

int mobius(const Poly& Q) {
  if (Q.is_zero()) throw PreconditionError("Moebius function of zero");
  if (Q.degree() < 1) return 1;
  const auto fac = factor(Q);
  for (const auto& [P, e] : fac.factors)
    if (e > 1) return 0;
  return fac.factors.size() % 2 == 0 ? 1 : -1;
}

int omega(const Poly& Q) {
  if (Q.is_zero()) throw PreconditionError("omega of zero");
  if (Q.degree() < 1) return 0;
  return static_cast<int>(factor(Q).factors.size());
}

std::uint64_t euler_phi(const Factorization& fac, std::uint32_t q) {
  std::uint64_t phi = 1;
  for (const auto& [P, e] : fac.factors) {
    const std::uint64_t qd = ipow(q, static_cast<unsigned>(P.degree()));
    phi *= (qd - 1) * ipow(qd, static_cast<unsigned>(e - 1));
  }
  return phi;
}

std::uint64_t euler_phi(const Poly& Q) {
  if (Q.is_zero() || Q.degree() < 1) throw PreconditionError("constant input: euler_phi needs deg Q >= 1");
  return euler_phi(factor(Q), Q.field().q());
}

Poly involution(const Poly& X) {
  if (X.is_zero()) throw PreconditionError("involution of the zero polynomial");
  std::vector<Elem> c(X.coeffs().rbegin(), X.coeffs().rend());
  return Poly(X.field(), std::move(c));
}

std::uint64_t irreducible_count_formula(std::uint32_t q, int n) {
  auto mu = [](int d) {
    int result = 1;
    for (int p = 2; p * p <= d; ++p) {
      if (d % p) continue;
      d /= p;
      if (d % p == 0) return 0;
      result = -result;
    }
    if (d > 1) result = -result;
    return result;
  };
  std::int64_t sum = 0;
  for (int d = 1; d <= n; ++d)
    if (n % d == 0) sum += mu(d) * static_cast<std::int64_t>(ipow(q, static_cast<unsigned>(n / d)));
  return static_cast<std::uint64_t>(sum / n);
}

// ---------------------------------------------------------------------------

namespace {

// Field elements in lexicographic order of their coefficient tuples.
std::vector<Elem> sorted_elements(const FiniteField& F) {
  std::vector<Elem> out{0};
  const auto u = F.units();
  out.insert(out.end(), u.begin(), u.end());
  return out;
}

}  // namespace

MonicRange::MonicRange(const FiniteField& field, int n)
    : field_(&field), n_(n), count_(ipow(field.q(), static_cast<unsigned>(n))) {}

MonicRange::iterator::iterator(const FiniteField* field, int n, std::uint64_t index)
    : field_(field), n_(n), index_(index), digits_(static_cast<std::size_t>(n), 0), order_(sorted_elements(*field)) {
  std::vector<Elem> c(static_cast<std::size_t>(n) + 1, 0);
  c.back() = 1;
  current_ = Poly(*field, std::move(c));
}

MonicRange::iterator& MonicRange::iterator::operator++() {
  ++index_;
  // Odometer over element ranks; c_{n-1} is the least significant position.
  int i = n_ - 1;
  while (i >= 0 && digits_[static_cast<std::size_t>(i)] + 1 == field_->q()) {
    digits_[static_cast<std::size_t>(i)] = 0;
    --i;
  }
  if (i < 0) return *this;
  ++digits_[static_cast<std::size_t>(i)];
  std::vector<Elem> c(static_cast<std::size_t>(n_) + 1, 0);
  for (int k = 0; k < n_; ++k) c[static_cast<std::size_t>(k)] = order_[digits_[static_cast<std::size_t>(k)]];
  c.back() = 1;
  current_ = Poly(*field_, std::move(c));
  return *this;
}

MonicRange enumerate_monic(const FiniteField& field, int n) {
  if (n < 0) throw PreconditionError("negative degree");
  std::uint64_t count = 1;
  for (int i = 0; i < n; ++i) {
    count *= field.q();
    if (count > budget::kMaxEnumeration)
      throw BudgetError("enumeration budget exceeded: q^n = " + std::to_string(field.q()) + "^" +
                        std::to_string(n) + " > 10^8");
  }
  return MonicRange(field, n);
}

std::uint64_t psi_total(const FiniteField& field, int n) {
  if (n < 1) throw PreconditionError("psi_total needs n >= 1");
  IrreducibleSieve sieve(field);
  return MangoldtTable(sieve, n).total();
}

// ---------------------------------------------------------------------------

const std::vector<std::uint64_t>& IrreducibleSieve::of_degree(int d) {
  if (d < 1) throw PreconditionError("irreducibles need degree >= 1");
  extend_to(d);
  return by_degree_[static_cast<std::size_t>(d)];
}

void IrreducibleSieve::extend_to(int d) {
  const FiniteField& F = *field_;
  const std::uint64_t q = F.q();
  while (static_cast<int>(by_degree_.size()) <= d) {
    const int k = static_cast<int>(by_degree_.size());
    std::uint64_t total = 1;
    for (int i = 0; i < k; ++i) {
      total *= q;
      if (total > budget::kMaxEnumeration)
        throw BudgetError("irreducible sieve budget exceeded: q^" + std::to_string(k) + " > 10^8");
    }
    std::vector<std::uint64_t> qpow(static_cast<std::size_t>(k) + 1, 1);
    for (int i = 1; i <= k; ++i) qpow[static_cast<std::size_t>(i)] = qpow[static_cast<std::size_t>(i - 1)] * q;

    std::vector<std::uint8_t> reducible(total, 0);
    std::vector<Elem> prod(static_cast<std::size_t>(k) + 1);
    std::vector<Elem> mdig;
    for (int j = 1; 2 * j <= k; ++j) {
      const int mdeg = k - j;
      for (const std::uint64_t pcode : by_degree_[static_cast<std::size_t>(j)]) {
        const Poly P = monic_from_code(F, j, pcode);
        const auto& pc = P.coeffs();
        // Start from M = T^{mdeg}: prod = P * T^{mdeg}.
        std::fill(prod.begin(), prod.end(), 0);
        std::uint64_t code = 0;
        for (int i = 0; i <= j; ++i) {
          prod[static_cast<std::size_t>(mdeg + i)] = pc[static_cast<std::size_t>(i)];
          if (mdeg + i < k) code += pc[static_cast<std::size_t>(i)] * qpow[static_cast<std::size_t>(mdeg + i)];
        }
        mdig.assign(static_cast<std::size_t>(mdeg), 0);
        const std::uint64_t mcount = qpow[static_cast<std::size_t>(mdeg)];
        auto apply = [&](int s, Elem delta) {
          for (int i = 0; i <= j; ++i) {
            const std::size_t pos = static_cast<std::size_t>(s + i);
            const Elem old = prod[pos];
            const Elem nv = F.add(old, F.mul(delta, pc[static_cast<std::size_t>(i)]));
            prod[pos] = nv;
            code += (std::uint64_t{nv} - old) * qpow[pos];
          }
        };
        for (std::uint64_t m = 0; m < mcount; ++m) {
          reducible[code] = 1;
          if (m + 1 == mcount) break;
          int t = 0;
          while (mdig[static_cast<std::size_t>(t)] + 1 == q) {
            apply(t, F.neg(static_cast<Elem>(q - 1)));
            mdig[static_cast<std::size_t>(t)] = 0;
            ++t;
          }
          const Elem old = mdig[static_cast<std::size_t>(t)];
          apply(t, F.sub(old + 1, old));
          mdig[static_cast<std::size_t>(t)] = old + 1;
        }
      }
    }
    std::vector<std::uint64_t> irr;
    for (std::uint64_t c = 0; c < total; ++c)
      if (!reducible[c]) irr.push_back(c);
    by_degree_.push_back(std::move(irr));
  }
}

MangoldtTable::MangoldtTable(IrreducibleSieve& sieve, int n) : n_(n) {
  if (n < 1) throw PreconditionError("Mangoldt table needs n >= 1");
  const FiniteField& F = sieve.field();
  for (int d = 1; d <= n; ++d) {
    if (n % d) continue;
    const auto& irr = sieve.of_degree(d);
    for (const std::uint64_t c : irr) {
      if (d == n) {
        entries_.push_back({c, static_cast<std::uint32_t>(d)});
      } else {
        const Poly P = monic_from_code(F, d, c);
        entries_.push_back({monic_code(pow(P, static_cast<unsigned>(n / d))), static_cast<std::uint32_t>(d)});
      }
    }
  }
  std::sort(entries_.begin(), entries_.end(), [](const Entry& a, const Entry& b) { return a.code < b.code; });
}

std::uint32_t MangoldtTable::lambda(std::uint64_t code) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), code,
                             [](const Entry& e, std::uint64_t c) { return e.code < c; });
  return it != entries_.end() && it->code == code ? it->lambda : 0;
}

std::uint64_t MangoldtTable::total() const {
  std::uint64_t s = 0;
  for (const auto& e : entries_) s += e.lambda;
  return s;
}

std::uint64_t MangoldtTable::total_squares() const {
  std::uint64_t s = 0;
  for (const auto& e : entries_) s += std::uint64_t{e.lambda} * e.lambda;
  return s;
}

const MangoldtTable& PrimeCache::mangoldt(int n) {
  auto& slot = tables_[n];
  if (!slot) slot = std::make_unique<MangoldtTable>(sieve_, n);
  return *slot;
}

Poly random_poly(const FiniteField& field, int n, std::mt19937_64& rng, bool monic) {
  if (n < 0) return Poly(field);
  std::uniform_int_distribution<std::uint32_t> any(0, field.q() - 1);
  std::uniform_int_distribution<std::uint32_t> nonzero(1, field.q() - 1);
  std::vector<Elem> c(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i < n; ++i) c[static_cast<std::size_t>(i)] = any(rng);
  c.back() = monic ? 1 : nonzero(rng);
  return Poly(field, std::move(c));
}

}  // namespace ffvar
