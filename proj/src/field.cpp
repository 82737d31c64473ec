#include "ffvar/field.hpp"

#include <algorithm>
#include <charconv>
#include <limits>

#include "ffvar/errors.hpp"
#include "ffvar/poly.hpp"
#include "ffvar/polyring.hpp"

namespace ffvar {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

namespace {

// Digit-wise helpers for the base-p packing of extension elements.
std::vector<std::uint32_t> digits(std::uint32_t code, std::uint32_t p, int r) {
  std::vector<std::uint32_t> d(static_cast<std::size_t>(r));
  for (int i = 0; i < r; ++i) {
    d[static_cast<std::size_t>(i)] = code % p;
    code /= p;
  }
  return d;
}

std::uint32_t undigits(const std::vector<std::uint32_t>& d, std::uint32_t p) {
  std::uint32_t code = 0;
  for (std::size_t i = d.size(); i-- > 0;) code = code * p + d[i];
  return code;
}

// Product of two packed elements of F_p[x]/(m) by schoolbook multiplication.
std::uint32_t slow_mul(std::uint32_t a, std::uint32_t b, std::uint32_t p,
                       const std::vector<std::uint32_t>& m) {
  const int r = static_cast<int>(m.size()) - 1;
  const auto da = digits(a, p, r);
  const auto db = digits(b, p, r);
  std::vector<std::uint64_t> prod(static_cast<std::size_t>(2 * r - 1), 0);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      prod[static_cast<std::size_t>(i + j)] += std::uint64_t{da[static_cast<std::size_t>(i)]} *
                                               db[static_cast<std::size_t>(j)] % p;
  for (auto& v : prod) v %= p;
  for (int k = 2 * r - 2; k >= r; --k) {
    const std::uint64_t c = prod[static_cast<std::size_t>(k)];
    if (c == 0) continue;
    prod[static_cast<std::size_t>(k)] = 0;
    for (int i = 0; i < r; ++i) {
      auto& slot = prod[static_cast<std::size_t>(k - r + i)];
      slot = (slot + (p - c) * m[static_cast<std::size_t>(i)]) % p;
    }
  }
  std::vector<std::uint32_t> out(static_cast<std::size_t>(r));
  for (int i = 0; i < r; ++i) out[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(prod[static_cast<std::size_t>(i)]);
  return undigits(out, p);
}

}  // namespace

std::shared_ptr<const FiniteField> FiniteField::construct(std::uint64_t p, int r) {
  if (!is_prime(p)) throw PreconditionError("not prime: p = " + std::to_string(p));
  if (r < 1) throw PreconditionError("extension degree must be positive");
  std::uint64_t q = 1;
  for (int i = 0; i < r; ++i) {
    q *= p;
    if (q > budget::kMaxFieldOrder)
      throw BudgetError("field too large: p^r exceeds 2^20");
  }

  std::shared_ptr<FiniteField> F(new FiniteField());
  F->p_ = static_cast<std::uint32_t>(p);
  F->r_ = r;
  F->q_ = static_cast<std::uint32_t>(q);

  if (r == 1) {
    F->modulus_ = {0, 1};
    if (p == 2) {
      F->generator_ = 1;
    } else {
      const auto ps = prime_divisors(p - 1);
      for (std::uint32_t g = 2; g < p; ++g) {
        bool ok = true;
        for (auto l : ps) {
          std::uint64_t acc = 1, base = g, e = (p - 1) / l;
          while (e) {
            if (e & 1) acc = acc * base % p;
            base = base * base % p;
            e >>= 1;
          }
          if (acc == 1) {
            ok = false;
            break;
          }
        }
        if (ok) {
          F->generator_ = g;
          break;
        }
      }
    }
    return F;
  }

  // Smallest irreducible in lexicographic order with c_0 most significant,
  // so the odometer advances c_{r-1} fastest.
  auto Fp = construct(p, 1);
  std::vector<Elem> c(static_cast<std::size_t>(r) + 1, 0);
  c.back() = 1;
  bool found = false;
  while (true) {
    if (is_irreducible(Poly(*Fp, c))) {
      found = true;
      break;
    }
    int i = r - 1;
    while (i >= 0 && c[static_cast<std::size_t>(i)] == p - 1) {
      c[static_cast<std::size_t>(i)] = 0;
      --i;
    }
    if (i < 0) break;
    ++c[static_cast<std::size_t>(i)];
  }
  if (!found) throw InvariantError("no irreducible polynomial of requested degree");
  F->modulus_.assign(c.begin(), c.end());

  const std::uint32_t qq = F->q_;
  for (std::uint32_t g = 2; g < qq; ++g) {
    std::vector<Elem> powers;
    powers.reserve(qq - 1);
    std::uint32_t x = 1;
    bool primitive = true;
    for (std::uint32_t k = 0; k < qq - 1; ++k) {
      if (k > 0 && x == 1) {
        primitive = false;
        break;
      }
      powers.push_back(x);
      x = slow_mul(x, g, F->p_, F->modulus_);
    }
    if (!primitive || x != 1) continue;
    F->generator_ = g;
    F->exp_ = std::move(powers);
    F->log_.assign(qq, 0);
    for (std::uint32_t k = 0; k < qq - 1; ++k) F->log_[F->exp_[k]] = k;
    break;
  }
  if (F->exp_.empty()) throw InvariantError("no primitive element found");

  if (F->p_ != 2) {
    F->neg_table_.resize(qq);
    for (std::uint32_t a = 0; a < qq; ++a) {
      auto d = digits(a, F->p_, r);
      for (auto& v : d) v = v == 0 ? 0 : F->p_ - v;
      F->neg_table_[a] = undigits(d, F->p_);
    }
    if (qq <= 256) {
      F->add_table_.resize(std::size_t{qq} * qq);
      for (std::uint32_t a = 0; a < qq; ++a)
        for (std::uint32_t b = 0; b < qq; ++b) F->add_table_[a * qq + b] = F->add_digits(a, b);
    }
  }
  return F;
}

Elem FiniteField::add_digits(Elem a, Elem b) const {
  Elem out = 0, scale = 1;
  for (int i = 0; i < r_; ++i) {
    const Elem s = (a % p_ + b % p_) % p_;
    out += s * scale;
    scale *= p_;
    a /= p_;
    b /= p_;
  }
  return out;
}

Elem FiniteField::inv(Elem a) const {
  if (a == 0) throw PreconditionError("inverse of zero");
  if (r_ == 1) return pow(a, p_ - 2);
  return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

Elem FiniteField::pow(Elem a, std::uint64_t e) const {
  Elem acc = 1;
  while (e) {
    if (e & 1) acc = mul(acc, a);
    a = mul(a, a);
    e >>= 1;
  }
  return acc;
}

Elem FiniteField::from_int(std::int64_t v) const {
  const std::int64_t p = p_;
  return static_cast<Elem>(((v % p) + p) % p);
}

std::vector<std::uint32_t> FiniteField::coeffs(Elem a) const { return digits(a, p_, r_); }

Elem FiniteField::from_coeffs(std::span<const std::uint32_t> c) const {
  std::vector<std::uint32_t> d(static_cast<std::size_t>(r_), 0);
  for (std::size_t i = 0; i < c.size() && i < d.size(); ++i) d[i] = c[i] % p_;
  return undigits(d, p_);
}

std::vector<Elem> FiniteField::units() const {
  std::vector<Elem> out;
  out.reserve(q_ - 1);
  for (Elem a = 1; a < q_; ++a) out.push_back(a);
  if (r_ > 1) {
    std::sort(out.begin(), out.end(), [this](Elem a, Elem b) { return coeffs(a) < coeffs(b); });
  }
  return out;
}

std::string FiniteField::spec_string() const {
  std::string s = "p=" + std::to_string(p_);
  if (r_ > 1) s += ",r=" + std::to_string(r_);
  return s;
}

Field construct_field(std::uint64_t p, int r) { return FiniteField::construct(p, r); }

Field field_of_order(std::uint64_t q) {
  if (q < 2) throw PreconditionError("field order must be at least 2");
  const auto ps = prime_divisors(q);
  if (ps.size() != 1) throw PreconditionError("not a prime power: q = " + std::to_string(q));
  int r = 0;
  for (std::uint64_t t = q; t > 1; t /= ps[0]) ++r;
  return construct_field(ps[0], r);
}

Field parse_field_spec(std::string_view spec) {
  std::uint64_t p = 0;
  int r = 1;
  bool have_p = false;
  std::size_t pos = 0;
  while (pos < spec.size()) {
    auto comma = spec.find(',', pos);
    if (comma == std::string_view::npos) comma = spec.size();
    const auto item = spec.substr(pos, comma - pos);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) throw PreconditionError("bad field spec: " + std::string(spec));
    const auto key = item.substr(0, eq);
    const auto val = item.substr(eq + 1);
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(val.data(), val.data() + val.size(), v);
    if (ec != std::errc() || ptr != val.data() + val.size())
      throw PreconditionError("bad field spec: " + std::string(spec));
    if (key == "p") {
      p = v;
      have_p = true;
    } else if (key == "r") {
      if (v == 0 || v > 64) throw PreconditionError("bad extension degree in: " + std::string(spec));
      r = static_cast<int>(v);
    } else {
      throw PreconditionError("bad field spec key: " + std::string(key));
    }
    pos = comma + 1;
  }
  if (!have_p) throw PreconditionError("field spec lacks p: " + std::string(spec));
  return construct_field(p, r);
}

}  // namespace ffvar
