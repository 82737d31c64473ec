#include "ffvar/poly.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>

#include "ffvar/errors.hpp"

namespace ffvar {

Poly::Poly(const FiniteField& field, std::vector<Elem> coeffs) : field_(&field), c_(std::move(coeffs)) {
  for (auto c : c_) {
    if (c >= field.q()) throw PreconditionError("coefficient out of range for field");
  }
  normalize();
}

Poly Poly::constant(const FiniteField& field, Elem c) { return Poly(field, std::vector<Elem>{c}); }

Poly Poly::monomial(const FiniteField& field, int degree, Elem c) {
  if (degree < 0) throw PreconditionError("negative monomial degree");
  std::vector<Elem> v(static_cast<std::size_t>(degree) + 1, 0);
  v.back() = c;
  return Poly(field, std::move(v));
}

void Poly::normalize() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

double Poly::norm() const {
  if (is_zero()) return 0.0;
  return std::pow(static_cast<double>(field_->q()), degree());
}

Poly Poly::operator-() const {
  Poly out = *this;
  for (auto& c : out.c_) c = field_->neg(c);
  return out;
}

Poly& Poly::operator+=(const Poly& o) {
  if (!field_) field_ = o.field_;
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0);
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = field_->add(c_[i], o.c_[i]);
  normalize();
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (!field_) field_ = o.field_;
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0);
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = field_->sub(c_[i], o.c_[i]);
  normalize();
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  const FiniteField* F = a.field_ ? a.field_ : b.field_;
  Poly out(*F);
  if (a.is_zero() || b.is_zero()) return out;
  out.c_.assign(a.c_.size() + b.c_.size() - 1, 0);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    const Elem ai = a.c_[i];
    if (ai == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j)
      out.c_[i + j] = F->add(out.c_[i + j], F->mul(ai, b.c_[j]));
  }
  out.normalize();
  return out;
}

Poly& Poly::operator*=(const Poly& o) { return *this = *this * o; }

Poly Poly::scaled(Elem c) const {
  Poly out = *this;
  for (auto& v : out.c_) v = field_->mul(v, c);
  out.normalize();
  return out;
}

Poly Poly::shifted(int k) const {
  if (is_zero()) return *this;
  Poly out(*field_);
  out.c_.assign(static_cast<std::size_t>(k), 0);
  out.c_.insert(out.c_.end(), c_.begin(), c_.end());
  return out;
}

bool lex_less(const Poly& a, const Poly& b) {
  // Equal-length tuples in every use; shorter tuples sort first otherwise.
  if (a.c_.size() != b.c_.size()) return a.c_.size() < b.c_.size();
  if (a.field_ && a.field_->r() > 1) {
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] != b.c_[i]) return a.field_->coeffs(a.c_[i]) < a.field_->coeffs(b.c_[i]);
    }
    return false;
  }
  return a.c_ < b.c_;
}

std::pair<Poly, Poly> euclidean_division(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw PreconditionError("division by zero polynomial");
  const FiniteField& F = b.field();
  if (a.degree() < b.degree()) return {Poly(F), a};
  std::vector<Elem> r = a.coeffs();
  const int db = b.degree();
  const int dq = a.degree() - db;
  std::vector<Elem> qc(static_cast<std::size_t>(dq) + 1, 0);
  const Elem inv_lead = F.inv(b.lead());
  const auto& bc = b.coeffs();
  for (int k = dq; k >= 0; --k) {
    const Elem c = F.mul(r[static_cast<std::size_t>(k + db)], inv_lead);
    qc[static_cast<std::size_t>(k)] = c;
    if (c == 0) continue;
    for (int i = 0; i <= db; ++i) {
      auto& slot = r[static_cast<std::size_t>(k + i)];
      slot = F.sub(slot, F.mul(c, bc[static_cast<std::size_t>(i)]));
    }
  }
  r.resize(static_cast<std::size_t>(db));
  return {Poly(F, std::move(qc)), Poly(F, std::move(r))};
}

Poly mod(const Poly& a, const Poly& b) { return euclidean_division(a, b).second; }

Poly make_monic(const Poly& a) {
  if (a.is_zero() || a.is_monic()) return a;
  return a.scaled(a.field().inv(a.lead()));
}

Poly gcd(const Poly& a, const Poly& b) {
  Poly x = a, y = b;
  while (!y.is_zero()) {
    Poly r = mod(x, y);
    x = std::move(y);
    y = std::move(r);
  }
  return make_monic(x);
}

Poly inverse_mod(const Poly& a, const Poly& m) {
  const FiniteField& F = m.field();
  Poly r0 = m, r1 = mod(a, m);
  Poly s0(F), s1 = Poly::constant(F, 1);
  while (!r1.is_zero()) {
    auto [qt, rem] = euclidean_division(r0, r1);
    Poly s2 = s0 - qt * s1;
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (r0.degree() != 0) throw PreconditionError("not invertible modulo the given polynomial");
  return mod(s0.scaled(F.inv(r0.lead())), m);
}

Poly mulmod(const Poly& a, const Poly& b, const Poly& m) { return mod(a * b, m); }

Poly powmod(const Poly& a, std::uint64_t e, const Poly& m) {
  Poly acc = mod(Poly::constant(m.field(), 1), m);
  Poly base = mod(a, m);
  while (e) {
    if (e & 1) acc = mulmod(acc, base, m);
    e >>= 1;
    if (e) base = mulmod(base, base, m);
  }
  return acc;
}

Poly pow(const Poly& a, unsigned e) {
  Poly acc = Poly::constant(a.field(), 1);
  Poly base = a;
  while (e) {
    if (e & 1) acc *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return acc;
}

Poly derivative(const Poly& a) {
  const FiniteField& F = a.field();
  if (a.degree() < 1) return Poly(F);
  std::vector<Elem> d(static_cast<std::size_t>(a.degree()), 0);
  for (int i = 1; i <= a.degree(); ++i)
    d[static_cast<std::size_t>(i - 1)] = F.mul(F.from_int(i), a[i]);
  return Poly(F, std::move(d));
}

Elem evaluate(const Poly& a, Elem x) {
  const FiniteField& F = a.field();
  Elem acc = 0;
  for (int i = a.degree(); i >= 0; --i) acc = F.add(F.mul(acc, x), a[i]);
  return acc;
}

std::uint64_t ipow(std::uint64_t base, unsigned e) {
  std::uint64_t acc = 1;
  for (unsigned i = 0; i < e; ++i) acc *= base;
  return acc;
}

std::uint64_t poly_code(const Poly& f) {
  std::uint64_t code = 0;
  const std::uint64_t q = f.field().q();
  for (int i = f.degree(); i >= 0; --i) code = code * q + f[i];
  return code;
}

Poly poly_from_code(const FiniteField& field, std::uint64_t code) {
  std::vector<Elem> c;
  while (code) {
    c.push_back(static_cast<Elem>(code % field.q()));
    code /= field.q();
  }
  return Poly(field, std::move(c));
}

std::uint64_t monic_code(const Poly& f) {
  std::uint64_t code = 0;
  const std::uint64_t q = f.field().q();
  for (int i = f.degree() - 1; i >= 0; --i) code = code * q + f[i];
  return code;
}

Poly monic_from_code(const FiniteField& field, int n, std::uint64_t code) {
  std::vector<Elem> c(static_cast<std::size_t>(n) + 1, 0);
  for (int i = 0; i < n; ++i) {
    c[static_cast<std::size_t>(i)] = static_cast<Elem>(code % field.q());
    code /= field.q();
  }
  c.back() = 1;
  return Poly(field, std::move(c));
}

// ---------------------------------------------------------------------------

namespace {

std::uint64_t parse_uint(std::string_view s, std::string_view whole) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    throw PreconditionError("bad polynomial text: " + std::string(whole));
  return v;
}

Elem parse_coefficient(const FiniteField& F, std::string_view s, std::string_view whole) {
  if (F.r() == 1) {
    const auto v = parse_uint(s, whole);
    if (v >= F.p()) throw PreconditionError("coefficient out of range: " + std::string(whole));
    return static_cast<Elem>(v);
  }
  std::vector<std::uint32_t> digits;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    auto dot = s.find('.', pos);
    if (dot == std::string_view::npos) dot = s.size();
    const auto v = parse_uint(s.substr(pos, dot - pos), whole);
    if (v >= F.p()) throw PreconditionError("coefficient out of range: " + std::string(whole));
    digits.push_back(static_cast<std::uint32_t>(v));
    pos = dot + 1;
  }
  if (digits.size() > static_cast<std::size_t>(F.r()))
    throw PreconditionError("too many sub-coefficients: " + std::string(whole));
  return F.from_coeffs(digits);
}

Poly parse_pretty(const FiniteField& F, std::string_view text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  std::vector<Elem> c;
  std::size_t pos = 0;
  while (pos < s.size()) {
    bool negative = false;
    if (s[pos] == '+' || s[pos] == '-') {
      negative = s[pos] == '-';
      ++pos;
    }
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    std::int64_t coef = 1;
    if (pos > start) coef = static_cast<std::int64_t>(parse_uint(std::string_view(s).substr(start, pos - start), text));
    unsigned deg = 0;
    if (pos < s.size() && (s[pos] == 'T' || s[pos] == 'x' || s[pos] == 'X')) {
      ++pos;
      deg = 1;
      if (pos < s.size() && s[pos] == '^') {
        ++pos;
        start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        deg = static_cast<unsigned>(parse_uint(std::string_view(s).substr(start, pos - start), text));
      }
    } else if (pos == start) {
      throw PreconditionError("bad polynomial text: " + std::string(text));
    }
    if (pos < s.size() && s[pos] != '+' && s[pos] != '-')
      throw PreconditionError("bad polynomial text: " + std::string(text));
    if (c.size() <= deg) c.resize(deg + 1, 0);
    Elem v = F.from_int(coef);
    if (negative) v = F.neg(v);
    c[deg] = F.add(c[deg], v);
  }
  return Poly(F, std::move(c));
}

}  // namespace

Poly parse_poly(const FiniteField& F, std::string_view text) {
  const bool pretty = text.find_first_of("TxX") != std::string_view::npos;
  if (pretty) {
    if (F.r() != 1) throw PreconditionError("pretty polynomial form requires a prime field");
    return parse_pretty(F, text);
  }
  std::vector<Elem> c;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    auto item = text.substr(pos, comma - pos);
    while (!item.empty() && std::isspace(static_cast<unsigned char>(item.front()))) item.remove_prefix(1);
    while (!item.empty() && std::isspace(static_cast<unsigned char>(item.back()))) item.remove_suffix(1);
    c.push_back(parse_coefficient(F, item, text));
    pos = comma + 1;
  }
  return Poly(F, std::move(c));
}

namespace {

std::string coefficient_text(const FiniteField& F, Elem e) {
  if (F.r() == 1) return std::to_string(e);
  std::string s;
  const auto d = F.coeffs(e);
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (i) s.push_back('.');
    s += std::to_string(d[i]);
  }
  return s;
}

}  // namespace

std::string format_poly(const Poly& f) {
  if (f.is_zero()) return "0";
  std::string s;
  for (int i = 0; i <= f.degree(); ++i) {
    if (i) s.push_back(',');
    s += coefficient_text(f.field(), f[i]);
  }
  return s;
}

std::string pretty_poly(const Poly& f) {
  if (f.is_zero()) return "0";
  const FiniteField& F = f.field();
  std::string s;
  for (int i = f.degree(); i >= 0; --i) {
    const Elem c = f[i];
    if (c == 0) continue;
    if (!s.empty()) s.push_back('+');
    std::string cs = coefficient_text(F, c);
    if (F.r() > 1) cs = "(" + cs + ")";
    if (i == 0) {
      s += cs;
      continue;
    }
    if (c != 1) s += cs;
    s.push_back('T');
    if (i > 1) s += "^" + std::to_string(i);
  }
  return s;
}

}  // namespace ffvar
