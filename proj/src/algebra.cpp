// Copyright 2026 The ellfq Authors
// SPDX-License-Identifier: Apache-2.0

#include "ellfq/algebra.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <sstream>

namespace ellfq {

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p = 2; p * p <= n; ++p)
    if (n % p == 0) return false;
  return true;
}

void check_modulus(u64 q) {
  if (q < 5 || q > 0x7fffffffULL || !is_prime(q)) throw PreconditionError("q must be prime >= 5");
}

u32 pow_mod(u32 a, u64 e, u32 q) {
  u64 r = 1 % q, b = a % q;
  while (e) {
    if (e & 1) r = r * b % q;
    b = b * b % q;
    e >>= 1;
  }
  return u32(r);
}

u32 inv_mod(u32 a, u32 q) {
  a %= q;
  if (a == 0) throw PreconditionError("division by zero in F_q");
  i64 t = 0, nt = 1, r = q, nr = a;
  while (nr != 0) {
    i64 k = r / nr;
    t -= k * nt;
    std::swap(t, nt);
    r -= k * nr;
    std::swap(r, nr);
  }
  if (t < 0) t += q;
  return u32(t);
}

u32 reduce_signed(i64 a, u32 q) {
  i64 r = a % i64(q);
  return u32(r < 0 ? r + q : r);
}

bool is_square_mod(u32 a, u32 q) {
  a %= q;
  return a == 0 || pow_mod(a, (q - 1) / 2, q) == 1;
}

u32 sqrt_mod(u32 a, u32 q) {
  a %= q;
  if (a == 0) return 0;
  if (!is_square_mod(a, q)) throw PreconditionError("sqrt of a non-square");
  // Tonelli-Shanks.
  u64 s = 0, m = q - 1;
  while (m % 2 == 0) {
    m /= 2;
    ++s;
  }
  u32 z = least_nonsquare(q);
  u32 c = pow_mod(z, m, q), x = pow_mod(a, (m + 1) / 2, q), t = pow_mod(a, m, q);
  u64 ms = s;
  while (t != 1) {
    u64 i = 0;
    u32 tt = t;
    while (tt != 1) {
      tt = mul_mod(tt, tt, q);
      ++i;
    }
    u32 b = c;
    for (u64 j = 0; j + 1 < ms - i; ++j) b = mul_mod(b, b, q);
    x = mul_mod(x, b, q);
    c = mul_mod(b, b, q);
    t = mul_mod(t, c, q);
    ms = i;
  }
  return x;
}

u32 least_nonsquare(u32 q) {
  for (u32 c = 2; c < q; ++c)
    if (!is_square_mod(c, q)) return c;
  throw PreconditionError("no non-square in F_q");
}

FieldElem FieldElem::inverse() const { return raw(inv_mod(v_, q_)); }

bool is_square(const FieldElem& e) { return is_square_mod(e.value(), e.q()); }

// ---------------------------------------------------------------------------
// Poly

Poly::Poly(u32 q, std::vector<u32> coeffs) : q_(q), c_(std::move(coeffs)) {
  for (auto& x : c_) x %= q_;
  trim();
}

Poly Poly::from_ints(u32 q, const std::vector<i64>& coeffs) {
  std::vector<u32> c;
  c.reserve(coeffs.size());
  for (i64 x : coeffs) c.push_back(reduce_signed(x, q));
  return Poly(q, std::move(c));
}

Poly Poly::constant(u32 q, i64 c) { return Poly(q, {reduce_signed(c, q)}); }

Poly Poly::monomial(u32 q, i64 c, unsigned n) {
  std::vector<u32> v(n + 1, 0);
  v[n] = reduce_signed(c, q);
  return Poly(q, std::move(v));
}

void Poly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  return scaled(inv_mod(lead(), q_));
}

Poly Poly::derivative() const {
  std::vector<u32> d;
  for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(mul_mod(c_[i], u32(i % q_), q_));
  return Poly(q_, std::move(d));
}

Poly Poly::scaled(u32 c) const {
  std::vector<u32> d(c_);
  for (auto& x : d) x = mul_mod(x, c % q_, q_);
  return Poly(q_, std::move(d));
}

Poly Poly::shifted(unsigned n) const {
  if (is_zero()) return *this;
  std::vector<u32> d(n, 0);
  d.insert(d.end(), c_.begin(), c_.end());
  return Poly(q_, std::move(d));
}

Poly Poly::reversed(int n) const {
  require(n >= degree(), "reversal length below degree");
  std::vector<u32> d(std::size_t(n) + 1, 0);
  for (std::size_t i = 0; i < c_.size(); ++i) d[std::size_t(n) - i] = c_[i];
  return Poly(q_, std::move(d));
}

u32 Poly::eval(u32 x) const {
  u32 r = 0;
  for (std::size_t i = c_.size(); i-- > 0;) r = add_mod(mul_mod(r, x, q_), c_[i], q_);
  return r;
}

ExtElem Poly::eval(const ExtElem& x) const {
  ExtElem r = ExtElem::from_int(x.field(), 0);
  for (std::size_t i = c_.size(); i-- > 0;) r = r * x + ExtElem::from_int(x.field(), c_[i]);
  return r;
}

static u32 common_q(const Poly& a, const Poly& b) {
  if (a.q() != b.q()) throw PreconditionError("polynomials over different fields");
  return a.q();
}

Poly Poly::operator+(const Poly& o) const {
  u32 q = common_q(*this, o);
  std::vector<u32> d(std::max(c_.size(), o.c_.size()), 0);
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = add_mod(coeff(i), o.coeff(i), q);
  return Poly(q, std::move(d));
}

Poly Poly::operator-(const Poly& o) const {
  u32 q = common_q(*this, o);
  std::vector<u32> d(std::max(c_.size(), o.c_.size()), 0);
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = sub_mod(coeff(i), o.coeff(i), q);
  return Poly(q, std::move(d));
}

Poly Poly::operator-() const { return Poly(q_) - *this; }

Poly Poly::operator*(const Poly& o) const {
  u32 q = common_q(*this, o);
  if (is_zero() || o.is_zero()) return Poly(q);
  std::vector<u64> acc(c_.size() + o.c_.size() - 1, 0);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) acc[i + j] = (acc[i + j] + u64(c_[i]) * o.c_[j]) % q;
  }
  std::vector<u32> d(acc.begin(), acc.end());
  return Poly(q, std::move(d));
}

Poly Poly::operator/(const Poly& o) const { return divrem(*this, o).quot; }
Poly Poly::operator%(const Poly& o) const { return divrem(*this, o).rem; }

std::string Poly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = c_.size(); i-- > 0;) {
    if (c_[i] == 0) continue;
    if (!first) os << " + ";
    first = false;
    if (i == 0 || c_[i] != 1) os << c_[i];
    if (i >= 1) os << var;
    if (i >= 2) os << "^" << i;
  }
  return os.str();
}

bool poly_less(const Poly& a, const Poly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (std::size_t i = a.coeffs().size(); i-- > 0;)
    if (a.coeff(i) != b.coeff(i)) return a.coeff(i) < b.coeff(i);
  return false;
}

DivRem divrem(const Poly& a, const Poly& b) {
  u32 q = common_q(a, b);
  if (b.is_zero()) throw PreconditionError("polynomial division by zero");
  if (a.degree() < b.degree()) return {Poly(q), a};
  std::vector<u32> r(a.coeffs());
  int db = b.degree();
  std::vector<u32> quot(std::size_t(a.degree() - db) + 1, 0);
  u32 inv = inv_mod(b.lead(), q);
  for (int i = a.degree(); i >= db; --i) {
    u32 c = mul_mod(r[std::size_t(i)], inv, q);
    if (c == 0) continue;
    quot[std::size_t(i - db)] = c;
    for (int j = 0; j <= db; ++j) {
      auto& x = r[std::size_t(i - db + j)];
      x = sub_mod(x, mul_mod(c, b.coeff(std::size_t(j)), q), q);
    }
  }
  r.resize(std::size_t(db));
  return {Poly(q, std::move(quot)), Poly(q, std::move(r))};
}

Poly gcd(const Poly& a, const Poly& b) {
  Poly x = a, y = b;
  while (!y.is_zero()) {
    Poly r = x % y;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

ExtendedGcd xgcd(const Poly& a, const Poly& b) {
  u32 q = common_q(a, b);
  Poly r0 = a, r1 = b, s0 = Poly::constant(q, 1), s1(q), t0(q), t1 = Poly::constant(q, 1);
  while (!r1.is_zero()) {
    DivRem dr = divrem(r0, r1);
    Poly r2 = dr.rem, s2 = s0 - dr.quot * s1, t2 = t0 - dr.quot * t1;
    r0 = std::move(r1);
    r1 = std::move(r2);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  u32 inv = inv_mod(r0.lead(), q);
  return {r0.scaled(inv), s0.scaled(inv), t0.scaled(inv)};
}

Poly pow(const Poly& base, unsigned e) {
  Poly r = Poly::constant(base.q(), 1), b = base;
  while (e) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

Poly powmod(const Poly& base, u64 e, const Poly& m) {
  Poly r = Poly::constant(base.q(), 1) % m, b = base % m;
  while (e) {
    if (e & 1) r = (r * b) % m;
    e >>= 1;
    if (e) b = (b * b) % m;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Factorization

namespace {

// p-th root of a polynomial whose derivative vanishes (coefficients in F_p are fixed by Frobenius).
Poly pth_root(const Poly& a) {
  u32 q = a.q();
  std::vector<u32> c;
  for (std::size_t i = 0; i < a.coeffs().size(); i += q) c.push_back(a.coeff(i));
  return Poly(q, std::move(c));
}

void squarefree_decomposition(const Poly& f, int mult, std::vector<std::pair<Poly, int>>& out) {
  // Yun-style decomposition for monic f, with the characteristic-p correction.
  if (f.degree() <= 0) return;
  Poly d = f.derivative();
  if (d.is_zero()) {
    squarefree_decomposition(pth_root(f), mult * int(f.q()), out);
    return;
  }
  Poly c = gcd(f, d);
  Poly w = f / c;
  int i = 1;
  while (w.degree() > 0) {
    Poly y = gcd(w, c);
    Poly z = w / y;
    if (z.degree() > 0) out.emplace_back(z.monic(), i * mult);
    w = y;
    c = c / y;
    ++i;
  }
  if (c.degree() > 0) {
    // What remains is a p-th power.
    squarefree_decomposition(pth_root(c.monic()), mult * int(f.q()), out);
  }
}

void equal_degree_split(const Poly& f, int d, std::mt19937_64& rng, std::vector<Poly>& out) {
  if (f.degree() == d) {
    out.push_back(f.monic());
    return;
  }
  u32 q = f.q();
  std::uniform_int_distribution<u32> dist(0, q - 1);
  for (;;) {
    std::vector<u32> c(std::size_t(f.degree()), 0);
    for (auto& x : c) x = dist(rng);
    Poly a(q, std::move(c));
    if (a.degree() <= 0) continue;
    Poly g = gcd(a, f);
    if (g.degree() > 0 && g.degree() < f.degree()) {
      equal_degree_split(g, d, rng, out);
      equal_degree_split(f / g, d, rng, out);
      return;
    }
    // a^((q^d - 1)/2) = prod_i (a^((q-1)/2))^(q^i)
    Poly h = powmod(a, (q - 1) / 2, f), acc = h, r = h;
    for (int i = 1; i < d; ++i) {
      r = powmod(r, q, f);
      acc = (acc * r) % f;
    }
    Poly b = acc - Poly::constant(q, 1);
    g = gcd(b, f);
    if (g.degree() > 0 && g.degree() < f.degree()) {
      equal_degree_split(g, d, rng, out);
      equal_degree_split(f / g, d, rng, out);
      return;
    }
  }
}

}  // namespace

Factorization factor(const Poly& a, u64 seed) {
  if (a.is_zero()) throw PreconditionError("factor of the zero polynomial");
  std::vector<std::pair<Poly, int>> sqf;
  squarefree_decomposition(a.monic(), 1, sqf);
  std::mt19937_64 rng(seed);
  std::map<std::vector<u32>, int> mult;
  std::vector<Poly> uniq;
  for (auto& [g, m] : sqf) {
    // Distinct-degree factorization.
    Poly rest = g;
    Poly h = Poly::t(g.q()) % rest;
    for (int d = 1; rest.degree() >= 2 * d; ++d) {
      h = powmod(h, g.q(), rest);
      Poly part = gcd(h - Poly::t(g.q()), rest);
      if (part.degree() > 0) {
        std::vector<Poly> pieces;
        equal_degree_split(part, d, rng, pieces);
        for (auto& p : pieces) {
          auto [it, inserted] = mult.emplace(p.coeffs(), 0);
          if (inserted) uniq.push_back(p);
          it->second += m;
        }
        rest = rest / part;
        h = h % rest;
      }
    }
    if (rest.degree() > 0) {
      Poly p = rest.monic();
      auto [it, inserted] = mult.emplace(p.coeffs(), 0);
      if (inserted) uniq.push_back(p);
      it->second += m;
    }
  }
  std::sort(uniq.begin(), uniq.end(), poly_less);
  Factorization out;
  for (auto& p : uniq) out.emplace_back(p, mult[p.coeffs()]);
  return out;
}

bool is_irreducible(const Poly& a) {
  if (a.degree() < 1) throw PreconditionError("irreducibility test needs a non-constant polynomial");
  int n = a.degree();
  if (n == 1) return true;
  Poly m = a.monic();
  u32 q = a.q();
  Poly t = Poly::t(q);
  // Rabin: t^(q^n) = t mod m and gcd(t^(q^(n/r)) - t, m) = 1 for primes r | n.
  std::vector<Poly> frob(std::size_t(n) + 1, Poly(q));
  frob[0] = t % m;
  for (int k = 1; k <= n; ++k) frob[std::size_t(k)] = powmod(frob[std::size_t(k - 1)], q, m);
  if (frob[std::size_t(n)] != t % m) return false;
  for (int r = 2; r <= n; ++r) {
    if (n % r != 0 || !is_prime(u64(r))) continue;
    if (gcd(frob[std::size_t(n / r)] - t, m).degree() > 0) return false;
  }
  return true;
}

bool is_squarefree(const Poly& a) {
  if (a.degree() <= 0) return !a.is_zero();
  for (auto& [p, e] : factor(a))
    if (e > 1) return false;
  return true;
}

int mobius(u64 n) {
  int r = 1;
  for (u64 p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    r = -r;
  }
  if (n > 1) r = -r;
  return r;
}

u64 necklace_count(u32 q, int d) {
  require(d >= 1, "degree must be >= 1");
  i64 total = 0;
  for (int e = 1; e <= d; ++e) {
    if (d % e) continue;
    i64 qe = 1;
    for (int i = 0; i < e; ++i) qe *= q;
    total += mobius(u64(d / e)) * qe;
  }
  return u64(total / d);
}

void for_each_monic_irreducible(u32 q, int d, const std::function<bool(const Poly&)>& fn) {
  require(d >= 1, "degree must be >= 1");
  check_modulus(q);
  std::vector<u32> digits(std::size_t(d), 0);
  for (;;) {
    std::vector<u32> c(digits);
    c.push_back(1);
    Poly p(q, std::move(c));
    if (is_irreducible(p) && !fn(p)) return;
    // Increment with the top coefficient most significant.
    std::size_t i = 0;
    while (i < digits.size() && ++digits[i] == q) digits[i++] = 0;
    if (i == digits.size()) return;
  }
}

std::vector<Poly> monic_irreducibles(u32 q, int d) {
  std::vector<Poly> out;
  for_each_monic_irreducible(q, d, [&](const Poly& p) {
    out.push_back(p);
    return true;
  });
  return out;
}

// ---------------------------------------------------------------------------
// Extension fields

std::shared_ptr<const ExtField> ExtField::make(const Poly& modulus) {
  require(modulus.is_monic() && modulus.degree() >= 1, "extension modulus must be monic of degree >= 1");
  require(is_irreducible(modulus), "extension modulus must be irreducible");
  u64 size = 1;
  for (int i = 0; i < modulus.degree(); ++i) {
    require(size <= (~0ULL) / modulus.q(), "extension field too large");
    size *= modulus.q();
  }
  return std::shared_ptr<const ExtField>(new ExtField(modulus, size));
}

ExtElem::ExtElem(ExtFieldPtr field, const Poly& rep) : field_(std::move(field)), rep_(rep % field_->modulus()) {}

ExtElem ExtElem::from_int(ExtFieldPtr field, i64 c) {
  u32 q = field->q();
  return ExtElem(std::move(field), Poly::constant(q, c));
}

ExtElem ExtElem::from_index(ExtFieldPtr field, u64 index) {
  u32 q = field->q();
  std::vector<u32> c(std::size_t(field->degree()), 0);
  for (auto& x : c) {
    x = u32(index % q);
    index /= q;
  }
  return ExtElem(std::move(field), Poly(q, std::move(c)));
}

static void same_field(const ExtElem& a, const ExtElem& b) {
  if (a.field() != b.field() && a.field()->modulus() != b.field()->modulus())
    throw PreconditionError("extension elements from different fields");
}

ExtElem ExtElem::operator+(const ExtElem& o) const {
  same_field(*this, o);
  ExtElem r;
  r.field_ = field_;
  r.rep_ = rep_ + o.rep_;
  return r;
}

ExtElem ExtElem::operator-(const ExtElem& o) const {
  same_field(*this, o);
  ExtElem r;
  r.field_ = field_;
  r.rep_ = rep_ - o.rep_;
  return r;
}

ExtElem ExtElem::operator-() const {
  ExtElem r;
  r.field_ = field_;
  r.rep_ = -rep_;
  return r;
}

ExtElem ExtElem::operator*(const ExtElem& o) const {
  same_field(*this, o);
  return ExtElem(field_, rep_ * o.rep_);
}

ExtElem ExtElem::inverse() const {
  if (is_zero()) throw PreconditionError("inverse of zero in residue field");
  ExtendedGcd g = xgcd(rep_, field_->modulus());
  ensure(g.g.is_one(), "residue field modulus not irreducible");
  return ExtElem(field_, g.s);
}

ExtElem ExtElem::pow(u64 e) const {
  ExtElem r = from_int(field_, 1), b = *this;
  while (e) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

bool ExtElem::operator==(const ExtElem& o) const {
  return rep_ == o.rep_ && field_->modulus() == o.field_->modulus();
}

bool is_square(const ExtElem& e) {
  if (e.is_zero()) return true;
  return e.pow((e.field()->size() - 1) / 2).is_one();
}

}  // namespace ellfq
