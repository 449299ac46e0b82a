// Copyright 2026 The ellfq Authors
// SPDX-License-Identifier: Apache-2.0

#include "ellfq/function_field.hpp"

#include <algorithm>
#include <sstream>

namespace ellfq {

// ---------------------------------------------------------------------------
// RationalFunction

RationalFunction::RationalFunction(const Poly& num) : num_(num), den_(Poly::constant(num.q(), 1)) {}

RationalFunction::RationalFunction(const Poly& num, const Poly& den) {
  if (num.q() != den.q()) throw PreconditionError("rational function over mixed fields");
  if (den.is_zero()) throw PreconditionError("rational function with zero denominator");
  if (num.is_zero()) {
    num_ = num;
    den_ = Poly::constant(num.q(), 1);
    return;
  }
  Poly g = gcd(num, den);
  num_ = num / g;
  den_ = den / g;
  u32 inv = inv_mod(den_.lead(), den_.q());
  num_ = num_.scaled(inv);
  den_ = den_.scaled(inv);
}

RationalFunction RationalFunction::operator+(const RationalFunction& o) const {
  if (den_ == o.den_) return RationalFunction(num_ + o.num_, den_);
  return RationalFunction(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RationalFunction RationalFunction::operator-(const RationalFunction& o) const {
  if (den_ == o.den_) return RationalFunction(num_ - o.num_, den_);
  return RationalFunction(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

RationalFunction RationalFunction::operator-() const {
  RationalFunction r = *this;
  r.num_ = -num_;
  return r;
}

RationalFunction RationalFunction::operator*(const RationalFunction& o) const {
  // Cross-cancel before multiplying to keep degrees small.
  Poly g1 = gcd(num_, o.den_), g2 = gcd(o.num_, den_);
  if (num_.is_zero() || o.num_.is_zero()) return RationalFunction(q());
  RationalFunction r;
  r.num_ = (num_ / g1) * (o.num_ / g2);
  r.den_ = (den_ / g2) * (o.den_ / g1);
  return r;
}

RationalFunction RationalFunction::operator/(const RationalFunction& o) const { return *this * o.inverse(); }

RationalFunction RationalFunction::inverse() const {
  if (is_zero()) throw PreconditionError("inverse of the zero rational function");
  return RationalFunction(den_, num_);
}

RationalFunction RationalFunction::pow(int e) const {
  if (e < 0) return inverse().pow(-e);
  RationalFunction r;
  r.num_ = ellfq::pow(num_, unsigned(e));
  r.den_ = ellfq::pow(den_, unsigned(e));
  return r;
}

RationalFunction RationalFunction::scaled(i64 c) const {
  RationalFunction r = *this;
  r.num_ = num_.scaled(reduce_signed(c, q()));
  if (r.num_.is_zero()) r.den_ = Poly::constant(q(), 1);
  return r;
}

RationalFunction RationalFunction::invert_variable() const {
  if (is_zero()) return *this;
  int dn = num_.degree(), dd = den_.degree();
  Poly n = num_.reversed(dn), d = den_.reversed(dd);
  if (dd >= dn) return RationalFunction(n.shifted(unsigned(dd - dn)), d);
  return RationalFunction(n, d.shifted(unsigned(dn - dd)));
}

std::string RationalFunction::to_string() const {
  if (den_.is_one()) return num_.to_string();
  return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

bool rf_less(const RationalFunction& a, const RationalFunction& b) {
  if (a.den() != b.den()) return poly_less(a.den(), b.den());
  return poly_less(a.num(), b.num());
}

// ---------------------------------------------------------------------------
// Places

Place Place::finite(const Poly& v) {
  require(v.is_monic() && v.degree() >= 1 && is_irreducible(v), "finite place needs a monic irreducible polynomial");
  Place p;
  p.v_ = v;
  return p;
}

Place Place::infinity(u32 q) {
  Place p;
  p.inf_ = true;
  p.v_ = Poly::t(q);
  return p;
}

u64 Place::norm() const {
  u64 n = 1;
  for (int i = 0; i < degree(); ++i) n *= q();
  return n;
}

ExtFieldPtr Place::residue_field() const { return ExtField::make(v_); }

std::string Place::to_string() const { return inf_ ? std::string("inf") : v_.to_string(); }

bool place_less(const Place& a, const Place& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  if (a.is_infinity() != b.is_infinity()) return b.is_infinity();
  return poly_less(a.poly(), b.poly());
}

const char* to_string(SplitKind k) {
  switch (k) {
    case SplitKind::Split:
      return "split";
    case SplitKind::Inert:
      return "inert";
    case SplitKind::Ramified:
      return "ramified";
  }
  return "?";
}

RationalFunction to_chart(const RationalFunction& r, const Place& w) {
  return w.is_infinity() ? r.invert_variable() : r;
}

int ord_poly(const Poly& a, const Poly& v) {
  if (a.is_zero()) throw PreconditionError("valuation of zero");
  int k = 0;
  Poly x = a;
  for (;;) {
    DivRem dr = divrem(x, v);
    if (!dr.rem.is_zero()) return k;
    x = dr.quot;
    ++k;
  }
}

int ord_at(const RationalFunction& r, const Place& w) {
  if (r.is_zero()) throw PreconditionError("valuation of zero");
  if (w.is_infinity()) return r.den().degree() - r.num().degree();
  return ord_poly(r.num(), w.poly()) - ord_poly(r.den(), w.poly());
}

ExtElem residue_at(const RationalFunction& r, const Place& w) {
  ExtFieldPtr k = w.residue_field();
  if (r.is_zero()) return ExtElem::from_int(k, 0);
  int o = ord_at(r, w);
  if (o < 0) throw PreconditionError("residue at a pole");
  if (o > 0) return ExtElem::from_int(k, 0);
  RationalFunction c = to_chart(r, w);
  return ExtElem(k, c.num()) / ExtElem(k, c.den());
}

ExtElem chart_residue_at(const RationalFunction& c, const Place& w) {
  ExtFieldPtr k = w.residue_field();
  if (c.is_zero()) return ExtElem::from_int(k, 0);
  ExtElem den(k, c.den());
  if (den.is_zero()) throw PreconditionError("residue at a pole");
  return ExtElem(k, c.num()) / den;
}

static Poly strip(const Poly& a, const Poly& v) {
  Poly x = a;
  for (;;) {
    DivRem dr = divrem(x, v);
    if (!dr.rem.is_zero()) return x;
    x = dr.quot;
  }
}

ExtElem unit_residue_at(const RationalFunction& r, const Place& w) {
  if (r.is_zero()) throw PreconditionError("unit part of zero");
  ExtFieldPtr k = w.residue_field();
  RationalFunction c = to_chart(r, w);
  return ExtElem(k, strip(c.num(), w.poly())) / ExtElem(k, strip(c.den(), w.poly()));
}

std::vector<Place> support(const RationalFunction& r, u64 seed) {
  std::vector<Place> out;
  for (const Poly* p : {&r.num(), &r.den()})
    if (p->degree() > 0)
      for (auto& [v, e] : factor(*p, seed)) out.push_back(Place::finite(v));
  if (!r.is_zero() && ord_at(r, Place::infinity(r.q())) != 0) out.push_back(Place::infinity(r.q()));
  std::sort(out.begin(), out.end(), place_less);
  return out;
}

// ---------------------------------------------------------------------------
// Square classes

RationalFunction SquareClass::value() const { return RationalFunction(g.scaled(c)); }

SquareClass square_class_rep(const RationalFunction& f, u64 seed) {
  if (f.is_zero()) throw PreconditionError("square class of zero");
  u32 q = f.q();
  SquareClass sc;
  Poly g = Poly::constant(q, 1);
  for (const Poly* p : {&f.num(), &f.den()})
    if (p->degree() > 0)
      for (auto& [v, e] : factor(*p, seed))
        if (e % 2) g = g * v;
  sc.g = g;
  sc.c = is_square_mod(f.num().lead(), q) ? 1 : least_nonsquare(q);
  sc.is_perfect_square = sc.c == 1 && g.is_one();
  return sc;
}

SplitKind splitting_in_Kf(const Place& w, const RationalFunction& f) {
  if (f.is_zero()) throw PreconditionError("splitting for f = 0");
  if (square_class_rep(f).is_perfect_square) throw PreconditionError("f is a perfect square; no quadratic extension");
  int o = ord_at(f, w);
  if (o % 2 != 0) return SplitKind::Ramified;
  return is_square(unit_residue_at(f, w)) ? SplitKind::Split : SplitKind::Inert;
}

int constant_field_degree(const RationalFunction& f) {
  SquareClass sc = square_class_rep(f);
  if (sc.is_perfect_square) throw PreconditionError("f is a perfect square; no quadratic extension");
  return sc.g.is_one() ? 2 : 1;
}

std::vector<Place> ramified_places(const SquareClass& sc, u64 seed) {
  std::vector<Place> out;
  if (sc.g.degree() > 0)
    for (auto& [v, e] : factor(sc.g, seed)) out.push_back(Place::finite(v));
  if (sc.g.degree() % 2 == 1) out.push_back(Place::infinity(sc.g.q()));
  std::sort(out.begin(), out.end(), place_less);
  return out;
}

std::optional<RationalFunction> rational_sqrt(const RationalFunction& r, u64 seed) {
  u32 q = r.q();
  if (r.is_zero()) return r;
  if (!is_square_mod(r.num().lead(), q)) return std::nullopt;
  Poly n = Poly::constant(q, sqrt_mod(r.num().lead(), q)), d = Poly::constant(q, 1);
  for (int side = 0; side < 2; ++side) {
    const Poly& p = side == 0 ? r.num() : r.den();
    if (p.degree() <= 0) continue;
    for (auto& [v, e] : factor(p, seed)) {
      if (e % 2) return std::nullopt;
      (side == 0 ? n : d) = (side == 0 ? n : d) * pow(v, unsigned(e / 2));
    }
  }
  return RationalFunction(n, d);
}

namespace {

std::vector<Poly> monic_divisors(const Poly& p, u64 seed) {
  std::vector<Poly> out{Poly::constant(p.q(), 1)};
  if (p.degree() <= 0) return out;
  for (auto& [v, e] : factor(p, seed)) {
    std::size_t n = out.size();
    Poly pw = Poly::constant(p.q(), 1);
    for (int k = 1; k <= e; ++k) {
      pw = pw * v;
      for (std::size_t i = 0; i < n; ++i) out.push_back(out[i] * pw);
    }
  }
  return out;
}

Poly horner(const std::vector<Poly>& c, const Poly& a, const Poly& b) {
  // Homogenized evaluation: sum c_i a^i b^(n-i).
  std::size_t n = c.size() - 1;
  Poly r = c[n];
  Poly bp = Poly::constant(a.q(), 1);
  for (std::size_t i = n; i-- > 0;) {
    bp = bp * b;
    r = r * a + c[i] * bp;
  }
  return r;
}

}  // namespace

std::vector<RationalFunction> rational_roots(const std::vector<RationalFunction>& coeffs, u64 seed) {
  require(!coeffs.empty(), "empty polynomial");
  u32 q = coeffs.front().q();
  Poly l = Poly::constant(q, 1);
  for (auto& c : coeffs) l = l * (c.den() / gcd(l, c.den()));
  std::vector<Poly> c;
  for (auto& x : coeffs) c.push_back(x.num() * (l / x.den()));
  while (!c.empty() && c.back().is_zero()) c.pop_back();
  require(!c.empty(), "rational_roots of the zero polynomial");
  std::vector<RationalFunction> roots;
  if (c.size() == 1) return roots;
  if (c.front().is_zero()) {
    roots.push_back(RationalFunction(q));
    while (c.front().is_zero()) c.erase(c.begin());
  }
  if (c.size() > 1) {
    auto nums = monic_divisors(c.front(), seed);
    auto dens = monic_divisors(c.back(), seed);
    for (auto& b : dens)
      for (auto& a0 : nums) {
        if (gcd(a0, b).degree() > 0) continue;
        for (u32 u = 1; u < q; ++u) {
          Poly a = a0.scaled(u);
          if (horner(c, a, b).is_zero()) roots.emplace_back(a, b);
        }
      }
  }
  std::sort(roots.begin(), roots.end(), rf_less);
  return roots;
}

}  // namespace ellfq
