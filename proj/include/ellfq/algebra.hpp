// Copyright 2026 The ellfq Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "ellfq/errors.hpp"

namespace ellfq {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;

inline constexpr u64 kDefaultSeed = 0x5eed'f00d'cafe'1234ULL;

bool is_prime(u64 n);

// Throws PreconditionError unless q is a prime with q >= 5.
void check_modulus(u64 q);

inline u32 add_mod(u32 a, u32 b, u32 q) {
  u64 s = u64(a) + b;
  return u32(s >= q ? s - q : s);
}
inline u32 sub_mod(u32 a, u32 b, u32 q) { return a >= b ? a - b : u32(u64(a) + q - b); }
inline u32 mul_mod(u32 a, u32 b, u32 q) { return u32((u64(a) * b) % q); }
inline u32 neg_mod(u32 a, u32 q) { return a == 0 ? 0 : q - a; }
u32 pow_mod(u32 a, u64 e, u32 q);
u32 inv_mod(u32 a, u32 q);
// Least non-negative residue of a signed integer.
u32 reduce_signed(i64 a, u32 q);

bool is_square_mod(u32 a, u32 q);
// Square root in F_q; requires is_square_mod(a, q).
u32 sqrt_mod(u32 a, u32 q);
// Least positive residue that is not a square in F_q.
u32 least_nonsquare(u32 q);

class FieldElem {
 public:
  FieldElem() = default;
  FieldElem(i64 value, u32 q) : v_(reduce_signed(value, q)), q_(q) {}

  u32 value() const { return v_; }
  u32 q() const { return q_; }
  bool is_zero() const { return v_ == 0; }

  FieldElem operator+(const FieldElem& o) const { return raw(add_mod(v_, o.v_, q_)); }
  FieldElem operator-(const FieldElem& o) const { return raw(sub_mod(v_, o.v_, q_)); }
  FieldElem operator*(const FieldElem& o) const { return raw(mul_mod(v_, o.v_, q_)); }
  FieldElem operator-() const { return raw(neg_mod(v_, q_)); }
  FieldElem inverse() const;
  FieldElem operator/(const FieldElem& o) const { return *this * o.inverse(); }
  FieldElem pow(u64 e) const { return raw(pow_mod(v_, e, q_)); }
  bool operator==(const FieldElem& o) const { return v_ == o.v_ && q_ == o.q_; }

 private:
  FieldElem raw(u32 v) const {
    FieldElem r;
    r.v_ = v;
    r.q_ = q_;
    return r;
  }
  u32 v_ = 0;
  u32 q_ = 0;
};

bool is_square(const FieldElem& e);

class ExtElem;

// Dense polynomial over F_q, ascending coefficients, no trailing zeros.
class Poly {
 public:
  Poly() = default;
  explicit Poly(u32 q) : q_(q) {}
  Poly(u32 q, std::vector<u32> coeffs);
  static Poly from_ints(u32 q, const std::vector<i64>& coeffs);
  static Poly constant(u32 q, i64 c);
  static Poly monomial(u32 q, i64 c, unsigned n);
  static Poly t(u32 q) { return monomial(q, 1, 1); }

  u32 q() const { return q_; }
  int degree() const { return int(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
  bool is_constant() const { return c_.size() <= 1; }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }
  u32 lead() const { return c_.empty() ? 0 : c_.back(); }
  u32 coeff(std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
  const std::vector<u32>& coeffs() const { return c_; }

  Poly monic() const;
  Poly derivative() const;
  Poly scaled(u32 c) const;
  Poly shifted(unsigned n) const;
  // t^n * p(1/t); requires n >= degree.
  Poly reversed(int n) const;
  u32 eval(u32 x) const;
  ExtElem eval(const ExtElem& x) const;

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator-() const;
  Poly operator*(const Poly& o) const;
  Poly operator/(const Poly& o) const;
  Poly operator%(const Poly& o) const;
  bool operator==(const Poly& o) const { return q_ == o.q_ && c_ == o.c_; }
  bool operator!=(const Poly& o) const { return !(*this == o); }

  std::string to_string(const std::string& var = "t") const;

 private:
  void trim();
  u32 q_ = 0;
  std::vector<u32> c_;
};

// Canonical order: by degree, then coefficients from the top down.
bool poly_less(const Poly& a, const Poly& b);

struct DivRem {
  Poly quot;
  Poly rem;
};

DivRem divrem(const Poly& a, const Poly& b);
Poly gcd(const Poly& a, const Poly& b);

struct ExtendedGcd {
  Poly g;
  Poly s;
  Poly t;
};
// g = s*a + t*b with g monic (or zero).
ExtendedGcd xgcd(const Poly& a, const Poly& b);

Poly pow(const Poly& base, unsigned e);
Poly powmod(const Poly& base, u64 e, const Poly& m);

using Factorization = std::vector<std::pair<Poly, int>>;

// Monic irreducible factors with multiplicity, in canonical order.
Factorization factor(const Poly& a, u64 seed = kDefaultSeed);
bool is_irreducible(const Poly& a);
bool is_squarefree(const Poly& a);

int mobius(u64 n);
u64 necklace_count(u32 q, int d);

// Calls fn on each monic irreducible of degree d in canonical order; stops when fn returns false.
void for_each_monic_irreducible(u32 q, int d, const std::function<bool(const Poly&)>& fn);
std::vector<Poly> monic_irreducibles(u32 q, int d);

// F_q[t]/(m) for a monic irreducible m.
class ExtField {
 public:
  static std::shared_ptr<const ExtField> make(const Poly& modulus);

  const Poly& modulus() const { return m_; }
  u32 q() const { return m_.q(); }
  int degree() const { return m_.degree(); }
  u64 size() const { return size_; }

 private:
  explicit ExtField(Poly m, u64 size) : m_(std::move(m)), size_(size) {}
  Poly m_;
  u64 size_;
};

using ExtFieldPtr = std::shared_ptr<const ExtField>;

class ExtElem {
 public:
  ExtElem() = default;
  ExtElem(ExtFieldPtr field, const Poly& rep);
  static ExtElem from_int(ExtFieldPtr field, i64 c);
  // The element with index i in base-q digit order (coefficient 0 least significant).
  static ExtElem from_index(ExtFieldPtr field, u64 index);

  const Poly& rep() const { return rep_; }
  const ExtFieldPtr& field() const { return field_; }
  bool is_zero() const { return rep_.is_zero(); }
  bool is_one() const { return rep_.is_one(); }

  ExtElem operator+(const ExtElem& o) const;
  ExtElem operator-(const ExtElem& o) const;
  ExtElem operator-() const;
  ExtElem operator*(const ExtElem& o) const;
  ExtElem inverse() const;
  ExtElem operator/(const ExtElem& o) const { return *this * o.inverse(); }
  ExtElem pow(u64 e) const;
  ExtElem frobenius() const { return pow(field_->q()); }
  bool operator==(const ExtElem& o) const;
  bool operator!=(const ExtElem& o) const { return !(*this == o); }

 private:
  ExtFieldPtr field_;
  Poly rep_;
};

// Euler criterion in the field of the element.
bool is_square(const ExtElem& e);

}  // namespace ellfq
