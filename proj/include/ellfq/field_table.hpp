// Copyright 2026 The ellfq Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "ellfq/algebra.hpp"

namespace ellfq {

// Log/Zech tables for F_{q^n} built on a primitive modulus. Elements are
// handled as discrete logarithms of the chosen generator; kZero stands for 0.
class FieldTable {
 public:
  static constexpr u32 kZero = 0xffffffffu;
  static constexpr u64 kMaxSize = u64(1) << 23;

  // Shared, lazily built table; safe to call from several threads.
  static const FieldTable& get(u32 q, int n);

  u32 q() const { return q_; }
  int degree() const { return n_; }
  u64 size() const { return size_; }
  u32 order() const { return order_; }
  const Poly& modulus() const { return modulus_; }

  // Index = base-q digits of the polynomial representative, constant digit first.
  u32 log_of_index(u64 index) const { return log_[index]; }
  u64 index_of_log(u32 l) const { return l == kZero ? 0 : exp_[l]; }
  u32 log_of_base(u32 c) const { return log_[c]; }

  u32 mul(u32 a, u32 b) const {
    if (a == kZero || b == kZero) return kZero;
    u64 s = u64(a) + b;
    return u32(s >= order_ ? s - order_ : s);
  }
  u32 power(u32 a, u64 e) const;
  // Requires a nonzero argument.
  u32 inv(u32 a) const { return a == 0 ? 0 : order_ - a; }
  u32 div(u32 a, u32 b) const { return mul(a, inv(b)); }
  u32 neg(u32 a) const { return a == kZero ? kZero : mul(a, order_ / 2); }
  u32 add(u32 a, u32 b) const {
    if (a == kZero) return b;
    if (b == kZero) return a;
    u32 d = b >= a ? b - a : b + order_ - a;
    u32 z = zech_[d];
    return z == kZero ? kZero : mul(a, z);
  }
  u32 sub(u32 a, u32 b) const { return add(a, neg(b)); }
  // Quadratic character: 0 at zero, +1 on squares, -1 otherwise.
  int chi(u32 a) const { return a == kZero ? 0 : (a % 2 == 0 ? 1 : -1); }

  // p(x) for p over F_q.
  u32 eval(const Poly& p, u32 x) const;

  // Size of the Frobenius orbit of the element with log l.
  int orbit_size(u32 l) const;
  // True when l is the least log in its Frobenius orbit.
  bool is_orbit_min(u32 l) const;
  // One log per element of exact degree n over F_q (zero included when n = 1).
  std::vector<u32> orbit_representatives() const;
  // Minimal polynomial over F_q of the element with log l.
  Poly minimal_polynomial(u32 l) const;

 private:
  FieldTable(u32 q, int n);
  u32 q_;
  int n_;
  u64 size_;
  u32 order_;
  Poly modulus_;
  std::vector<u32> exp_, log_, zech_;
};

// Least monic polynomial of degree n whose root generates F_{q^n}^*.
Poly primitive_polynomial(u32 q, int n);

}  // namespace ellfq
