// Copyright 2026 The ellfq Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ellfq/algebra.hpp"

namespace ellfq {

// Reduced fraction num/den over F_q with monic denominator.
class RationalFunction {
 public:
  RationalFunction() = default;
  explicit RationalFunction(u32 q) : num_(q), den_(Poly::constant(q, 1)) {}
  RationalFunction(const Poly& num);  // NOLINT(google-explicit-constructor)
  RationalFunction(const Poly& num, const Poly& den);
  static RationalFunction constant(u32 q, i64 c) { return RationalFunction(Poly::constant(q, c)); }
  static RationalFunction t(u32 q) { return RationalFunction(Poly::t(q)); }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  u32 q() const { return num_.q(); }
  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  bool is_polynomial() const { return den_.is_one(); }

  RationalFunction operator+(const RationalFunction& o) const;
  RationalFunction operator-(const RationalFunction& o) const;
  RationalFunction operator-() const;
  RationalFunction operator*(const RationalFunction& o) const;
  RationalFunction operator/(const RationalFunction& o) const;
  RationalFunction inverse() const;
  RationalFunction pow(int e) const;
  RationalFunction scaled(i64 c) const;
  bool operator==(const RationalFunction& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const RationalFunction& o) const { return !(*this == o); }

  // r(1/s) written as a fraction in s.
  RationalFunction invert_variable() const;

  std::string to_string() const;

 private:
  Poly num_;
  Poly den_;
};

bool rf_less(const RationalFunction& a, const RationalFunction& b);

class Place {
 public:
  static Place finite(const Poly& v);
  static Place infinity(u32 q);

  bool is_infinity() const { return inf_; }
  // Monic irreducible of a finite place; the chart uniformizer s for infinity.
  const Poly& poly() const { return v_; }
  int degree() const { return inf_ ? 1 : v_.degree(); }
  u32 q() const { return v_.q(); }
  // Size of the residue field.
  u64 norm() const;
  ExtFieldPtr residue_field() const;

  bool operator==(const Place& o) const { return inf_ == o.inf_ && v_ == o.v_; }
  bool operator!=(const Place& o) const { return !(*this == o); }
  std::string to_string() const;

 private:
  bool inf_ = false;
  Poly v_;
};

// Canonical order: ascending degree, finite places before infinity, then by polynomial.
bool place_less(const Place& a, const Place& b);

enum class SplitKind { Split, Inert, Ramified };
const char* to_string(SplitKind k);

// Rewrites r in the local chart of w: identity at finite places, t -> 1/s at infinity.
RationalFunction to_chart(const RationalFunction& r, const Place& w);

int ord_poly(const Poly& a, const Poly& v);
int ord_at(const RationalFunction& r, const Place& w);
ExtElem residue_at(const RationalFunction& r, const Place& w);
// Residue of a function already written in the chart variable of w.
ExtElem chart_residue_at(const RationalFunction& c, const Place& w);
// Residue of r * pi^(-ord_w r), i.e. the unit part.
ExtElem unit_residue_at(const RationalFunction& r, const Place& w);

// Every place where r has a zero or pole, canonical order; infinity included when ord is nonzero.
std::vector<Place> support(const RationalFunction& r, u64 seed = kDefaultSeed);

struct SquareClass {
  u32 c = 1;  // 1 or least_nonsquare(q)
  Poly g;     // monic squarefree
  bool is_perfect_square = false;
  RationalFunction value() const;
};

SquareClass square_class_rep(const RationalFunction& f, u64 seed = kDefaultSeed);
SplitKind splitting_in_Kf(const Place& w, const RationalFunction& f);
int constant_field_degree(const RationalFunction& f);

// Ramified places of K_f: divisors of g, plus infinity when deg g is odd.
std::vector<Place> ramified_places(const SquareClass& sc, u64 seed = kDefaultSeed);

std::optional<RationalFunction> rational_sqrt(const RationalFunction& r, u64 seed = kDefaultSeed);

// Roots in F_q(t) of the polynomial sum_i coeffs[i] X^i; coeffs not all zero.
std::vector<RationalFunction> rational_roots(const std::vector<RationalFunction>& coeffs, u64 seed = kDefaultSeed);

}  // namespace ellfq
