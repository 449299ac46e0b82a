// Copyright 2026 The ellfq Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <vector>

#include "ellfq/curve.hpp"

namespace fixtures {

using namespace ellfq;

inline Poly P(u32 q, std::vector<i64> c) { return Poly::from_ints(q, c); }
inline RationalFunction R(u32 q, std::vector<i64> n, std::vector<i64> d = {1}) {
  return RationalFunction(P(q, n), P(q, d));
}

// y^2 + 3xy + (1 - t^3) y = x^3.
inline CurveOverFqT x13(u32 q) {
  RationalFunction z(q);
  return CurveOverFqT(R(q, {3}), z, R(q, {1, 0, 0, -1}), z, z);
}

// Tate normal form y^2 + (1 - a) xy - b y = x^3 - b x^2 with b = a + a^2,
// a = (10 - 2f)/(f^2 - 9), over F_5; (0,0) has order 6.
inline CurveOverFqT order12_curve(const RationalFunction& f) {
  u32 q = f.q();
  RationalFunction a = (RationalFunction::constant(q, 10) - f.scaled(2)) / (f * f - RationalFunction::constant(q, 9));
  RationalFunction b = RationalFunction::constant(q, -2) * (f - RationalFunction::constant(q, 1)).pow(2) *
                       (f - RationalFunction::constant(q, 5)) / (f * f - RationalFunction::constant(q, 9)).pow(2);
  RationalFunction z(q);
  return CurveOverFqT(RationalFunction::constant(q, 1) - a, -b, -b, z, z);
}

// The three admissible parameters P, 1/Q, P/Q over F_5.
inline std::vector<RationalFunction> order12_parameters() {
  return {R(5, {0, 1}), R(5, {1}, {1, 1}), R(5, {0, 1}, {1, 1})};
}

// y^2 + xy + (f^2 + f + 1)/(3 (f + 2)^3) y = x^3 over F_7 with f = t.
inline CurveOverFqT z3z3_curve() {
  u32 q = 7;
  RationalFunction f = R(q, {0, 1});
  RationalFunction a3 = (f * f + f + RationalFunction::constant(q, 1)) /
                        ((f + RationalFunction::constant(q, 2)).pow(3).scaled(3));
  RationalFunction z(q);
  return CurveOverFqT(R(q, {1}), z, a3, z, z);
}

// Witness built from (0,0) and extra points of order 2 or 3 not in its span.
inline TorsionWitness witness_with(const CurveOverFqT& E, std::vector<Point> gens, const std::vector<Point>& extra,
                                   int target) {
  for (auto& p : extra) {
    if (subgroup_order(E, gens, target) == target) break;
    std::vector<Point> g2 = gens;
    g2.push_back(p);
    int n = subgroup_order(E, g2, target);
    if (n <= target && n > subgroup_order(E, gens, target)) gens = g2;
  }
  return TorsionWitness{subgroup_order(E, gens, target), gens};
}

inline TorsionWitness order12_witness(const CurveOverFqT& E) {
  Point o = Point::affine(RationalFunction(E.q()), RationalFunction(E.q()));
  return witness_with(E, {o}, two_torsion_points(E), 12);
}

inline TorsionWitness z3z3_witness(const CurveOverFqT& E) {
  Point o = Point::affine(RationalFunction(E.q()), RationalFunction(E.q()));
  return witness_with(E, {o}, three_torsion_points(E), 9);
}

inline TorsionWitness x13_witness(const CurveOverFqT& E) {
  return TorsionWitness{3, {Point::affine(RationalFunction(E.q()), RationalFunction(E.q()))}};
}

}  // namespace fixtures
