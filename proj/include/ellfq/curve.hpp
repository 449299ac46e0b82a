// Copyright 2026 The ellfq Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "ellfq/function_field.hpp"

namespace ellfq {

struct Invariants {
  RationalFunction b2, b4, b6, b8, c4, c6, delta, j;
};

// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over F_q(t), with nonconstant j.
class CurveOverFqT {
 public:
  CurveOverFqT(const RationalFunction& a1, const RationalFunction& a2, const RationalFunction& a3,
               const RationalFunction& a4, const RationalFunction& a6);
  static CurveOverFqT short_form(const RationalFunction& A, const RationalFunction& B);

  u32 q() const { return a_[0].q(); }
  const RationalFunction& a1() const { return a_[0]; }
  const RationalFunction& a2() const { return a_[1]; }
  const RationalFunction& a3() const { return a_[2]; }
  const RationalFunction& a4() const { return a_[3]; }
  const RationalFunction& a6() const { return a_[4]; }
  const Invariants& invariants() const { return inv_; }
  // Short form y^2 = x^3 + A x + B with A = -27 c4, B = -54 c6.
  const RationalFunction& A() const { return A_; }
  const RationalFunction& B() const { return B_; }

 private:
  RationalFunction a_[5];
  Invariants inv_;
  RationalFunction A_, B_;
};

Invariants compute_invariants(const RationalFunction& a1, const RationalFunction& a2, const RationalFunction& a3,
                              const RationalFunction& a4, const RationalFunction& a6);

struct Kodaira {
  enum class Family { I, Istar, II, III, IV, IVstar, IIIstar, IIstar };
  Family family = Family::I;
  int n = 0;
  bool operator==(const Kodaira& o) const { return family == o.family && n == o.n; }
  std::string to_string() const;
};

enum class Reduction { Good, MultSplit, MultNonsplit, Additive };
enum class Potential { None, Good, MultSplit, MultNonsplit };

struct ReductionType {
  Reduction kind = Reduction::Good;
  Kodaira kodaira;
  Potential potential = Potential::None;
  bool is_good() const { return kind == Reduction::Good; }
  bool is_multiplicative() const { return kind == Reduction::MultSplit || kind == Reduction::MultNonsplit; }
  bool is_additive() const { return kind == Reduction::Additive; }
};

const char* to_string(Reduction r);
const char* to_string(Potential p);

// Integral minimal short model at a place, written in the local chart variable.
struct LocalModel {
  RationalFunction A, B;
  int shift = 0;
  int ord_A = 0, ord_B = 0, ord_delta = 0;  // kNoOrder when the coefficient vanishes
};

inline constexpr int kNoOrder = 1 << 28;

LocalModel minimal_model_at(const CurveOverFqT& E, const Place& w);
ReductionType reduction_type_at(const CurveOverFqT& E, const Place& w);
Kodaira kodaira_symbol_at(const CurveOverFqT& E, const Place& w);

// Kodaira symbol after a ramified quadratic twist.
Kodaira twisted_kodaira(const Kodaira& k);

CurveOverFqT quadratic_twist(const CurveOverFqT& E, const RationalFunction& f);

// Places of bad reduction in canonical order.
std::vector<Place> bad_places(const CurveOverFqT& E);
// Places dividing the discriminant or a coefficient denominator, plus infinity.
std::vector<Place> special_places(const CurveOverFqT& E);
int conductor_degree(const CurveOverFqT& E);
// 2(2g - 2) + deg N with g = 0.
int l_degree(const CurveOverFqT& E);

// Number of points of the reduction over k_w; requires good reduction.
i64 point_count(const CurveOverFqT& E, const Place& w);

// Standard: split multiplicative trace +1, nonsplit -1.
// SplitNegative: the opposite assignment, kept for cross-checking.
enum class TraceConvention { Standard, SplitNegative };

i64 trace_at(const CurveOverFqT& E, const Place& w, TraceConvention conv = TraceConvention::Standard);
i64 trace_of_type(const ReductionType& rt, TraceConvention conv);

// alpha^j + beta^j for the roots of X^2 - a X + Q.
i64 trace_power(i64 a, i64 Q, int j);

struct Point {
  bool infinity = true;
  RationalFunction x, y;
  static Point at_infinity() { return Point{}; }
  static Point affine(const RationalFunction& x, const RationalFunction& y) { return Point{false, x, y}; }
  bool operator==(const Point& o) const {
    return infinity == o.infinity && (infinity || (x == o.x && y == o.y));
  }
};

bool on_curve(const CurveOverFqT& E, const Point& P);
Point negate(const CurveOverFqT& E, const Point& P);
Point add(const CurveOverFqT& E, const Point& P, const Point& Q);
Point multiply(const CurveOverFqT& E, const Point& P, i64 n);

struct TorsionWitness {
  int order = 1;
  std::vector<Point> generators;
};

// Closes the generated subgroup and returns its order; throws unless it equals the claimed order.
int verify_torsion_witness(const CurveOverFqT& E, const TorsionWitness& W);
// Size of the subgroup generated by the points (closure capped at `cap` elements).
int subgroup_order(const CurveOverFqT& E, const std::vector<Point>& gens, int cap = 1000);

// Nonzero rational points of exact order 2, resp. 3.
std::vector<Point> two_torsion_points(const CurveOverFqT& E);
std::vector<Point> three_torsion_points(const CurveOverFqT& E);

enum class TwistSet { MspUnr, MnsUnr, Msplit, Minert, Mram, Aunr, Asplit, Ainert, AramSp, AramNs, AramGd, AramO, Uunr, Uram };
const char* to_string(TwistSet s);
std::vector<TwistSet> all_twist_sets();

struct TwistPlace {
  Place place;
  ReductionType e, ef;
  SplitKind split = SplitKind::Split;
  std::vector<TwistSet> sets() const;
};

struct TwistPartition {
  SquareClass square_class;
  std::vector<TwistPlace> places;
  std::vector<Place> members(TwistSet s) const;
  int count(TwistSet s) const;
  int degree(TwistSet s) const;
};

TwistPartition classify_twist_sets(const CurveOverFqT& E, const RationalFunction& f);
// Descriptions of every place violating the unramified or ramified twist rules.
std::vector<std::string> twist_rule_violations(const TwistPartition& P);
// Descriptions of additive places incompatible with a subgroup of the given order.
std::vector<std::string> torsion_kodaira_violations(const CurveOverFqT& E, const TorsionWitness& W);

// Local root numbers for residue characteristic >= 5.
int local_root_number(const CurveOverFqT& E, const Place& w);
int global_root_number(const CurveOverFqT& E);

}  // namespace ellfq
