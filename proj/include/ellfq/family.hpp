// Copyright 2026 The ellfq Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <vector>

#include "ellfq/lseries.hpp"

namespace ellfq {

// The universal curve with a point of order 3, y^2 + 3xy + (1 - t^3) y = x^3,
// together with everything recomputed about it.
struct X13Family {
  CurveOverFqT curve;
  TorsionWitness witness;
  std::vector<Place> split_multiplicative;
  std::vector<Place> nonsplit_multiplicative;
  std::vector<Place> additive;
  bool good_at_infinity = false;
  LPolynomial L;
};

// q prime with q = 5 or 11 mod 12.
X13Family x13_curve(u32 q);

struct FamilyOptions {
  bool exact = false;  // also compute the exact L-function of each twist
  int guard = 4;
};

struct FamilyRow {
  Poly f;
  bool f0_square = false, f1_square = false;
  int degree = 0;
  CurveL curve_L;  // numerator of the zeta function of y^2 = f
  bool jac3_trivial = false;
  std::vector<i64> mod3;
  std::vector<i64> mod2;
  int epsilon = 0;
  std::vector<std::pair<Place, SplitKind>> bad_place_splitting;  // bad places of E in K_f
  i64 a_infinity = 0;
  std::vector<std::pair<Place, i64>> traces_at_f;  // a_v for v | f
  int v3 = 0, v2 = 0;
  int factor_count_bound = -1;  // 2 #{v | f : a_v even} (+ 2 when a_inf is even); odd deg f only
  int rank_bound = 0;           // best bound, reduced to the parity of epsilon
  std::optional<int> rank;      // known when rank_bound <= 1 or from the exact L-function
  std::optional<LPolynomial> exact;
  // Dictionary order of (f(0) square, f(1) square): 0 = Yes/Yes, ..., 3 = No/No.
  int row_index() const { return (f0_square ? 0 : 2) + (f1_square ? 0 : 1); }
};

// Local data of E shared by the exact twisted L-functions of a scan.
struct FamilyContext {
  const X13Family* family = nullptr;
  std::optional<LocalData> base;
};

// f monic squarefree of positive degree, coprime to the discriminant.
FamilyRow family_row(const X13Family& X, const Poly& f, const FamilyOptions& opt = {});
FamilyRow family_row(FamilyContext& ctx, const Poly& f, const FamilyOptions& opt = {});

// True when L(1) and L(-1) of y^2 = f are both prime to 3; requires q = -1 mod 3.
bool jac3_trivial(const RationalFunction& f, u32 q);

struct DeltaTwistReport {
  SquareClass delta_class;
  int degree = 0;
  int epsilon = 0;
  std::vector<i64> mod3;
  std::vector<i64> mod2;
  std::vector<i64> curve_product_mod3;  // L(T, C)L(-T, C) mod 3 for y^2 = delta
  LPolynomial exact;
  int rank_bound_mod2 = 0;
};

DeltaTwistReport delta_twist_report(u32 q);

struct FamilySummaryRow {
  bool f0_square = false, f1_square = false;
  int count = 0;
  int jac3_count = 0;
  std::vector<int> epsilons;  // distinct values seen
  std::vector<int> ranks;     // distinct ranks seen among rows with a known rank and trivial 3-part
  int max_rank_bound = 0;
};

struct FamilyScan {
  u32 q = 0;
  int max_degree = 0;
  std::vector<FamilyRow> rows;  // canonical polynomial order
  std::vector<FamilySummaryRow> summary;  // indexed by FamilyRow::row_index
};

// Every monic squarefree f of degree 1..max_degree coprime to the discriminant.
std::vector<Poly> family_parameters(u32 q, int max_degree);
FamilyScan family_scan(u32 q, int max_degree, const FamilyOptions& opt = {});

}  // namespace ellfq
