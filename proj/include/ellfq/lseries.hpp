// Copyright 2026 The ellfq Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ellfq/curve.hpp"

namespace ellfq {

// Power series truncated after T^precision, over Z (modulus 0) or Z/NZ.
// Residues are kept in [0, N); integer arithmetic is overflow-checked.
class TruncSeries {
 public:
  TruncSeries() = default;
  TruncSeries(i64 modulus, int precision);
  static TruncSeries one(i64 modulus, int precision);
  static TruncSeries from_coeffs(i64 modulus, int precision, const std::vector<i64>& coeffs);

  i64 modulus() const { return modulus_; }
  int precision() const { return int(c_.size()) - 1; }
  const std::vector<i64>& coeffs() const { return c_; }
  i64 operator[](int i) const { return i >= 0 && i <= precision() ? c_[std::size_t(i)] : 0; }

  TruncSeries operator+(const TruncSeries& o) const;
  TruncSeries operator-(const TruncSeries& o) const;
  TruncSeries operator*(const TruncSeries& o) const;
  bool operator==(const TruncSeries& o) const { return modulus_ == o.modulus_ && c_ == o.c_; }

  // Requires a unit constant term.
  TruncSeries inverse() const;
  TruncSeries truncated(int precision) const;
  TruncSeries reduced(i64 modulus) const;
  // S(c T).
  TruncSeries scaled_variable(i64 c) const;
  // Multiply or divide in place by a sparse polynomial sum_k p[k] T^(k*step) with p[0] = 1.
  void mul_sparse(const std::vector<i64>& p, int step = 1);
  void div_sparse(const std::vector<i64>& p, int step = 1);

  // Coefficients 0..degree; every coefficient from degree + 1 to degree + guard must vanish.
  std::vector<i64> extract_polynomial(int degree, int guard) const;

 private:
  i64 norm(__int128 x) const;
  i64 modulus_ = 0;
  std::vector<i64> c_;
};

struct LPolynomial {
  u32 q = 0;
  i64 modulus = 0;  // 0 for an exact polynomial
  std::vector<i64> coeffs;
  int epsilon = 0;  // +1 or -1; 0 when not known
  int degree() const { return int(coeffs.size()) - 1; }
  bool operator==(const LPolynomial& o) const {
    return q == o.q && modulus == o.modulus && coeffs == o.coeffs && epsilon == o.epsilon;
  }
};

// C(d, n) q^n.
i64 coefficient_bound(u32 q, int d, int n);
// Leading coefficient law, coefficient bounds and functional equation of an exact L-polynomial.
std::vector<std::string> lpolynomial_violations(const LPolynomial& L);
std::string to_string(const LPolynomial& L);

// 1/((1 - T)(1 - qT)).
TruncSeries zeta_P1(u32 q, int precision, i64 modulus = 0);

struct CurveL {
  LPolynomial L;
  int genus = 0;
  bool constant_extension = false;
};

// Numerator of the zeta function of y^2 = c g(t).
CurveL hyperelliptic_L(const SquareClass& f, u32 q);
// Euler product of the quadratic character of K_f over places of degree <= precision.
TruncSeries artin_L(const RationalFunction& f, int precision, i64 modulus = 0);
// L(T, chi) as a series, from the curve numerator (1/((1+T)(1+qT)) for a constant extension).
TruncSeries artin_L_series(const CurveL& c, int precision, i64 modulus = 0);

// Euler factor of E at w as a dense polynomial in T.
std::vector<i64> local_factor(const CurveOverFqT& E, const Place& w,
                              TraceConvention conv = TraceConvention::Standard);

// Traces of Frobenius at every place of degree <= max_degree. Places special for the
// curve are kept with their reduction type; the others are stored per degree as
// (root log in the degree-n field table, trace).
struct SweepEntry {
  u32 root = 0;
  i64 trace = 0;
};

struct SpecialPlace {
  Place place;
  ReductionType type;
  i64 trace = 0;
};

struct LocalData {
  u32 q = 0;
  int max_degree = 0;
  std::vector<std::vector<SweepEntry>> generic;  // index n = 1..max_degree
  std::vector<SpecialPlace> special;
  u64 residue_fields = 0;  // places whose residue field was visited
  u64 places() const;
};

LocalData collect_local_data(const CurveOverFqT& E, int max_degree,
                             TraceConvention conv = TraceConvention::Standard);
// Local data of E_f reusing the traces of E at places special for neither curve.
LocalData twist_local_data(const LocalData& base, const CurveOverFqT& E, const RationalFunction& f,
                           TraceConvention conv = TraceConvention::Standard);

// Product of the inverse Euler factors over the sweep, exact, to the sweep degree.
TruncSeries euler_product(const LocalData& data);
// Power sums b_1..b_m of the reciprocal roots attached to the sweep.
std::vector<i64> baig_hall_power_sums(const LocalData& data, int m);

// Largest place degree whose sweep costs at most `work` field operations.
int place_degree_budget(u32 q, double work = 1.2e8);

struct EulerOptions {
  int guard = 4;
  int max_place_degree = 0;  // 0 selects the budget
  TraceConvention convention = TraceConvention::Standard;
};

struct LResult {
  LPolynomial L;
  int place_degree = 0;   // largest place degree enumerated
  bool completed = false;  // high coefficients filled in by the functional equation
  std::string epsilon_source;
  u64 residue_fields = 0;
};

enum class LMethod { EulerProduct, BaigHall };

// degree < 0 uses l_degree(E).
LResult naive_L(const CurveOverFqT& E, int degree = -1, const EulerOptions& opt = {});
LResult baig_hall_L(const CurveOverFqT& E, int degree = -1, const EulerOptions& opt = {});
// Shared back end: coefficients up to data.max_degree, completion by the functional equation.
// root_number is consulted only when no coefficient fixes the sign.
LResult l_from_local_data(const LocalData& data, int degree, int guard, int root_number, LMethod method);

struct ModResult {
  i64 modulus = 0;
  int degree = 0;
  TruncSeries series;
  std::vector<i64> residues;
  int epsilon = 0;  // read from the leading residue when N >= 3
  LPolynomial as_lpolynomial(u32 q) const;
};

ModResult hall_L_mod(const CurveOverFqT& E, const TorsionWitness& W, int guard = 4);

// Factor used for places ramified in K_f over which E_f has good reduction.
// Derived: the inverse Euler factor of E_f there. Stated: the printed product with (1 + T^d).
enum class GammaVariant { Derived, Stated };
// Derived: conductor bookkeeping of E over K_f, additive places included.
// Printed: the closed forms as usually quoted, which agree when E is semistable.
enum class TwistFormula { Derived, Printed };

struct TwistDegreeData {
  int constant_field_degree = 1;
  int degree = 0;          // from the derived formula
  int printed_degree = 0;  // from the printed formula
  int ram_degree = 0;
  int deg_M_unr = 0, deg_A_unr = 0, deg_A_ram_gd = 0, deg_A_ram_m = 0;
  int n_Msp_split = 0, n_Msp_unr = 0, n_Mns_inert = 0, n_A_ram_sp = 0;
};

struct DegreeData {
  int conductor_degree = 0;
  int degree = 0;
};

DegreeData degree_data(const CurveOverFqT& E);
TwistDegreeData twist_degree_data(const TwistPartition& P);
// The root number of E_f from the congruence modulo N >= 3.
int twist_root_number(const TwistDegreeData& D, u32 q, int N, TwistFormula formula = TwistFormula::Derived);

// N = 2 uses Z(T)^2 times (1 - T^d) over M_f and (1 - T^d)^2 over every additive place of E_f,
// and is checked against the general formula.
ModResult twist_L_mod(const CurveOverFqT& E, const RationalFunction& f, const TorsionWitness& W, int guard = 4,
                      GammaVariant gamma = GammaVariant::Derived);

struct RatioResult {
  TruncSeries series;      // L(E_f1)/L(E_f2) mod 2
  bool closed_form = false;
  u64 residue_fields = 0;  // point counts performed
  std::vector<Place> places;  // places outside U_{f1,f2} that were used
};

RatioResult ratio_mod2(const CurveOverFqT& E, const RationalFunction& f1, const RationalFunction& f2,
                       int precision);

// L for odd analytic rank from a_0..a_{d-2}.
LPolynomial odd_rank_completion(const std::vector<i64>& partial, u32 q, int d);

struct ResidueBundle {
  i64 modulus = 0;
  std::vector<i64> residues;
};

struct Reconstruction {
  bool determined = false;
  LPolynomial L;
  i64 modulus = 0;                        // product of the moduli
  std::vector<std::vector<i64>> candidates;  // per coefficient when undetermined
  std::vector<u64> candidate_counts;
  bool truncated = false;                 // some candidate list was cut at kMaxCandidates
  static constexpr std::size_t kMaxCandidates = 4096;
};

// epsilon = 0 when unknown.
Reconstruction crt_reconstruct(const std::vector<ResidueBundle>& residues, int d, u32 q, int epsilon = 0,
                               bool odd_rank = false);

// Multiplicity of (1 - qT) in L.
int analytic_rank(const LPolynomial& L);

// (1 + T)-adic valuation of the image of a polynomial in (Z/ell)[T], ell prime.
int valuation_1_plus_T(const std::vector<i64>& p, i64 ell);
int valuation_1_plus_T_mod3(const std::vector<i64>& p);

}  // namespace ellfq
