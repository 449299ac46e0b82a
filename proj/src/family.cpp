// Copyright 2026 The ellfq Authors
// SPDX-License-Identifier: Apache-2.0

#include "ellfq/family.hpp"

#include <algorithm>

namespace ellfq {

namespace {

void insert_sorted(std::vector<int>& v, int x) {
  if (std::find(v.begin(), v.end(), x) == v.end()) {
    v.push_back(x);
    std::sort(v.begin(), v.end());
  }
}

i64 eval_mod3(const std::vector<i64>& c, i64 x) {
  i64 r = 0;
  for (std::size_t i = c.size(); i-- > 0;) r = ((r * x + c[i]) % 3 + 3) % 3;
  return r;
}

std::vector<i64> residues_mod(const std::vector<i64>& c, i64 N) {
  std::vector<i64> out;
  for (i64 x : c) out.push_back(((x % N) + N) % N);
  return out;
}

// Highest L-degree over the parameters of degree <= max_degree.
int max_twist_degree(int max_degree) { return max_degree % 2 ? 2 * (max_degree + 1) : 2 * max_degree; }

int base_place_degree(u32 q, int l_degree, int guard) {
  return std::max(1, std::min(place_degree_budget(q), l_degree + guard));
}

}  // namespace

X13Family x13_curve(u32 q) {
  require(is_prime(q) && (q % 12 == 5 || q % 12 == 11), "q must be a prime congruent to 5 or 11 mod 12");
  RationalFunction z(q);
  CurveOverFqT E(RationalFunction::constant(q, 3), z, RationalFunction(Poly::from_ints(q, {1, 0, 0, -1})), z, z);
  X13Family X{E, TorsionWitness{3, {Point::affine(z, z)}}, {}, {}, {}, false, {}};
  verify_torsion_witness(E, X.witness);
  for (const auto& w : bad_places(E)) {
    ReductionType rt = reduction_type_at(E, w);
    if (rt.kind == Reduction::MultSplit) X.split_multiplicative.push_back(w);
    if (rt.kind == Reduction::MultNonsplit) X.nonsplit_multiplicative.push_back(w);
    if (rt.is_additive()) X.additive.push_back(w);
  }
  X.good_at_infinity = reduction_type_at(E, Place::infinity(q)).is_good();
  X.L = naive_L(E).L;
  return X;
}

bool jac3_trivial(const RationalFunction& f, u32 q) {
  require(q % 3 == 2, "q must be -1 mod 3");
  SquareClass sc = square_class_rep(f);
  require(!sc.is_perfect_square, "f is a square");
  const std::vector<i64>& c = hyperelliptic_L(sc, q).L.coeffs;
  return eval_mod3(c, 1) != 0 && eval_mod3(c, -1) != 0;
}

std::vector<Poly> family_parameters(u32 q, int max_degree) {
  require(max_degree >= 1, "degree bound must be positive");
  // Discriminant of the family up to constants and cubes: t (t - 1)(t^2 + t + 1) = t^4 - t.
  Poly delta = Poly::from_ints(q, {0, -1, 0, 0, 1});
  std::vector<Poly> out;
  for (int d = 1; d <= max_degree; ++d) {
    u64 total = 1;
    for (int i = 0; i < d; ++i) total *= q;
    for (u64 idx = 0; idx < total; ++idx) {
      std::vector<u32> c(std::size_t(d) + 1, 0);
      u64 x = idx;
      for (int i = 0; i < d; ++i, x /= q) c[std::size_t(i)] = u32(x % q);
      c[std::size_t(d)] = 1;
      Poly f(q, c);
      if (is_squarefree(f) && gcd(f, delta).is_one()) out.push_back(f);
    }
  }
  std::sort(out.begin(), out.end(), poly_less);
  return out;
}

FamilyRow family_row(const X13Family& X, const Poly& f, const FamilyOptions& opt) {
  FamilyContext ctx{&X, std::nullopt};
  return family_row(ctx, f, opt);
}

FamilyRow family_row(FamilyContext& ctx, const Poly& f, const FamilyOptions& opt) {
  require(ctx.family != nullptr, "family context without a curve");
  const X13Family& X = *ctx.family;
  const CurveOverFqT& E = X.curve;
  const u32 q = E.q();
  require(f.q() == q, "parameter over the wrong field");
  require(f.degree() >= 1 && f.is_monic(), "f must be monic of positive degree");
  require(is_squarefree(f), "f must be squarefree");
  require(gcd(f, E.invariants().delta.num()).is_one(), "f must be coprime to the discriminant");

  FamilyRow row;
  row.f = f;
  row.f0_square = is_square_mod(f.eval(0), q);
  row.f1_square = is_square_mod(f.eval(1), q);
  RationalFunction rf(f);
  TwistDegreeData TD = twist_degree_data(classify_twist_sets(E, rf));
  row.degree = TD.degree;
  row.curve_L = hyperelliptic_L(square_class_rep(rf), q);
  row.jac3_trivial = jac3_trivial(rf, q);

  ModResult m3 = twist_L_mod(E, rf, X.witness, opt.guard);
  row.mod3 = m3.residues;
  row.epsilon = m3.epsilon;
  ensure(row.epsilon == twist_root_number(TD, q, 3), "root number congruence disagrees with the mod 3 expansion");

  RatioResult r2 = ratio_mod2(E, rf, RationalFunction::constant(q, 1), row.degree + opt.guard);
  row.mod2 = r2.series.extract_polynomial(row.degree, opt.guard);

  for (const auto& w : bad_places(E)) row.bad_place_splitting.emplace_back(w, splitting_in_Kf(w, rf));
  row.a_infinity = trace_at(E, Place::infinity(q));
  int even_traces = 0;
  for (const auto& w : support(rf)) {
    if (w.is_infinity()) continue;
    i64 a = trace_at(E, w);
    row.traces_at_f.emplace_back(w, a);
    if (a % 2 == 0) ++even_traces;
  }
  // Both congruences see the factor 1 - qT as 1 + T since q is odd and q = -1 mod 3.
  row.v3 = valuation_1_plus_T(row.mod3, 3);
  row.v2 = valuation_1_plus_T(row.mod2, 2);
  row.rank_bound = std::min(row.v3, row.v2);
  if (f.degree() % 2) {
    row.factor_count_bound = 2 * even_traces + (row.a_infinity % 2 == 0 ? 2 : 0);
    row.rank_bound = std::min(row.rank_bound, row.factor_count_bound);
  }
  const int parity = row.epsilon == 1 ? 0 : 1;
  if (row.rank_bound % 2 != parity) --row.rank_bound;
  ensure(row.rank_bound >= 0, "rank bound contradicts the root number");
  if (row.rank_bound <= 1) row.rank = row.rank_bound;

  if (opt.exact) {
    const int need = base_place_degree(q, row.degree, opt.guard);
    if (!ctx.base || ctx.base->max_degree < need)
      ctx.base = collect_local_data(E, need);
    LocalData tw = twist_local_data(*ctx.base, E, rf);
    LResult ex = l_from_local_data(tw, row.degree, opt.guard, row.epsilon, LMethod::EulerProduct);
    ensure(residues_mod(ex.L.coeffs, 3) == row.mod3, "mod 3 congruence disagrees with the exact L-function");
    ensure(residues_mod(ex.L.coeffs, 2) == row.mod2, "mod 2 congruence disagrees with the exact L-function");
    const int rank = analytic_rank(ex.L);
    ensure(rank <= row.rank_bound, "analytic rank exceeds its bound");
    ensure(!row.rank || *row.rank == rank, "analytic rank differs from the forced value");
    row.rank = rank;
    row.exact = ex.L;
  }
  return row;
}

DeltaTwistReport delta_twist_report(u32 q) {
  X13Family X = x13_curve(q);
  const CurveOverFqT& E = X.curve;
  const int guard = 4;
  DeltaTwistReport rep;
  const RationalFunction& delta = E.invariants().delta;
  rep.delta_class = square_class_rep(delta);
  rep.degree = twist_degree_data(classify_twist_sets(E, delta)).degree;
  ModResult m3 = twist_L_mod(E, delta, X.witness, guard);
  rep.mod3 = m3.residues;
  rep.epsilon = m3.epsilon;
  RatioResult r2 = ratio_mod2(E, delta, RationalFunction::constant(q, 1), rep.degree + guard);
  rep.mod2 = r2.series.extract_polynomial(rep.degree, guard);
  rep.rank_bound_mod2 = valuation_1_plus_T(rep.mod2, 2);

  const std::vector<i64>& c = hyperelliptic_L(rep.delta_class, q).L.coeffs;
  std::vector<i64> prod(2 * c.size() - 1, 0);
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = 0; j < c.size(); ++j) prod[i + j] += c[i] * c[j] * (j % 2 ? -1 : 1);
  rep.curve_product_mod3 = residues_mod(prod, 3);
  while (rep.curve_product_mod3.size() > 1 && rep.curve_product_mod3.back() == 0) rep.curve_product_mod3.pop_back();
  ensure(rep.curve_product_mod3 == rep.mod3, "mod 3 congruence differs from L(T, C)L(-T, C)");

  rep.exact = naive_L(quadratic_twist(E, rep.delta_class.value()), rep.degree).L;
  ensure(rep.exact.epsilon == rep.epsilon, "root numbers disagree");
  ensure(residues_mod(rep.exact.coeffs, 3) == rep.mod3, "mod 3 congruence disagrees with the exact L-function");
  ensure(residues_mod(rep.exact.coeffs, 2) == rep.mod2, "mod 2 congruence disagrees with the exact L-function");
  return rep;
}

FamilyScan family_scan(u32 q, int max_degree, const FamilyOptions& opt) {
  X13Family X = x13_curve(q);
  FamilyScan scan;
  scan.q = q;
  scan.max_degree = max_degree;
  scan.summary.resize(4);
  for (int i = 0; i < 4; ++i) {
    scan.summary[std::size_t(i)].f0_square = i < 2;
    scan.summary[std::size_t(i)].f1_square = i % 2 == 0;
  }
  FamilyContext ctx{&X, std::nullopt};
  if (opt.exact) ctx.base = collect_local_data(X.curve, base_place_degree(q, max_twist_degree(max_degree), opt.guard));
  for (const Poly& f : family_parameters(q, max_degree)) {
    FamilyRow row = family_row(ctx, f, opt);
    FamilySummaryRow& s = scan.summary[std::size_t(row.row_index())];
    ++s.count;
    insert_sorted(s.epsilons, row.epsilon);
    if (row.jac3_trivial) {
      ++s.jac3_count;
      if (row.rank) insert_sorted(s.ranks, *row.rank);
      s.max_rank_bound = std::max(s.max_rank_bound, row.rank_bound);
    }
    scan.rows.push_back(std::move(row));
  }
  return scan;
}

}  // namespace ellfq
