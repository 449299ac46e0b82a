// Copyright 2026 The ellfq Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>
#include <map>

#include "ellfq/family.hpp"
#include "fixtures.hpp"

using namespace ellfq;
using namespace fixtures;

namespace {

using IPoly = std::vector<i64>;

IPoly mul_mod(const IPoly& a, const IPoly& b, i64 N) {
  IPoly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = ((c[i + j] + a[i] * b[j]) % N + N) % N;
  while (c.size() > 1 && c.back() == 0) c.pop_back();
  return c;
}

IPoly product_mod(const std::vector<IPoly>& fs, i64 N) {
  IPoly r{1};
  for (const auto& f : fs) r = mul_mod(r, f, N);
  return r;
}

IPoly negate_variable(IPoly a) {
  for (std::size_t i = 1; i < a.size(); i += 2) a[i] = -a[i];
  return a;
}

// Expected residue factors R(T) mod 3, one per (f(0) square, f(1) square) row.
const std::vector<IPoly> kMod3Rows = {
    product_mod({{1, -1}, {1, 1}, {1, 0, 1}}, 3),
    product_mod({{1, -1}, {1, -1}, {1, 0, 1}}, 3),
    product_mod({{1, -1}, {1, 1}, {1, 1}, {1, 1}}, 3),
    product_mod({{1, -1}, {1, 1}, {1, 0, 1}}, 3),
};
const int kRootNumberRows[4] = {1, 1, -1, -1};

int alpha(const FamilyRow& r, const Poly& v) {
  for (const auto& [w, s] : r.bad_place_splitting)
    if (!w.is_infinity() && w.poly() == v) return s == SplitKind::Split ? -1 : 1;
  FAIL("bad place missing");
  return 0;
}

struct Alphas {
  int t, t1, quad;
};

Alphas alphas(const FamilyRow& r) {
  u32 q = r.f.q();
  return {alpha(r, P(q, {0, 1})), alpha(r, P(q, {-1, 1})), alpha(r, P(q, {1, 1, 1}))};
}

// Points on the smooth model of y^2 = f for cubic f; one point at infinity.
i64 cubic_points(const Poly& f) {
  u32 q = f.q();
  i64 n = q + 1;
  for (u32 x = 0; x < q; ++x) {
    u32 v = f.eval(x);
    if (v) n += is_square_mod(v, q) ? 1 : -1;
  }
  return n;
}

}  // namespace

TEST_CASE("universal curve with a point of order three") {
  X13Family X = x13_curve(5);
  CHECK(verify_torsion_witness(X.curve, X.witness) == 3);
  REQUIRE(X.nonsplit_multiplicative.size() == 1);
  CHECK(X.nonsplit_multiplicative.front() == Place::finite(P(5, {0, 1})));
  REQUIRE(X.split_multiplicative.size() == 2);
  CHECK(X.split_multiplicative[0] == Place::finite(P(5, {-1, 1})));
  CHECK(X.split_multiplicative[1] == Place::finite(P(5, {1, 1, 1})));
  CHECK(X.additive.empty());
  CHECK(X.good_at_infinity);
  CHECK(X.L.coeffs == std::vector<i64>{1});
  CHECK(x13_curve(17).L.coeffs == std::vector<i64>{1});
  CHECK(x13_curve(11).L.degree() == 0);
  CHECK_THROWS_AS(x13_curve(7), PreconditionError);
  CHECK_THROWS_AS(x13_curve(13), PreconditionError);
  CHECK_THROWS_AS(x13_curve(25), PreconditionError);
}

TEST_CASE("family parameters") {
  auto fs = family_parameters(5, 2);
  // Degree one: t - a with a != 0, 1. Degree two: 20 squarefree monic, minus t(t - b), (t - 1)(t - b)
  // and t^2 + t + 1 itself: 20 - 4 - 4 + 1 - 1 = 12.
  CHECK(std::count_if(fs.begin(), fs.end(), [](const Poly& f) { return f.degree() == 1; }) == 3);
  CHECK(std::count_if(fs.begin(), fs.end(), [](const Poly& f) { return f.degree() == 2; }) == 12);
  CHECK(std::is_sorted(fs.begin(), fs.end(), poly_less));
  X13Family X = x13_curve(5);
  CHECK_THROWS_AS(family_row(X, P(5, {0, 1})), PreconditionError);
  CHECK_THROWS_AS(family_row(X, P(5, {1, 0, 1}).scaled(2)), PreconditionError);
  CHECK_THROWS_AS(family_row(X, P(5, {2, 1}) * P(5, {2, 1})), PreconditionError);
  CHECK_THROWS_AS(family_row(X, P(5, {1})), PreconditionError);
}

TEST_CASE("twists of the universal curve follow the decomposition of its bad places") {
  for (auto [q, maxd] : {std::pair<u32, int>{5, 3}, {17, 2}, {11, 2}}) {
    X13Family X = x13_curve(q);
    int consistent = 0, rows = 0;
    for (const Poly& f : family_parameters(q, maxd)) {
      FamilyRow r = family_row(X, f);
      ++rows;
      CAPTURE(f.to_string());
      const int df = f.degree();
      CHECK(r.degree == (df % 2 ? 2 * (df + 1) : 2 * df));
      Alphas a = alphas(r);
      CHECK(a.t == (is_square_mod(f.eval(0), q) ? -1 : 1));
      CHECK(a.t1 == (is_square_mod(f.eval(1), q) ? -1 : 1));
      const IPoly& c = r.curve_L.L.coeffs;
      IPoly expected = product_mod({c, negate_variable(c), {1, a.t}, {1, -a.t1}, {1, 0, a.quad}}, 3);
      CHECK(r.mod3 == expected);
      CHECK(r.epsilon == -a.t * a.t1 * a.quad);
      CHECK(r.epsilon == global_root_number(quadratic_twist(X.curve, RationalFunction(f))));
      if (a.quad == a.t1) {
        ++consistent;
        CHECK(r.epsilon == kRootNumberRows[r.row_index()]);
        IPoly row = product_mod({c, negate_variable(c), kMod3Rows[std::size_t(r.row_index())]}, 3);
        if (r.row_index() == 0) {
          // The first printed row carries 1 + T^2; the split quadratic place gives 1 - T^2.
          CHECK(r.mod3 != row);
          CHECK(r.mod3 == product_mod({c, negate_variable(c), {1, -1}, {1, 1}, {1, 0, -1}}, 3));
        } else {
          CHECK(r.mod3 == row);
        }
      }
    }
    CHECK(consistent > 0);
    CHECK(consistent < rows);
  }
}

TEST_CASE("root number table needs the quadratic place") {
  // f = t + 1: f(0) = 1 is a square, f(1) = 2 is not, yet t^2 + t + 1 splits in K_f.
  X13Family X = x13_curve(5);
  FamilyOptions opt;
  opt.exact = true;
  FamilyRow r = family_row(X, P(5, {1, 1}), opt);
  CHECK(r.row_index() == 1);
  CHECK(alphas(r).quad == -1);
  REQUIRE(r.exact);
  CHECK(r.exact->coeffs == std::vector<i64>{1, 1, 0, -25, -625});
  CHECK(r.epsilon == -1);
  CHECK(r.rank == 1);
  CHECK(r.jac3_trivial);
}

TEST_CASE("first row of the rank table allows rank two") {
  // f = t^2 + 1 over F_17: f(0), f(1) squares, t^2 + t + 1 split, trivial 3-part.
  X13Family X = x13_curve(17);
  FamilyOptions opt;
  opt.exact = true;
  FamilyRow r = family_row(X, P(17, {1, 0, 1}), opt);
  CHECK(r.row_index() == 0);
  CHECK(alphas(r).quad == alphas(r).t1);
  CHECK(r.jac3_trivial);
  REQUIRE(r.exact);
  CHECK(r.exact->coeffs == std::vector<i64>{1, -9, -272, -2601, 83521});
  // L(1/17) = 0 and L'(1/17) = 0, scaled by 17^4 and 17^3.
  const auto& a = r.exact->coeffs;
  CHECK(a[0] * 83521 + a[1] * 4913 + a[2] * 289 + a[3] * 17 + a[4] == 0);
  CHECK(a[1] * 4913 + 2 * a[2] * 289 + 3 * a[3] * 17 + 4 * a[4] == 0);
  CHECK(r.v3 == 2);
  CHECK(r.rank == 2);
}

TEST_CASE("exact ranks of the twists") {
  FamilyOptions opt;
  opt.exact = true;
  FamilyScan scan = family_scan(5, 3, opt);
  REQUIRE(scan.rows.size() == 83);
  std::size_t total = 0;
  for (const auto& s : scan.summary) total += std::size_t(s.count);
  CHECK(total == scan.rows.size());
  for (const auto& r : scan.rows) {
    CAPTURE(r.f.to_string());
    REQUIRE(r.exact);
    REQUIRE(r.rank);
    CHECK(lpolynomial_violations(*r.exact).empty());
    CHECK(*r.rank <= r.rank_bound);
    CHECK(*r.rank % 2 == (r.epsilon == 1 ? 0 : 1));
    CHECK(analytic_rank(*r.exact) == *r.rank);
    if (!r.jac3_trivial) continue;
    Alphas a = alphas(r);
    // With a trivial 3-part the bound is the (1 + T)-adic valuation of R(T) mod 3.
    int vR = valuation_1_plus_T(product_mod({{1, a.t}, {1, -a.t1}, {1, 0, a.quad}}, 3), 3);
    CHECK(r.v3 == vR);
    CHECK(*r.rank <= vR);
    if (a.quad == a.t1) {
      const int row = r.row_index();
      if (row == 1) CHECK(*r.rank == 0);
      if (row == 2) CHECK(*r.rank <= 3);
      if (row == 3) CHECK(*r.rank == 1);
    }
  }
}

TEST_CASE("mod 2 twists of odd degree irreducible parameters") {
  for (auto [q, maxd] : {std::pair<u32, int>{5, 3}, {17, 1}}) {
    X13Family X = x13_curve(q);
    const int mod2_bound[2][2] = {{4, 2}, {2, 0}};
    for (const Poly& f : family_parameters(q, maxd)) {
      FamilyRow r = family_row(X, f);
      CAPTURE(f.to_string());
      IPoly expected{1};
      const int df = f.degree();
      if (df % 2) expected = mul_mod(expected, {1, -r.a_infinity, 1}, 2);
      for (const auto& [w, a] : r.traces_at_f) {
        IPoly local(std::size_t(2 * w.degree()) + 1, 0);
        local[0] = 1;
        local[std::size_t(w.degree())] = -a;
        local[std::size_t(2 * w.degree())] = 1;
        expected = mul_mod(expected, local, 2);
        CHECK(a == trace_at(X.curve, w));
      }
      CHECK(r.mod2 == expected);
      if (df % 2 == 1 && is_irreducible(f)) {
        REQUIRE(r.traces_at_f.size() == 1);
        int ai = int(((r.a_infinity % 2) + 2) % 2), af = int(((r.traces_at_f[0].second % 2) + 2) % 2);
        CHECK(r.factor_count_bound == mod2_bound[ai][af]);
        CHECK(r.rank_bound <= mod2_bound[ai][af]);
        FamilyOptions opt;
        opt.exact = true;
        if (q == 5) CHECK(*family_row(X, f, opt).rank <= mod2_bound[ai][af]);
      }
    }
  }
}

TEST_CASE("three-torsion of the Jacobian") {
  for (u32 q : {5u, 11u, 17u}) {
    CHECK(jac3_trivial(R(q, {2, 1}), q));
    CHECK(jac3_trivial(R(q, {1, 0, 1}), q));
  }
  int trivial = 0, nontrivial = 0;
  for (const Poly& f : family_parameters(5, 3)) {
    if (f.degree() != 3) continue;
    i64 n1 = cubic_points(f);
    i64 at_minus_one = 2 * 5 + 2 - n1;
    bool expected = n1 % 3 != 0 && at_minus_one % 3 != 0;
    CHECK(jac3_trivial(RationalFunction(f), 5) == expected);
    (expected ? trivial : nontrivial)++;
  }
  CHECK(trivial > 0);
  CHECK(nontrivial > 0);
  // t^3 + t + 1 over F_5 has 9 points.
  CHECK(cubic_points(P(5, {1, 1, 0, 1})) == 9);
  CHECK_FALSE(jac3_trivial(R(5, {1, 1, 0, 1}), 5));
  CHECK_THROWS_AS(jac3_trivial(R(7, {2, 1}), 7), PreconditionError);
  CHECK_THROWS_AS(jac3_trivial(R(5, {4}), 5), PreconditionError);
}

TEST_CASE("twist by the discriminant") {
  for (u32 q : {5u, 11u}) {
    DeltaTwistReport d = delta_twist_report(q);
    CAPTURE(q);
    CHECK(d.delta_class.g == P(q, {0, -1, 0, 0, 1}));
    CHECK(d.degree == 4);
    CHECK(d.epsilon == 1);
    CHECK(d.exact.degree() == 4);
    CHECK(d.exact.epsilon == 1);
    // (1 - T)^4 = 1 - 4T + 6T^2 - 4T^3 + T^4.
    CHECK(d.mod2 == std::vector<i64>{1, 0, 0, 0, 1});
    CHECK(d.rank_bound_mod2 == 4);
    const IPoly& c = hyperelliptic_L(d.delta_class, q).L.coeffs;
    CHECK(d.mod3 == product_mod({c, negate_variable(c)}, 3));
  }
  CHECK(delta_twist_report(5).exact.coeffs == std::vector<i64>{1, 0, -50, 0, 625});
}
