// Copyright 2026 The ellfq Authors
// SPDX-License-Identifier: Apache-2.0

// Acceptance suite: one status line per criterion.
// Exit status is the number of criteria that FAIL; UNATTAINABLE lines carry their evidence.

#include <cctype>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ellfq/family.hpp"
#include "ellfq/lseries.hpp"
#include "fixtures.hpp"

using namespace ellfq;
using namespace fixtures;

namespace {

using IPoly = std::vector<i64>;

enum class Status { Pass, Fail, Unattainable };

struct Report {
  Status status = Status::Pass;
  std::vector<std::string> failures;
  std::vector<std::string> notes;
  std::vector<std::string> unattainable;

  void check(bool ok, const std::string& what) {
    if (!ok && failures.size() < 8) failures.push_back(what);
    if (!ok) status = Status::Fail;
  }
  void note(const std::string& s) { notes.push_back(s); }
  void out_of_reach(const std::string& s) {
    unattainable.push_back(s);
    if (status == Status::Pass) status = Status::Unattainable;
  }
};

IPoly reduce(IPoly a, i64 N) {
  for (auto& x : a) x = ((x % N) + N) % N;
  while (a.size() > 1 && a.back() == 0) a.pop_back();
  return a;
}

IPoly mul_mod(const IPoly& a, const IPoly& b, i64 N) {
  IPoly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = ((c[i + j] + a[i] * b[j]) % N + N) % N;
  return reduce(c, N);
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

std::string show(const IPoly& a) {
  std::string s;
  for (i64 x : a) s += (s.empty() ? "" : ",") + std::to_string(x);
  return "[" + s + "]";
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<Place> places_up_to(u32 q, int D) {
  std::vector<Place> out{Place::infinity(q)};
  for (int d = 1; d <= D; ++d)
    for (auto& v : monic_irreducibles(q, d)) out.push_back(Place::finite(v));
  return out;
}

// Number of places of degree <= D of P^1 over F_q, from the necklace count.
u64 place_count(u32 q, int D) {
  u64 total = 1;
  for (int d = 1; d <= D; ++d) {
    i64 s = 0;
    for (int e = 1; e <= d; ++e) {
      if (d % e) continue;
      int m = d / e, mu = 1, x = m;
      for (int p = 2; p * p <= x; ++p)
        if (x % p == 0) {
          x /= p;
          if (x % p == 0) mu = 0;
          mu = -mu;
        }
      if (x > 1) mu = -mu;
      i64 qe = 1;
      for (int i = 0; i < e; ++i) qe *= q;
      s += mu * qe;
    }
    total += u64(s / d);
  }
  return total;
}

// ---------------------------------------------------------------------------
// Criterion 1

Report criterion1() {
  Report R;
  int shapes = 0;
  for (const auto& f : order12_parameters()) {
    ++shapes;
    const std::string tag = "f = " + f.to_string() + ": ";
    CurveOverFqT E = order12_curve(f);
    TorsionWitness W = order12_witness(E);
    R.check(verify_torsion_witness(E, W) == 12, tag + "witness order is not 12");
    ModResult h = hall_L_mod(E, W);
    R.check(h.residues == IPoly{1, 0, 11}, tag + "Hall residues " + show(h.residues));
    LResult a = naive_L(E), b = baig_hall_L(E);
    Reconstruction c = crt_reconstruct({{12, h.residues}}, 2, 5, h.epsilon);
    const IPoly want{1, 0, -25};
    R.check(a.L.coeffs == want && a.L.epsilon == -1, tag + "naive_L " + to_string(a.L));
    R.check(b.L.coeffs == want && b.L.epsilon == -1, tag + "baig_hall_L " + to_string(b.L));
    R.check(c.determined && c.L.coeffs == want && c.L.epsilon == -1, tag + "reconstruction");
    R.check(analytic_rank(a.L) == 1, tag + "rank");
  }
  R.note(std::to_string(shapes) + " shapes, L = 1 - 25T^2, epsilon = -1, rank 1 by all three paths");
  return R;
}

// ---------------------------------------------------------------------------
// Criterion 2

Report criterion2() {
  Report R;
  CurveOverFqT E = z3z3_curve();
  TorsionWitness W = z3z3_witness(E);
  R.check(verify_torsion_witness(E, W) == 9, "witness order is not 9");
  R.check(naive_L(E).L.coeffs == IPoly{1}, "L(E) != 1");
  int h_count = 0;
  for (const auto& w : bad_places(E)) {
    if (w.is_infinity()) continue;
    if (reduction_type_at(E, w).kind != Reduction::MultSplit) continue;
    ++h_count;
    RationalFunction h(w.poly());
    const std::string tag = "h = " + h.to_string() + ": ";
    TwistDegreeData D = twist_degree_data(classify_twist_sets(E, h));
    // -4 + deg M_unr + 2 deg(ramified) = -4 + 2 + 2(2)
    R.check(D.deg_M_unr == 2 && D.ram_degree == 2 && -4 + D.deg_M_unr + 2 * D.ram_degree == 2 && D.degree == 2,
            tag + "twist degree");
    ModResult m = twist_L_mod(E, h, W);
    R.check(m.residues == IPoly{1, 0, 5}, tag + "mod 9 residues " + show(m.residues));
    RatioResult r = ratio_mod2(E, h, RationalFunction::constant(7, 1), 2);
    R.check(r.series.coeffs() == IPoly{1, 0, 1}, tag + "ratio mod 2");
    Reconstruction rec = crt_reconstruct({{9, m.residues}, {2, reduce(r.series.coeffs(), 2)}}, 2, 7);
    R.check(rec.determined && rec.L.coeffs == IPoly{1, 0, -49} && rec.L.epsilon == -1, tag + "reconstruction");
    LResult exact = naive_L(quadratic_twist(E, h));
    R.check(exact.L == rec.L, tag + "exact twist " + to_string(exact.L));
    R.check(rec.determined && analytic_rank(rec.L) == 1, tag + "rank");
  }
  R.check(h_count == 3, "expected three finite split multiplicative places, found " + std::to_string(h_count));
  R.note(std::to_string(h_count) + " places h, L(E_h) = 1 - 49T^2 from residues mod 9 and mod 2, rank 1");
  return R;
}

// ---------------------------------------------------------------------------
// Criterion 3

// Residue factor of each (f(0) square, f(1) square) row mod 3, and the tabulated root numbers.
const std::vector<IPoly> kMod3Rows = {
    product_mod({{1, -1}, {1, 1}, {1, 0, 1}}, 3),
    product_mod({{1, -1}, {1, -1}, {1, 0, 1}}, 3),
    product_mod({{1, -1}, {1, 1}, {1, 1}, {1, 1}}, 3),
    product_mod({{1, -1}, {1, 1}, {1, 0, 1}}, 3),
};
const int kRootNumberRows[4] = {1, 1, -1, -1};
// Exact ranks with trivial 3-part; -1 marks the row with the bound 3.
const int kRankRows[4] = {0, 0, -1, 1};

int alpha(const FamilyRow& r, const Poly& v) {
  for (const auto& [w, s] : r.bad_place_splitting)
    if (!w.is_infinity() && w.poly() == v) return s == SplitKind::Split ? -1 : 1;
  throw ConsistencyError("bad place missing from the row");
}

Report criterion3() {
  Report R;
  int rows = 0, consistent = 0, eps_literal = 0, mod3_literal = 0, jac3_rows = 0, odd_irreducible_rows = 0;
  int rank_literal_misses = 0;
  std::string counterexample, rank_counterexample;
  for (auto [q, maxd] : {std::pair<u32, int>{5, 3}, {17, 2}}) {
    FamilyOptions opt;
    opt.exact = true;
    FamilyScan scan = family_scan(q, maxd, opt);
    X13Family X = x13_curve(q);
    for (const auto& r : scan.rows) {
      ++rows;
      const std::string tag = "q = " + std::to_string(q) + ", f = " + r.f.to_string() + ": ";
      const int at = alpha(r, P(q, {0, 1})), at1 = alpha(r, P(q, {-1, 1})), aq = alpha(r, P(q, {1, 1, 1}));
      R.check(at == (is_square_mod(r.f.eval(0), q) ? -1 : 1) && at1 == (is_square_mod(r.f.eval(1), q) ? -1 : 1),
              tag + "row key");
      const IPoly& c = r.curve_L.L.coeffs;
      const IPoly cc = product_mod({c, negate_variable(c)}, 3);
      const IPoly general = product_mod({cc, {1, at}, {1, -at1}, {1, 0, aq}}, 3);
      // Exact twisted L-function, reduced independently.
      R.check(r.exact.has_value(), tag + "no exact L");
      if (!r.exact) continue;
      R.check(reduce(r.exact->coeffs, 3) == general, tag + "L mod 3 is not c(T)c(-T)R(T)");
      R.check(r.mod3 == general, tag + "mod 3 congruence");
      R.check(r.epsilon == r.exact->epsilon && r.epsilon == -at * at1 * aq, tag + "root number relation");
      const int row = r.row_index();
      const bool assumption = aq == at1;
      consistent += assumption;
      const IPoly literal = product_mod({cc, kMod3Rows[std::size_t(row)]}, 3);
      if (r.mod3 == literal) ++mod3_literal;
      if (r.epsilon == kRootNumberRows[row]) ++eps_literal;
      if (assumption) {
        R.check(r.epsilon == kRootNumberRows[row], tag + "epsilon differs from the table on a consistent row");
        // The first row is printed with 1 + T^2; the split quadratic place forces 1 - T^2.
        const IPoly expected = row == 0 ? product_mod({cc, {1, -1}, {1, 1}, {1, 0, -1}}, 3) : literal;
        R.check(r.mod3 == expected, tag + "mod 3 differs from the table on a consistent row");
      } else if (counterexample.empty() && r.epsilon != kRootNumberRows[row]) {
        std::ostringstream os;
        os << "f = " << r.f.to_string() << " over F_" << q << " has L = " << to_string(*r.exact)
           << ", epsilon " << r.epsilon << ", table epsilon " << kRootNumberRows[row];
        counterexample = os.str();
      }
      // Ranks.
      R.check(analytic_rank(*r.exact) == *r.rank && *r.rank <= r.rank_bound, tag + "rank bound");
      if (r.jac3_trivial) {
        ++jac3_rows;
        const int vR = valuation_1_plus_T(product_mod({{1, at}, {1, -at1}, {1, 0, aq}}, 3), 3);
        R.check(*r.rank <= vR, tag + "rank above the mod 3 bound");
        if (assumption) {
          if (row == 0) {
            // With 1 - T^2 in place of the printed 1 + T^2 the bound is 2, not 0.
            R.check(vR == 2 && *r.rank <= 2 && *r.rank % 2 == 0, tag + "rank outside the corrected bound");
            if (*r.rank != kRankRows[0]) {
              ++rank_literal_misses;
              if (rank_counterexample.empty())
                rank_counterexample = "f = " + r.f.to_string() + " over F_" + std::to_string(q) +
                                      " (f(0), f(1) squares, trivial 3-part) has L = " + to_string(*r.exact) +
                                      ", rank " + std::to_string(*r.rank) + ", table rank 0";
            }
          } else if (kRankRows[row] >= 0) {
            R.check(*r.rank == kRankRows[row], tag + "rank " + std::to_string(*r.rank) + " on a consistent row");
          } else {
            R.check(*r.rank <= 3, tag + "rank above 3");
          }
        }
      }
      // Mod 2: product over v | f (and infinity for odd degree) of (1 - a_v T^d + T^2d).
      IPoly m2{1};
      if (r.f.degree() % 2) m2 = mul_mod(m2, {1, -r.a_infinity, 1}, 2);
      for (const auto& [w, a] : r.traces_at_f) {
        R.check(a == trace_at(X.curve, w), tag + "trace at " + w.to_string());
        IPoly local(std::size_t(2 * w.degree()) + 1, 0);
        local[0] = 1;
        local[std::size_t(w.degree())] = -a;
        local[std::size_t(2 * w.degree())] = 1;
        m2 = mul_mod(m2, local, 2);
      }
      R.check(r.mod2 == m2 && reduce(r.exact->coeffs, 2) == m2, tag + "mod 2 product");
      if (r.f.degree() % 2 == 1 && is_irreducible(r.f)) {
        ++odd_irreducible_rows;
        const int mod2_bound[2][2] = {{4, 2}, {2, 0}};
        int ai = int(((r.a_infinity % 2) + 2) % 2), af = int(((r.traces_at_f.at(0).second % 2) + 2) % 2);
        R.check(*r.rank <= mod2_bound[ai][af] && r.factor_count_bound == mod2_bound[ai][af], tag + "mod 2 bound");
      }
    }
  }
  std::ostringstream n;
  n << rows << " rows (q = 5 deg <= 3, q = 17 deg <= 2); general mod 3 product, epsilon = -a_t a_{t-1} a_{t^2+t+1}, "
    << "mod 2 product and exact L agree on all rows; " << jac3_rows << " rows with trivial 3-part, " << odd_irreducible_rows
    << " odd irreducible f within the mod 2 bounds; tables hold on all " << consistent
    << " rows where a_{t^2+t+1} = a_{t-1}";
  R.note(n.str());
  std::ostringstream u;
  u << "literal table lookup matches epsilon on " << eps_literal << "/" << rows << " rows and L mod 3 on "
    << mod3_literal << "/" << rows << " rows; the tables key on (chi(f(0)), chi(f(1))) only, but the splitting of "
    << "t^2+t+1 in K_f is independent of that key. " << counterexample;
  R.out_of_reach(u.str());
  if (rank_literal_misses > 0) {
    std::ostringstream v;
    v << "the first row's exact rank 0 fails on " << rank_literal_misses
      << " consistent rows with trivial 3-part, since its 1 + T^2 should be 1 - T^2 (bound 2). " << rank_counterexample;
    R.out_of_reach(v.str());
  }
  return R;
}

// ---------------------------------------------------------------------------
// Criterion 4

Report criterion4() {
  Report R;
  const u32 q = 5;
  DeltaTwistReport d = delta_twist_report(q);
  X13Family X = x13_curve(q);
  LResult exact = naive_L(quadratic_twist(X.curve, d.delta_class.value()));
  const IPoly& c = hyperelliptic_L(d.delta_class, q).L.coeffs;
  const IPoly cc = product_mod({c, negate_variable(c)}, 3);
  const IPoly one_minus_T4 = reduce({1, -4, 6, -4, 1}, 2);
  R.check(d.degree == 4 && exact.L.degree() == 4, "degree " + std::to_string(d.degree));
  R.check(d.epsilon == 1 && exact.L.epsilon == 1, "epsilon");
  R.check(d.mod2 == one_minus_T4 && reduce(exact.L.coeffs, 2) == one_minus_T4, "mod 2 " + show(d.mod2));
  R.check(d.mod3 == cc && d.curve_product_mod3 == cc && reduce(exact.L.coeffs, 3) == cc, "mod 3 " + show(d.mod3));
  R.note("degree 4, epsilon +1, mod 2 " + show(d.mod2) + " = (1-T)^4, mod 3 " + show(d.mod3) +
         " = L(T,C)L(-T,C), exact L = " + to_string(exact.L));
  if (d.mod2 != IPoly{1, 1, 0, 0, 1})
    R.note("the listed residue vector [1,1,0,0,1] is not the reduction of (1-T)^4 and contradicts the exact L");
  return R;
}

// ---------------------------------------------------------------------------
// Criteria 5 and 6

struct RandomCurve {
  CurveOverFqT E;
  TorsionWitness W;
};

Poly random_poly(u32 q, int max_deg, std::mt19937_64& rng) {
  std::vector<i64> c(std::size_t(rng() % u64(max_deg + 1)) + 1);
  for (auto& x : c) x = i64(rng() % q);
  return Poly::from_ints(q, c);
}

std::optional<RandomCurve> random_curve(u32 q, std::mt19937_64& rng) {
  RationalFunction z(q);
  try {
    const u64 shape = rng() % 3;
    if (shape == 2) {
      // y^2 = x (x - a)(x - b), full two-torsion.
      RationalFunction a(random_poly(q, 2, rng)), b(random_poly(q, 2, rng));
      if (a.is_zero() || b.is_zero() || a == b) return std::nullopt;
      CurveOverFqT E(z, -(a + b), z, a * b, z);
      return RandomCurve{E, TorsionWitness{4, {Point::affine(z, z), Point::affine(a, z)}}};
    }
    if (shape == 1) {
      // y^2 + a1 xy + a3 y = x^3, (0, 0) of order 3.
      RationalFunction a1(random_poly(q, 2, rng)), a3(random_poly(q, 2, rng));
      if (a3.is_zero()) return std::nullopt;
      CurveOverFqT E(a1, z, a3, z, z);
      return RandomCurve{E, TorsionWitness{3, {Point::affine(z, z)}}};
    }
    // y^2 = x^3 + a x^2 + b x, (0, 0) of order 2.
    RationalFunction a(random_poly(q, 2, rng)), b(random_poly(q, 2, rng));
    if (b.is_zero()) return std::nullopt;
    CurveOverFqT E(z, a, z, b, z);
    return RandomCurve{E, TorsionWitness{2, {Point::affine(z, z)}}};
  } catch (const PreconditionError&) {
    return std::nullopt;
  }
}

RationalFunction random_twist(u32 q, std::mt19937_64& rng) {
  for (;;) {
    Poly n = random_poly(q, 2, rng), d = random_poly(q, 1, rng);
    if (n.is_zero() || d.is_zero()) continue;
    RationalFunction f(n, d);
    if (!square_class_rep(f).is_perfect_square) return f;
  }
}

std::string family_name(const Kodaira& k) { return k.to_string(); }

// Ramified twist: I_n <-> I_n*, II <-> IV*, III <-> III*, IV <-> II*.
std::string twisted_name(const std::string& k) {
  if (k == "II") return "IV*";
  if (k == "IV*") return "II";
  if (k == "III") return "III*";
  if (k == "III*") return "III";
  if (k == "IV") return "II*";
  if (k == "II*") return "IV";
  if (k.back() == '*') return k.substr(0, k.size() - 1);
  return k + "*";
}

bool allowed_with_torsion(const std::string& k, int N) {
  const bool istar = k.size() >= 3 && k[0] == 'I' && k.back() == '*' && std::isdigit(static_cast<unsigned char>(k[1]));
  if (N == 2) return k == "III" || k == "III*" || istar;
  if (N == 3) return k == "IV" || k == "IV*";
  if (N == 4) return istar;
  return true;
}

struct Suite56 {
  Report r5, r6;
  int curves = 0, twists = 0, places_checked = 0, parity_places = 0, kodaira_checks = 0;
  int witness_orders[5] = {0, 0, 0, 0, 0};
};

// Kodaira restrictions on the additive fibres of C given any witness of order 2, 3 or 4 on it.
void check_torsion_kodaira(const CurveOverFqT& C, Suite56& S, const std::string& tag) {
  std::vector<TorsionWitness> ws;
  RationalFunction z(C.q());
  auto twos = two_torsion_points(C);
  for (const auto& p : twos) ws.push_back({2, {p}});
  if (twos.size() >= 2) ws.push_back({4, {twos[0], twos[1]}});
  for (const auto& p : three_torsion_points(C)) {
    ws.push_back({3, {p}});
    break;
  }
  for (auto& W : ws) {
    int n = 0;
    try {
      n = verify_torsion_witness(C, W);
    } catch (const PreconditionError&) {
      continue;
    }
    if (n != W.order) continue;
    ++S.witness_orders[n];
    auto lib = torsion_kodaira_violations(C, W);
    S.r6.check(lib.empty(), tag + (lib.empty() ? "" : lib.front()));
    for (const auto& w : bad_places(C)) {
      ReductionType rt = reduction_type_at(C, w);
      if (!rt.is_additive()) continue;
      ++S.kodaira_checks;
      const std::string k = family_name(rt.kodaira);
      S.r6.check(allowed_with_torsion(k, n),
                 tag + w.to_string() + " has " + k + " with a subgroup of order " + std::to_string(n));
    }
  }
}

void check_classification(const CurveOverFqT& E, const RationalFunction& f, const CurveOverFqT& Ef, Suite56& S,
                          const std::string& tag) {
  TwistPartition part = classify_twist_sets(E, f);
  auto lib = twist_rule_violations(part);
  S.r6.check(lib.empty(), tag + (lib.empty() ? "" : lib.front()));
  for (const auto& p : part.places) {
    ++S.places_checked;
    const std::string at = tag + p.place.to_string() + ": ";
    ReductionType e = reduction_type_at(E, p.place), ef = reduction_type_at(Ef, p.place);
    S.r6.check(e.kind == p.e.kind && ef.kind == p.ef.kind, at + "reduction differs from Tate's algorithm");
    const std::string ke = family_name(e.kodaira), kf = family_name(ef.kodaira);
    if (p.split == SplitKind::Ramified) {
      S.r6.check(kf == twisted_name(ke), at + "ramified " + ke + " went to " + kf);
    } else {
      S.r6.check(ke == kf, at + "unramified " + ke + " went to " + kf);
      if (e.is_multiplicative())
        S.r6.check((e.kind == ef.kind) == (p.split == SplitKind::Split), at + "split flag");
    }
  }
}

Suite56 criteria5and6() {
  Suite56 S;
  std::mt19937_64 rng(20260419);
  const int kCurves = 20, kTwists = 20;
  while (S.curves < kCurves) {
    const u32 q = S.curves % 2 ? 7 : 5;
    auto rc = random_curve(q, rng);
    if (!rc) continue;
    const CurveOverFqT& E = rc->E;
    if (conductor_degree(E) > 8) continue;
    if (verify_torsion_witness(E, rc->W) != rc->W.order) continue;
    ++S.curves;
    const TorsionWitness& W = rc->W;
    const i64 N = W.order;
    const std::string ctag = "curve " + std::to_string(S.curves) + " over F_" + std::to_string(q) + ": ";
    LResult LE = naive_L(E);
    S.r5.check(baig_hall_L(E).L == LE.L, ctag + "baig_hall_L != naive_L");
    S.r5.check(lpolynomial_violations(LE.L).empty(), ctag + "functional equation or bounds");
    S.r5.check(hall_L_mod(E, W).residues == reduce(LE.L.coeffs, N), ctag + "hall_L_mod");
    check_torsion_kodaira(E, S, ctag);
    RationalFunction prev = RationalFunction::constant(q, 1);
    IPoly Lprev = LE.L.coeffs;
    for (int k = 0; k < kTwists; ++k) {
      RationalFunction f = random_twist(q, rng);
      ++S.twists;
      const std::string tag = ctag + "f = " + f.to_string() + ": ";
      CurveOverFqT Ef = quadratic_twist(E, square_class_rep(f).value());
      LResult Lf = naive_L(Ef);
      S.r5.check(baig_hall_L(Ef).L == Lf.L, tag + "baig_hall_L != naive_L");
      S.r5.check(lpolynomial_violations(Lf.L).empty(), tag + "functional equation or bounds");
      ModResult m = twist_L_mod(E, f, W);
      S.r5.check(m.residues == reduce(Lf.L.coeffs, N), tag + "twist_L_mod " + show(m.residues) + " vs " + to_string(Lf.L));
      TwistDegreeData D = twist_degree_data(classify_twist_sets(E, f));
      S.r5.check(D.degree == Lf.L.degree(), tag + "twist degree");
      if (N >= 3) S.r5.check(twist_root_number(D, q, int(N)) == Lf.L.epsilon, tag + "twist root number");
      const int prec = int(std::max(Lf.L.coeffs.size(), Lprev.size()));
      RatioResult r = ratio_mod2(E, f, prev, prec);
      TruncSeries lhs = r.series * TruncSeries::from_coeffs(2, prec, Lprev);
      S.r5.check(lhs == TruncSeries::from_coeffs(2, prec, Lf.L.coeffs), tag + "ratio_mod2");
      for (const auto& w : places_up_to(q, 2)) {
        if (!reduction_type_at(E, w).is_good() || !reduction_type_at(Ef, w).is_good()) continue;
        ++S.parity_places;
        S.r5.check((trace_at(E, w) + trace_at(Ef, w)) % 2 == 0, tag + "parity at " + w.to_string());
      }
      check_classification(E, f, Ef, S, tag);
      check_torsion_kodaira(Ef, S, tag);
      prev = f;
      Lprev = Lf.L.coeffs;
    }
  }
  std::ostringstream n5;
  n5 << S.curves << " curves, " << S.twists << " twists, " << S.parity_places << " parity places";
  S.r5.note(n5.str());
  std::ostringstream n6;
  n6 << S.places_checked << " (E, f, place) triples; " << S.kodaira_checks << " additive fibres under witnesses of order 2/3/4 ("
     << S.witness_orders[2] << "/" << S.witness_orders[3] << "/" << S.witness_orders[4] << " witnesses)";
  S.r6.note(n6.str());
  return S;
}

// ---------------------------------------------------------------------------
// Criterion 7

Report criterion7() {
  Report R;
  const u32 q = 5;
  X13Family X = x13_curve(q);
  Poly f(q);
  for (const auto& v : monic_irreducibles(q, 6)) {
    if (gcd(v, P(q, {0, -1, 0, 0, 1})).degree() == 0) {
      f = v;
      break;
    }
  }
  RationalFunction F(f);
  const int d = 12;
  RatioResult closed = ratio_mod2(X.curve, F, RationalFunction::constant(q, 1), d);
  LResult bh = baig_hall_L(quadratic_twist(X.curve, F));
  R.check(closed.closed_form, "closed form not used");
  R.check(closed.residue_fields == 1, "closed form touched " + std::to_string(closed.residue_fields) + " residue fields");
  R.check(bh.L.degree() == d, "twist degree " + std::to_string(bh.L.degree()));
  // L(E) = 1 for this curve, so the ratio is L(E_f) mod 2.
  R.check(closed.series == TruncSeries::from_coeffs(2, d, bh.L.coeffs), "paths disagree mod 2");
  const u64 all_places = place_count(q, d);
  const double ratio_run = double(bh.residue_fields) / double(std::max<u64>(1, closed.residue_fields));
  const double ratio_all = double(all_places) / double(std::max<u64>(1, closed.residue_fields));
  R.check(ratio_run > 100 && ratio_all > 100, "ratio below 100");
  std::ostringstream os;
  os << "f = " << f.to_string() << "; closed form: " << closed.residue_fields << " residue field; Baig-Hall run: "
     << bh.residue_fields << " residue fields (places of degree <= " << bh.place_degree
     << ", rest from the functional equation), " << all_places << " places of degree <= " << d
     << " for the uncompleted enumeration; ratios " << ratio_run << "x and " << ratio_all << "x";
  R.note(os.str());
  return R;
}

// ---------------------------------------------------------------------------

int emit(int id, const Report& R, double secs, double limit) {
  Report r = R;
  if (secs > limit) r.check(false, "took " + std::to_string(secs) + " s, limit " + std::to_string(limit) + " s");
  const char* word = r.status == Status::Pass ? "PASS" : r.status == Status::Fail ? "FAIL" : "UNATTAINABLE";
  std::ostringstream os;
  os << "criterion " << id << ": " << word << " (" << secs << " s)";
  for (const auto& n : r.notes) os << "; " << n;
  for (const auto& u : r.unattainable) os << "; out of reach: " << u;
  for (const auto& f : r.failures) os << "; FAILED " << f;
  std::printf("%s\n", os.str().c_str());
  std::fflush(stdout);
  return r.status == Status::Fail ? 1 : 0;
}

template <class F>
int timed(int id, double limit, F&& fn) {
  auto t0 = std::chrono::steady_clock::now();
  Report r;
  try {
    r = fn();
  } catch (const std::exception& e) {
    r.check(false, std::string("exception: ") + e.what());
  }
  return emit(id, r, seconds_since(t0), limit);
}

}  // namespace

int main() {
  int failed = 0;
  failed += timed(1, 10, criterion1);
  failed += timed(2, 10, criterion2);
  failed += timed(3, 300, criterion3);
  failed += timed(4, 60, criterion4);
  auto t0 = std::chrono::steady_clock::now();
  Suite56 S;
  try {
    S = criteria5and6();
  } catch (const std::exception& e) {
    S.r5.check(false, std::string("exception: ") + e.what());
    S.r6.check(false, std::string("exception: ") + e.what());
  }
  const double t56 = seconds_since(t0);
  failed += emit(5, S.r5, t56, 600);
  failed += emit(6, S.r6, t56, 600);
  failed += timed(7, 600, criterion7);
  return failed;
}
