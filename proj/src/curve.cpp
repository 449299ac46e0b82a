// Copyright 2026 The ellfq Authors
// SPDX-License-Identifier: Apache-2.0

#include "ellfq/curve.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace ellfq {

namespace {

RationalFunction cst(u32 q, i64 c) { return RationalFunction::constant(q, c); }

int ceil_div(int a, int b) {
  // b > 0
  return a >= 0 ? (a + b - 1) / b : -((-a) / b);
}

RationalFunction uniformizer_power(const Place& w, int e) {
  // Chart uniformizer (v, or s at infinity) raised to e, as a function of the chart variable.
  return RationalFunction(w.poly()).pow(e);
}

// Global function with a simple zero at w: v for finite places, 1/t at infinity.
RationalFunction global_uniformizer(const Place& w) {
  if (w.is_infinity()) return RationalFunction::t(w.q()).inverse();
  return RationalFunction(w.poly());
}

bool is_square_in_residue_field(u32 c, const Place& w) {
  c %= w.q();
  if (c == 0) return true;
  return w.degree() % 2 == 0 || is_square_mod(c, w.q());
}

}  // namespace

Invariants compute_invariants(const RationalFunction& a1, const RationalFunction& a2, const RationalFunction& a3,
                              const RationalFunction& a4, const RationalFunction& a6) {
  u32 q = a1.q();
  Invariants v;
  v.b2 = a1 * a1 + a2.scaled(4);
  v.b4 = a4.scaled(2) + a1 * a3;
  v.b6 = a3 * a3 + a6.scaled(4);
  v.b8 = a1 * a1 * a6 + (a2 * a6).scaled(4) - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
  v.c4 = v.b2 * v.b2 - v.b4.scaled(24);
  v.c6 = -(v.b2 * v.b2 * v.b2) + (v.b2 * v.b4).scaled(36) - v.b6.scaled(216);
  v.delta = -(v.b2 * v.b2 * v.b8) - (v.b4 * v.b4 * v.b4).scaled(8) - (v.b6 * v.b6).scaled(27) +
            (v.b2 * v.b4 * v.b6).scaled(9);
  if (v.delta.is_zero()) throw PreconditionError("singular curve");
  v.j = v.c4 * v.c4 * v.c4 / v.delta;
  (void)q;
  return v;
}

CurveOverFqT::CurveOverFqT(const RationalFunction& a1, const RationalFunction& a2, const RationalFunction& a3,
                           const RationalFunction& a4, const RationalFunction& a6)
    : a_{a1, a2, a3, a4, a6} {
  u32 q = a1.q();
  for (auto& a : a_) require(a.q() == q, "curve coefficients over different fields");
  check_modulus(q);
  inv_ = compute_invariants(a1, a2, a3, a4, a6);
  if (inv_.j.is_constant())
    throw PreconditionError("constant j-invariant: the L-function is a polynomial only for nonconstant j");
  A_ = inv_.c4.scaled(-27);
  B_ = inv_.c6.scaled(-54);
}

CurveOverFqT CurveOverFqT::short_form(const RationalFunction& A, const RationalFunction& B) {
  u32 q = A.q();
  return CurveOverFqT(RationalFunction(q), RationalFunction(q), RationalFunction(q), A, B);
}

std::string Kodaira::to_string() const {
  switch (family) {
    case Family::I:
      return "I" + std::to_string(n);
    case Family::Istar:
      return "I" + std::to_string(n) + "*";
    case Family::II:
      return "II";
    case Family::III:
      return "III";
    case Family::IV:
      return "IV";
    case Family::IVstar:
      return "IV*";
    case Family::IIIstar:
      return "III*";
    case Family::IIstar:
      return "II*";
  }
  return "?";
}

const char* to_string(Reduction r) {
  switch (r) {
    case Reduction::Good:
      return "good";
    case Reduction::MultSplit:
      return "split multiplicative";
    case Reduction::MultNonsplit:
      return "nonsplit multiplicative";
    case Reduction::Additive:
      return "additive";
  }
  return "?";
}

const char* to_string(Potential p) {
  switch (p) {
    case Potential::None:
      return "none";
    case Potential::Good:
      return "potentially good";
    case Potential::MultSplit:
      return "potentially split multiplicative";
    case Potential::MultNonsplit:
      return "potentially nonsplit multiplicative";
  }
  return "?";
}

LocalModel minimal_model_at(const CurveOverFqT& E, const Place& w) {
  RationalFunction A = to_chart(E.A(), w), B = to_chart(E.B(), w);
  const Poly& pi = w.poly();
  LocalModel m;
  int oa = A.is_zero() ? kNoOrder : ord_poly(A.num(), pi) - ord_poly(A.den(), pi);
  int ob = B.is_zero() ? kNoOrder : ord_poly(B.num(), pi) - ord_poly(B.den(), pi);
  int r = -kNoOrder;
  if (oa != kNoOrder) r = std::max(r, ceil_div(-oa, 4));
  if (ob != kNoOrder) r = std::max(r, ceil_div(-ob, 6));
  m.shift = r;
  m.A = A.is_zero() ? A : A * uniformizer_power(w, 4 * r);
  m.B = B.is_zero() ? B : B * uniformizer_power(w, 6 * r);
  m.ord_A = oa == kNoOrder ? kNoOrder : oa + 4 * r;
  m.ord_B = ob == kNoOrder ? kNoOrder : ob + 6 * r;
  m.ord_delta = ord_at(E.invariants().delta, w) + 12 * r;
  return m;
}

namespace {

Kodaira kodaira_from_model(const LocalModel& m) {
  using F = Kodaira::Family;
  if (m.ord_delta == 0) return {F::I, 0};
  if (m.ord_A == 0) return {F::I, m.ord_delta};
  if (m.ord_A == 2 && m.ord_B == 3 && m.ord_delta >= 6) return {F::Istar, m.ord_delta - 6};
  switch (m.ord_delta) {
    case 2:
      return {F::II, 0};
    case 3:
      return {F::III, 0};
    case 4:
      return {F::IV, 0};
    case 6:
      return {F::Istar, 0};
    case 8:
      return {F::IVstar, 0};
    case 9:
      return {F::IIIstar, 0};
    case 10:
      return {F::IIstar, 0};
    default:
      break;
  }
  throw ConsistencyError("minimal model with impossible discriminant valuation");
}

Reduction multiplicative_kind(const LocalModel& m, const Place& w) {
  ExtElem b = chart_residue_at(m.B, w);
  ExtElem six = ExtElem::from_int(b.field(), 6);
  return is_square(six * b) ? Reduction::MultSplit : Reduction::MultNonsplit;
}

}  // namespace

Kodaira kodaira_symbol_at(const CurveOverFqT& E, const Place& w) { return kodaira_from_model(minimal_model_at(E, w)); }

ReductionType reduction_type_at(const CurveOverFqT& E, const Place& w) {
  LocalModel m = minimal_model_at(E, w);
  ReductionType rt;
  rt.kodaira = kodaira_from_model(m);
  if (m.ord_delta == 0) {
    rt.kind = Reduction::Good;
    return rt;
  }
  if (m.ord_A == 0) {
    rt.kind = multiplicative_kind(m, w);
    return rt;
  }
  rt.kind = Reduction::Additive;
  if (ord_at(E.invariants().j, w) < 0) {
    CurveOverFqT tw = quadratic_twist(E, global_uniformizer(w));
    LocalModel mt = minimal_model_at(tw, w);
    ensure(mt.ord_A == 0 && mt.ord_delta > 0, "ramified twist of a potentially multiplicative place is not multiplicative");
    rt.potential = multiplicative_kind(mt, w) == Reduction::MultSplit ? Potential::MultSplit : Potential::MultNonsplit;
  } else {
    rt.potential = Potential::Good;
  }
  return rt;
}

Kodaira twisted_kodaira(const Kodaira& k) {
  using F = Kodaira::Family;
  switch (k.family) {
    case F::I:
      return {F::Istar, k.n};
    case F::Istar:
      return {F::I, k.n};
    case F::II:
      return {F::IVstar, 0};
    case F::III:
      return {F::IIIstar, 0};
    case F::IV:
      return {F::IIstar, 0};
    case F::IVstar:
      return {F::II, 0};
    case F::IIIstar:
      return {F::III, 0};
    case F::IIstar:
      return {F::IV, 0};
  }
  return k;
}

CurveOverFqT quadratic_twist(const CurveOverFqT& E, const RationalFunction& f) {
  require(!f.is_zero(), "twist by zero");
  if (f.is_one()) return E;
  // Complete the square: y^2 = x^3 + (b2/4) x^2 + (b4/2) x + b6/4, then scale by f.
  u32 q = E.q();
  const Invariants& iv = E.invariants();
  RationalFunction quarter = cst(q, inv_mod(4, q)), half = cst(q, inv_mod(2, q));
  RationalFunction zero(q);
  return CurveOverFqT(zero, f * iv.b2 * quarter, zero, f * f * iv.b4 * half, f * f * f * iv.b6 * quarter);
}

std::vector<Place> special_places(const CurveOverFqT& E) {
  std::vector<Place> out;
  auto add_support = [&](const Poly& p) {
    if (p.degree() <= 0) return;
    for (auto& [v, e] : factor(p)) {
      Place w = Place::finite(v);
      if (std::find(out.begin(), out.end(), w) == out.end()) out.push_back(w);
    }
  };
  add_support(E.invariants().delta.num());
  add_support(E.invariants().delta.den());
  add_support(E.A().den());
  add_support(E.B().den());
  out.push_back(Place::infinity(E.q()));
  std::sort(out.begin(), out.end(), place_less);
  return out;
}

std::vector<Place> bad_places(const CurveOverFqT& E) {
  std::vector<Place> out;
  for (auto& w : special_places(E))
    if (minimal_model_at(E, w).ord_delta > 0) out.push_back(w);
  return out;
}

int conductor_degree(const CurveOverFqT& E) {
  int n = 0;
  for (auto& w : bad_places(E)) {
    LocalModel m = minimal_model_at(E, w);
    n += w.degree() * (m.ord_A == 0 ? 1 : 2);
  }
  return n;
}

int l_degree(const CurveOverFqT& E) { return conductor_degree(E) - 4; }

i64 point_count(const CurveOverFqT& E, const Place& w) {
  LocalModel m = minimal_model_at(E, w);
  require(m.ord_delta == 0, "point count needs good reduction");
  ExtFieldPtr k = w.residue_field();
  ExtElem a = chart_residue_at(m.A, w), b = chart_residue_at(m.B, w);
  u64 Q = k->size();
  u32 q = k->q();
  auto index = [&](const ExtElem& x) {
    u64 i = 0;
    const auto& c = x.rep().coeffs();
    for (std::size_t j = c.size(); j-- > 0;) i = i * q + c[j];
    return i;
  };
  std::vector<char> sq(Q, 0);
  std::vector<ExtElem> elems;
  elems.reserve(Q);
  for (u64 i = 0; i < Q; ++i) {
    elems.push_back(ExtElem::from_index(k, i));
    sq[index(elems.back() * elems.back())] = 1;
  }
  i64 total = i64(Q) + 1;
  for (auto& x : elems) {
    ExtElem r = x * x * x + a * x + b;
    if (r.is_zero()) continue;
    total += sq[index(r)] ? 1 : -1;
  }
  return total;
}

i64 trace_of_type(const ReductionType& rt, TraceConvention conv) {
  int s = conv == TraceConvention::Standard ? 1 : -1;
  switch (rt.kind) {
    case Reduction::MultSplit:
      return s;
    case Reduction::MultNonsplit:
      return -s;
    case Reduction::Additive:
      return 0;
    case Reduction::Good:
      break;
  }
  throw PreconditionError("trace of a good place needs a point count");
}

i64 trace_at(const CurveOverFqT& E, const Place& w, TraceConvention conv) {
  ReductionType rt = reduction_type_at(E, w);
  if (rt.is_good()) {
    i64 a = i64(w.norm()) + 1 - point_count(E, w);
    ensure(a * a <= 4 * i64(w.norm()), "Hasse bound violated");
    return a;
  }
  return trace_of_type(rt, conv);
}

i64 trace_power(i64 a, i64 Q, int j) {
  require(j >= 0, "negative trace power");
  require(a * a <= 4 * Q, "Hasse bound violated");
  if (j == 0) return 2;
  __int128 t0 = 2, t1 = a;
  for (int i = 2; i <= j; ++i) {
    __int128 t2 = __int128(a) * t1 - __int128(Q) * t0;
    t0 = t1;
    t1 = t2;
    if (t1 > (__int128(1) << 62) || t1 < -(__int128(1) << 62)) throw std::overflow_error("trace power overflow");
  }
  return i64(t1);
}

// ---------------------------------------------------------------------------
// Group law

bool on_curve(const CurveOverFqT& E, const Point& P) {
  if (P.infinity) return true;
  const auto &x = P.x, &y = P.y;
  return y * y + E.a1() * x * y + E.a3() * y == x * x * x + E.a2() * x * x + E.a4() * x + E.a6();
}

Point negate(const CurveOverFqT& E, const Point& P) {
  if (P.infinity) return P;
  return Point::affine(P.x, -P.y - E.a1() * P.x - E.a3());
}

Point add(const CurveOverFqT& E, const Point& P, const Point& Q) {
  if (P.infinity) return Q;
  if (Q.infinity) return P;
  u32 q = E.q();
  RationalFunction lambda, nu;
  if (P.x == Q.x) {
    RationalFunction den = P.y + Q.y + E.a1() * Q.x + E.a3();
    if (den.is_zero()) return Point::at_infinity();
    RationalFunction d = P.y.scaled(2) + E.a1() * P.x + E.a3();
    lambda = (P.x * P.x * cst(q, 3) + (E.a2() * P.x).scaled(2) + E.a4() - E.a1() * P.y) / d;
    nu = (-(P.x * P.x * P.x) + E.a4() * P.x + E.a6().scaled(2) - E.a3() * P.y) / d;
  } else {
    RationalFunction dx = Q.x - P.x;
    lambda = (Q.y - P.y) / dx;
    nu = (P.y * Q.x - Q.y * P.x) / dx;
  }
  RationalFunction x3 = lambda * lambda + E.a1() * lambda - E.a2() - P.x - Q.x;
  RationalFunction y3 = -(lambda + E.a1()) * x3 - nu - E.a3();
  return Point::affine(x3, y3);
}

Point multiply(const CurveOverFqT& E, const Point& P, i64 n) {
  if (n < 0) return multiply(E, negate(E, P), -n);
  Point r = Point::at_infinity(), b = P;
  while (n) {
    if (n & 1) r = add(E, r, b);
    n >>= 1;
    if (n) b = add(E, b, b);
  }
  return r;
}

int subgroup_order(const CurveOverFqT& E, const std::vector<Point>& gens, int cap) {
  std::vector<Point> elems{Point::at_infinity()};
  std::size_t done = 0;
  while (done < elems.size()) {
    Point p = elems[done++];
    for (auto& g : gens) {
      Point s = add(E, p, g);
      if (std::find(elems.begin(), elems.end(), s) == elems.end()) {
        elems.push_back(s);
        if (int(elems.size()) > cap) return cap + 1;
      }
    }
  }
  return int(elems.size());
}

int verify_torsion_witness(const CurveOverFqT& E, const TorsionWitness& W) {
  require(W.order >= 1, "witness order must be positive");
  require(std::gcd(W.order, int(E.q())) == 1, "witness order must be coprime to q");
  for (auto& P : W.generators) {
    if (!P.infinity) require(P.x.q() == E.q() && P.y.q() == E.q(), "witness point over a different field");
    require(on_curve(E, P), "witness point is not on the curve");
  }
  int n = subgroup_order(E, W.generators, W.order);
  require(n == W.order, "witness generates a subgroup of order " + (n > W.order ? "> " + std::to_string(W.order) : std::to_string(n)) +
                            ", not " + std::to_string(W.order));
  return n;
}

namespace {

Point from_short(const CurveOverFqT& E, const RationalFunction& X, const RationalFunction& Y) {
  u32 q = E.q();
  RationalFunction x = (X - E.invariants().b2.scaled(3)) * cst(q, inv_mod(36, q));
  RationalFunction yp = Y * cst(q, inv_mod(108, q));
  RationalFunction y = (yp - E.a1() * x - E.a3()) * cst(q, inv_mod(2, q));
  return Point::affine(x, y);
}

}  // namespace

std::vector<Point> two_torsion_points(const CurveOverFqT& E) {
  u32 q = E.q();
  std::vector<Point> out;
  for (auto& X : rational_roots({E.B(), E.A(), RationalFunction(q), cst(q, 1)}))
    out.push_back(from_short(E, X, RationalFunction(q)));
  for (auto& P : out) ensure(on_curve(E, P), "2-torsion conversion failed");
  return out;
}

std::vector<Point> three_torsion_points(const CurveOverFqT& E) {
  u32 q = E.q();
  const auto &A = E.A(), &B = E.B();
  std::vector<Point> out;
  std::vector<RationalFunction> psi3 = {-(A * A), B.scaled(12), A.scaled(6), RationalFunction(q), cst(q, 3)};
  for (auto& X : rational_roots(psi3)) {
    auto Y = rational_sqrt(X * X * X + A * X + B);
    if (!Y || Y->is_zero()) continue;
    out.push_back(from_short(E, X, *Y));
    out.push_back(from_short(E, X, -*Y));
  }
  for (auto& P : out) ensure(on_curve(E, P), "3-torsion conversion failed");
  return out;
}

// ---------------------------------------------------------------------------
// Twist partition

const char* to_string(TwistSet s) {
  switch (s) {
    case TwistSet::MspUnr:
      return "M_sp_unr";
    case TwistSet::MnsUnr:
      return "M_ns_unr";
    case TwistSet::Msplit:
      return "M_split";
    case TwistSet::Minert:
      return "M_inert";
    case TwistSet::Mram:
      return "M_ram";
    case TwistSet::Aunr:
      return "A_unr";
    case TwistSet::Asplit:
      return "A_split";
    case TwistSet::Ainert:
      return "A_inert";
    case TwistSet::AramSp:
      return "A_ram_sp";
    case TwistSet::AramNs:
      return "A_ram_ns";
    case TwistSet::AramGd:
      return "A_ram_gd";
    case TwistSet::AramO:
      return "A_ram_o";
    case TwistSet::Uunr:
      return "U_unr";
    case TwistSet::Uram:
      return "U_ram";
  }
  return "?";
}

std::vector<TwistSet> all_twist_sets() {
  return {TwistSet::MspUnr, TwistSet::MnsUnr, TwistSet::Msplit, TwistSet::Minert, TwistSet::Mram,
          TwistSet::Aunr,   TwistSet::Asplit, TwistSet::Ainert, TwistSet::AramSp, TwistSet::AramNs,
          TwistSet::AramGd, TwistSet::AramO,  TwistSet::Uunr,   TwistSet::Uram};
}

std::vector<TwistSet> TwistPlace::sets() const {
  std::vector<TwistSet> s;
  if (split == SplitKind::Ramified) {
    if (e.is_good()) s.push_back(TwistSet::Uram);
    if (e.is_multiplicative()) s.push_back(TwistSet::Mram);
    if (e.is_additive()) {
      if (ef.is_good()) s.push_back(TwistSet::AramGd);
      else if (ef.kind == Reduction::MultSplit) s.push_back(TwistSet::AramSp);
      else if (ef.kind == Reduction::MultNonsplit) s.push_back(TwistSet::AramNs);
      else s.push_back(TwistSet::AramO);
    }
    return s;
  }
  bool sp = split == SplitKind::Split;
  if (e.is_good()) s.push_back(TwistSet::Uunr);
  if (e.is_multiplicative()) {
    s.push_back(e.kind == Reduction::MultSplit ? TwistSet::MspUnr : TwistSet::MnsUnr);
    s.push_back(sp ? TwistSet::Msplit : TwistSet::Minert);
  }
  if (e.is_additive()) {
    s.push_back(TwistSet::Aunr);
    s.push_back(sp ? TwistSet::Asplit : TwistSet::Ainert);
  }
  return s;
}

std::vector<Place> TwistPartition::members(TwistSet s) const {
  std::vector<Place> out;
  for (auto& p : places) {
    auto ss = p.sets();
    if (std::find(ss.begin(), ss.end(), s) != ss.end()) out.push_back(p.place);
  }
  return out;
}

int TwistPartition::count(TwistSet s) const { return int(members(s).size()); }

int TwistPartition::degree(TwistSet s) const {
  int d = 0;
  for (auto& p : members(s)) d += p.degree();
  return d;
}

TwistPartition classify_twist_sets(const CurveOverFqT& E, const RationalFunction& f) {
  TwistPartition P;
  P.square_class = square_class_rep(f);
  require(!P.square_class.is_perfect_square, "twist by a perfect square");
  RationalFunction fc = P.square_class.value();
  CurveOverFqT Ef = quadratic_twist(E, fc);
  std::vector<Place> cand = special_places(E);
  for (auto& w : ramified_places(P.square_class)) cand.push_back(w);
  for (auto& w : special_places(Ef)) cand.push_back(w);
  std::sort(cand.begin(), cand.end(), place_less);
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
  for (auto& w : cand) {
    TwistPlace tp;
    tp.place = w;
    tp.e = reduction_type_at(E, w);
    tp.ef = reduction_type_at(Ef, w);
    tp.split = splitting_in_Kf(w, fc);
    if (tp.e.is_good() && tp.ef.is_good() && tp.split != SplitKind::Ramified) continue;
    P.places.push_back(tp);
  }
  return P;
}

std::vector<std::string> twist_rule_violations(const TwistPartition& P) {
  std::vector<std::string> out;
  for (auto& p : P.places) {
    std::string where = p.place.to_string() + ": ";
    if (p.split != SplitKind::Ramified) {
      bool same = (p.e.is_good() && p.ef.is_good()) || (p.e.is_multiplicative() && p.ef.is_multiplicative()) ||
                  (p.e.is_additive() && p.ef.is_additive());
      if (!same) out.push_back(where + "unramified twist changed the reduction type");
      if (!(p.e.kodaira == p.ef.kodaira)) out.push_back(where + "unramified twist changed the Kodaira symbol");
      if (p.e.is_multiplicative() && p.ef.is_multiplicative() &&
          ((p.e.kind == p.ef.kind) != (p.split == SplitKind::Split)))
        out.push_back(where + "split/nonsplit flag does not follow the splitting of the place");
    } else {
      if (!(twisted_kodaira(p.e.kodaira) == p.ef.kodaira))
        out.push_back(where + "ramified twist sent " + p.e.kodaira.to_string() + " to " + p.ef.kodaira.to_string());
      if (p.e.is_good() && !(p.ef.is_additive() && p.ef.potential == Potential::Good))
        out.push_back(where + "good place did not become potentially good additive");
      if (p.e.is_multiplicative() && !(p.ef.is_additive() && p.ef.potential != Potential::Good && p.ef.potential != Potential::None))
        out.push_back(where + "multiplicative place did not become potentially multiplicative additive");
      if (p.e.is_additive() && p.e.potential == Potential::Good && p.ef.is_multiplicative())
        out.push_back(where + "potentially good place became multiplicative");
    }
  }
  return out;
}

std::vector<std::string> torsion_kodaira_violations(const CurveOverFqT& E, const TorsionWitness& W) {
  using F = Kodaira::Family;
  std::vector<std::string> out;
  int N = W.order;
  if (N < 2) return out;
  bool has_order4 = false;
  if (N == 4)
    for (auto& g : W.generators)
      if (!multiply(E, g, 2).infinity) has_order4 = true;
  for (auto& w : bad_places(E)) {
    ReductionType rt = reduction_type_at(E, w);
    if (!rt.is_additive()) continue;
    const Kodaira& k = rt.kodaira;
    bool ok = false;
    if (N == 2) ok = k.family == F::III || k.family == F::IIIstar || k.family == F::Istar;
    if (N == 3) ok = k.family == F::IV || k.family == F::IVstar;
    if (N == 4) ok = k.family == F::Istar && (has_order4 ? (k.n % 2 == 1 && k.n >= 3) : (k.n % 2 == 0));
    if (!ok) out.push_back(w.to_string() + ": additive " + k.to_string() + " with a subgroup of order " + std::to_string(N));
  }
  return out;
}

int local_root_number(const CurveOverFqT& E, const Place& w) {
  ReductionType rt = reduction_type_at(E, w);
  u32 q = E.q();
  auto chi = [&](i64 c) { return is_square_in_residue_field(reduce_signed(c, q), w) ? 1 : -1; };
  switch (rt.kind) {
    case Reduction::Good:
      return 1;
    case Reduction::MultSplit:
      return -1;
    case Reduction::MultNonsplit:
      return 1;
    case Reduction::Additive:
      break;
  }
  if (rt.potential != Potential::Good) return chi(-1);
  int od = minimal_model_at(E, w).ord_delta;
  int e = 12 / std::gcd(12, od);
  if (e == 3) return chi(-3);
  if (e == 4) return chi(-2);
  return chi(-1);
}

int global_root_number(const CurveOverFqT& E) {
  int eps = 1;
  for (auto& w : bad_places(E)) eps *= local_root_number(E, w);
  return eps;
}

}  // namespace ellfq
