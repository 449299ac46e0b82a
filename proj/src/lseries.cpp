// Copyright 2026 The ellfq Authors
// SPDX-License-Identifier: Apache-2.0

#include "ellfq/lseries.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <thread>

#include "ellfq/field_table.hpp"

namespace ellfq {

namespace {

constexpr __int128 kI64Max = std::numeric_limits<i64>::max();

i64 checked(__int128 x, const char* what = "integer overflow in series arithmetic") {
  if (x > kI64Max || x < -kI64Max) throw ConsistencyError(what);
  return i64(x);
}

i64 ipow(i64 b, int e) {
  require(e >= 0, "negative exponent");
  __int128 r = 1;
  for (int i = 0; i < e; ++i) r = checked(r * b, "power overflow");
  return i64(r);
}

i64 mod_norm(__int128 x, i64 m) {
  __int128 r = x % m;
  if (r < 0) r += m;
  return i64(r);
}

i64 pow_mod_i64(i64 b, i64 e, i64 m) {
  __int128 r = 1 % m, x = mod_norm(b, m);
  for (; e > 0; e >>= 1) {
    if (e & 1) r = r * x % m;
    x = x * x % m;
  }
  return i64(r);
}

i64 gcd_i64(i64 a, i64 b) {
  a = a < 0 ? -a : a;
  b = b < 0 ? -b : b;
  while (b) {
    i64 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// Inverse of a modulo m; requires gcd(a, m) = 1.
i64 inv_mod_i64(i64 a, i64 m) {
  i64 r0 = m, r1 = mod_norm(a, m), s0 = 0, s1 = 1;
  while (r1) {
    i64 k = r0 / r1;
    i64 t = r0 - k * r1;
    r0 = r1;
    r1 = t;
    t = s0 - k * s1;
    s0 = s1;
    s1 = t;
  }
  require(r0 == 1, "element is not a unit modulo " + std::to_string(m));
  return mod_norm(s0, m);
}

i64 binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  __int128 r = 1;
  for (int i = 1; i <= k; ++i) r = checked(r * (n - k + i) / i, "binomial overflow");
  return i64(r);
}

bool contains_place(const std::vector<Place>& v, const Place& w) {
  return std::find(v.begin(), v.end(), w) != v.end();
}

void add_place(std::vector<Place>& v, const Place& w) {
  if (!contains_place(v, w)) v.push_back(w);
}

// Product of the finite places of degree <= n in the list.
Poly finite_product(u32 q, const std::vector<Place>& places, int n) {
  Poly p = Poly::constant(q, 1);
  for (const auto& w : places)
    if (!w.is_infinity() && w.degree() <= n) p = p * w.poly();
  return p;
}

template <class Fn>
void parallel_for(std::size_t count, std::size_t work_per_item, Fn&& fn) {
  unsigned hw = std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
  if (hw == 1 || count < 2 || count * work_per_item < (std::size_t(1) << 20)) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> threads;
  for (unsigned t = 0; t < hw; ++t)
    threads.emplace_back([&, t] {
      for (std::size_t i = t; i < count; i += hw) fn(i);
    });
  for (auto& th : threads) th.join();
}

// sum over x in F of chi(x^3 + A x + B), logs in the table.
i64 character_sum(const FieldTable& F, u32 A, u32 B) {
  const u32 order = F.order();
  i64 s = F.chi(B);
  u32 l3 = 0;
  for (u32 l = 0; l < order; ++l) {
    u32 r = F.add(F.add(l3, F.mul(A, l)), B);
    s += F.chi(r);
    l3 += 3;
    if (l3 >= order) l3 -= order;
    if (l3 >= order) l3 -= order;
  }
  return s;
}

u32 eval_rational(const FieldTable& F, const RationalFunction& r, u32 x) {
  return F.div(F.eval(r.num(), x), F.eval(r.den(), x));
}

std::vector<i64> factor_of(const ReductionType& rt, i64 trace, i64 Q) {
  if (rt.is_good()) return {1, -trace, Q};
  if (rt.is_multiplicative()) return {1, -trace};
  return {1};
}

}  // namespace

// ---------------------------------------------------------------------------
// Truncated series

TruncSeries::TruncSeries(i64 modulus, int precision) : modulus_(modulus) {
  require(modulus >= 0 && modulus != 1, "series modulus must be 0 or at least 2");
  require(precision >= 0, "series precision must be nonnegative");
  c_.assign(std::size_t(precision) + 1, 0);
}

TruncSeries TruncSeries::one(i64 modulus, int precision) {
  TruncSeries s(modulus, precision);
  s.c_[0] = 1;
  return s;
}

TruncSeries TruncSeries::from_coeffs(i64 modulus, int precision, const std::vector<i64>& coeffs) {
  TruncSeries s(modulus, precision);
  for (std::size_t i = 0; i < coeffs.size() && i < s.c_.size(); ++i) s.c_[i] = s.norm(coeffs[i]);
  return s;
}

i64 TruncSeries::norm(__int128 x) const { return modulus_ ? mod_norm(x, modulus_) : checked(x); }

TruncSeries TruncSeries::operator+(const TruncSeries& o) const {
  require(modulus_ == o.modulus_, "series moduli differ");
  TruncSeries r(modulus_, std::min(precision(), o.precision()));
  for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = norm(__int128(c_[i]) + o.c_[i]);
  return r;
}

TruncSeries TruncSeries::operator-(const TruncSeries& o) const {
  require(modulus_ == o.modulus_, "series moduli differ");
  TruncSeries r(modulus_, std::min(precision(), o.precision()));
  for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = norm(__int128(c_[i]) - o.c_[i]);
  return r;
}

TruncSeries TruncSeries::operator*(const TruncSeries& o) const {
  require(modulus_ == o.modulus_, "series moduli differ");
  TruncSeries r(modulus_, std::min(precision(), o.precision()));
  for (std::size_t n = 0; n < r.c_.size(); ++n) {
    __int128 acc = 0;
    for (std::size_t i = 0; i <= n; ++i) {
      acc += __int128(c_[i]) * o.c_[n - i];
      if (modulus_) acc %= modulus_;
      else checked(acc);
    }
    r.c_[n] = norm(acc);
  }
  return r;
}

TruncSeries TruncSeries::inverse() const {
  i64 c0 = c_[0];
  i64 inv0;
  if (modulus_) {
    require(gcd_i64(c0, modulus_) == 1, "constant term is not a unit");
    inv0 = inv_mod_i64(c0, modulus_);
  } else {
    require(c0 == 1 || c0 == -1, "constant term is not a unit");
    inv0 = c0;
  }
  TruncSeries r(modulus_, precision());
  r.c_[0] = inv0;
  for (std::size_t n = 1; n < c_.size(); ++n) {
    __int128 acc = 0;
    for (std::size_t k = 1; k <= n; ++k) {
      acc += __int128(c_[k]) * r.c_[n - k];
      if (modulus_) acc %= modulus_;
      else checked(acc);
    }
    r.c_[n] = norm(-acc * inv0);
  }
  return r;
}

TruncSeries TruncSeries::truncated(int precision) const {
  require(precision >= 0 && precision <= this->precision(), "cannot extend a truncated series");
  TruncSeries r(modulus_, precision);
  std::copy(c_.begin(), c_.begin() + precision + 1, r.c_.begin());
  return r;
}

TruncSeries TruncSeries::reduced(i64 modulus) const {
  require(modulus >= 2, "reduction modulus must be at least 2");
  require(modulus_ == 0 || modulus_ % modulus == 0, "modulus does not divide the series modulus");
  TruncSeries r(modulus, precision());
  for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = mod_norm(c_[i], modulus);
  return r;
}

TruncSeries TruncSeries::scaled_variable(i64 c) const {
  TruncSeries r(modulus_, precision());
  __int128 p = 1;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    r.c_[i] = norm(__int128(c_[i]) * p);
    p = modulus_ ? mod_norm(p * c, modulus_) : (i + 1 < c_.size() ? checked(p * c) : p);
  }
  return r;
}

void TruncSeries::mul_sparse(const std::vector<i64>& p, int step) {
  require(!p.empty() && p[0] == 1 && step >= 1, "sparse factor must start with 1");
  for (int i = precision(); i >= 0; --i) {
    __int128 acc = c_[std::size_t(i)];
    for (std::size_t k = 1; k < p.size() && int(k) * step <= i; ++k) {
      acc += __int128(p[k]) * c_[std::size_t(i - int(k) * step)];
      if (modulus_) acc %= modulus_;
      else checked(acc);
    }
    c_[std::size_t(i)] = norm(acc);
  }
}

void TruncSeries::div_sparse(const std::vector<i64>& p, int step) {
  require(!p.empty() && p[0] == 1 && step >= 1, "sparse factor must start with 1");
  for (int i = 0; i <= precision(); ++i) {
    __int128 acc = c_[std::size_t(i)];
    for (std::size_t k = 1; k < p.size() && int(k) * step <= i; ++k) {
      acc -= __int128(p[k]) * c_[std::size_t(i - int(k) * step)];
      if (modulus_) acc %= modulus_;
      else checked(acc);
    }
    c_[std::size_t(i)] = norm(acc);
  }
}

std::vector<i64> TruncSeries::extract_polynomial(int degree, int guard) const {
  require(degree >= 0 && guard >= 0, "degree and guard must be nonnegative");
  require(degree + guard <= precision(), "series precision below degree + guard");
  for (int k = degree + 1; k <= degree + guard; ++k)
    ensure(c_[std::size_t(k)] == 0, "guard coefficient of T^" + std::to_string(k) +
                                        " is nonzero; degree " + std::to_string(degree) + " is wrong");
  return {c_.begin(), c_.begin() + degree + 1};
}

// ---------------------------------------------------------------------------
// L-polynomials

i64 coefficient_bound(u32 q, int d, int n) {
  return checked(__int128(binomial(d, n)) * ipow(q, n), "coefficient bound overflow");
}

std::vector<std::string> lpolynomial_violations(const LPolynomial& L) {
  std::vector<std::string> out;
  if (L.coeffs.empty()) return {"empty coefficient list"};
  if (L.modulus != 0) {
    if (mod_norm(L.coeffs[0] - 1, L.modulus) != 0) out.push_back("constant term is not 1");
    return out;
  }
  const int d = L.degree();
  if (L.coeffs[0] != 1) out.push_back("constant term is not 1");
  if (L.epsilon != 1 && L.epsilon != -1) {
    out.push_back("root number is not +1 or -1");
    return out;
  }
  i64 qd = ipow(L.q, d);
  if (L.coeffs[std::size_t(d)] != L.epsilon * qd) out.push_back("leading coefficient is not epsilon q^d");
  for (int n = 0; n <= d; ++n) {
    i64 a = L.coeffs[std::size_t(n)];
    if (a > coefficient_bound(L.q, d, n) || -a > coefficient_bound(L.q, d, n))
      out.push_back("coefficient of T^" + std::to_string(n) + " exceeds C(d,n) q^n");
  }
  for (int n = 0; 2 * n <= d; ++n) {
    __int128 rhs = __int128(L.epsilon) * ipow(L.q, d - 2 * n) * L.coeffs[std::size_t(n)];
    if (rhs != L.coeffs[std::size_t(d - n)])
      out.push_back("functional equation fails at T^" + std::to_string(d - n));
  }
  return out;
}

std::string to_string(const LPolynomial& L) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t n = 0; n < L.coeffs.size(); ++n) {
    i64 a = L.coeffs[n];
    if (a == 0) continue;
    i64 m = a < 0 ? -a : a;
    if (first) os << (a < 0 ? "-" : "");
    else os << (a < 0 ? " - " : " + ");
    if (n == 0 || m != 1) os << m;
    if (n >= 1) os << "T";
    if (n >= 2) os << "^" << n;
    first = false;
  }
  if (first) os << "0";
  if (L.modulus) os << " (mod " << L.modulus << ")";
  return os.str();
}

TruncSeries zeta_P1(u32 q, int precision, i64 modulus) {
  TruncSeries s = TruncSeries::one(modulus, precision);
  s.div_sparse({1, -1});
  s.div_sparse({1, -i64(q)});
  return s;
}

CurveL hyperelliptic_L(const SquareClass& f, u32 q) {
  require(!f.is_perfect_square, "the square class of a square has no quadratic character");
  CurveL out;
  out.L.q = q;
  out.L.epsilon = 1;
  const int d = f.g.degree();
  if (d == 0) {
    out.constant_extension = true;
    out.L.coeffs = {1};
    return out;
  }
  const int G = d % 2 ? (d - 1) / 2 : d / 2 - 1;
  out.genus = G;
  std::vector<i64> S(std::size_t(G) + 1, 0);
  for (int i = 1; i <= G; ++i) {
    const FieldTable& F = FieldTable::get(q, i);
    u32 lc = F.log_of_base(f.c);
    i64 sum = F.chi(F.mul(lc, F.eval(f.g, FieldTable::kZero)));
    for (u32 l = 0; l < F.order(); ++l) sum += F.chi(F.mul(lc, F.eval(f.g, l)));
    i64 Q = i64(F.size());
    i64 at_inf = d % 2 ? 1 : 1 + F.chi(lc);
    i64 N = Q + sum + at_inf;
    S[std::size_t(i)] = Q + 1 - N;
  }
  std::vector<i64> a(std::size_t(2 * G) + 1, 0);
  a[0] = 1;
  for (int n = 1; n <= G; ++n) {
    __int128 acc = 0;
    for (int i = 1; i <= n; ++i) acc += __int128(S[std::size_t(i)]) * a[std::size_t(n - i)];
    ensure(acc % n == 0, "Newton identity is not integral");
    a[std::size_t(n)] = checked(-acc / n);
  }
  for (int n = 0; n < G; ++n) a[std::size_t(2 * G - n)] = checked(__int128(ipow(q, G - n)) * a[std::size_t(n)]);
  out.L.coeffs = a;
  return out;
}

TruncSeries artin_L(const RationalFunction& f, int precision, i64 modulus) {
  SquareClass sc = square_class_rep(f);
  require(!sc.is_perfect_square, "the square class of a square has no quadratic character");
  const u32 q = f.q();
  TruncSeries s = TruncSeries::one(modulus, precision);
  for (int n = 1; n <= precision; ++n) {
    const FieldTable& F = FieldTable::get(q, n);
    u32 lc = F.log_of_base(sc.c);
    for (u32 r : F.orbit_representatives()) {
      int chi = F.chi(F.mul(lc, F.eval(sc.g, r)));
      if (chi != 0) s.div_sparse({1, -chi}, n);
    }
  }
  if (sc.g.degree() % 2 == 0) s.div_sparse({1, is_square_mod(sc.c, q) ? -1 : 1}, 1);
  return s;
}

TruncSeries artin_L_series(const CurveL& c, int precision, i64 modulus) {
  TruncSeries s = TruncSeries::one(modulus, precision);
  if (c.constant_extension) {
    s.div_sparse({1, 1});
    s.div_sparse({1, i64(c.L.q)});
    return s;
  }
  return TruncSeries::from_coeffs(modulus, precision, c.L.coeffs);
}

std::vector<i64> local_factor(const CurveOverFqT& E, const Place& w, TraceConvention conv) {
  ReductionType rt = reduction_type_at(E, w);
  i64 a = rt.is_good() ? trace_at(E, w, conv) : trace_of_type(rt, conv);
  const int d = w.degree();
  std::vector<i64> sparse = factor_of(rt, a, i64(w.norm()));
  std::vector<i64> dense(std::size_t(d) * (sparse.size() - 1) + 1, 0);
  for (std::size_t k = 0; k < sparse.size(); ++k) dense[k * std::size_t(d)] = sparse[k];
  return dense;
}

// ---------------------------------------------------------------------------
// Place sweeps

u64 LocalData::places() const {
  u64 n = special.size();
  for (const auto& g : generic) n += g.size();
  return n;
}

namespace {

std::vector<SpecialPlace> special_data(const CurveOverFqT& E, const std::vector<Place>& places, int max_degree,
                                       TraceConvention conv) {
  std::vector<SpecialPlace> out;
  for (const auto& w : places) {
    if (w.degree() > max_degree) continue;
    SpecialPlace sp{w, reduction_type_at(E, w), 0};
    sp.trace = sp.type.is_good() ? trace_at(E, w, conv) : trace_of_type(sp.type, conv);
    out.push_back(sp);
  }
  return out;
}

}  // namespace

LocalData collect_local_data(const CurveOverFqT& E, int max_degree, TraceConvention conv) {
  require(max_degree >= 1, "place degree must be positive");
  const u32 q = E.q();
  LocalData data;
  data.q = q;
  data.max_degree = max_degree;
  data.generic.resize(std::size_t(max_degree) + 1);
  std::vector<Place> sp = special_places(E);
  data.special = special_data(E, sp, max_degree, conv);
  data.residue_fields = data.special.size();
  for (int n = 1; n <= max_degree; ++n) {
    const FieldTable& F = FieldTable::get(q, n);
    Poly S = finite_product(q, sp, n);
    std::vector<u32> reps = F.orbit_representatives();
    std::vector<i64> traces(reps.size(), 0);
    std::vector<char> skip(reps.size(), 0);
    parallel_for(reps.size(), F.size(), [&](std::size_t i) {
      u32 x = reps[i];
      if (F.eval(S, x) == FieldTable::kZero) {
        skip[i] = 1;
        return;
      }
      u32 A = eval_rational(F, E.A(), x), B = eval_rational(F, E.B(), x);
      traces[i] = -character_sum(F, A, B);
    });
    for (std::size_t i = 0; i < reps.size(); ++i) {
      if (skip[i]) continue;
      ensure(traces[i] * traces[i] <= 4 * i64(F.size()), "Hasse bound violated");
      data.generic[std::size_t(n)].push_back({reps[i], traces[i]});
    }
    data.residue_fields += data.generic[std::size_t(n)].size();
  }
  return data;
}

LocalData twist_local_data(const LocalData& base, const CurveOverFqT& E, const RationalFunction& f,
                           TraceConvention conv) {
  SquareClass sc = square_class_rep(f);
  require(!sc.is_perfect_square, "twist by a square");
  const u32 q = base.q;
  CurveOverFqT Ef = quadratic_twist(E, sc.value());
  std::vector<Place> sp = special_places(Ef);
  for (const auto& w : support(sc.value())) add_place(sp, w);
  for (const auto& s : base.special) add_place(sp, s.place);
  std::sort(sp.begin(), sp.end(), place_less);
  LocalData data;
  data.q = q;
  data.max_degree = base.max_degree;
  data.generic.resize(base.generic.size());
  data.special = special_data(Ef, sp, base.max_degree, conv);
  for (int n = 1; n <= base.max_degree; ++n) {
    const FieldTable& F = FieldTable::get(q, n);
    Poly S = finite_product(q, sp, n);
    u32 lc = F.log_of_base(sc.c);
    for (const auto& e : base.generic[std::size_t(n)]) {
      if (F.eval(S, e.root) == FieldTable::kZero) continue;
      int chi = F.chi(F.mul(lc, F.eval(sc.g, e.root)));
      ensure(chi != 0, "twist character vanishes at an unramified place");
      data.generic[std::size_t(n)].push_back({e.root, chi * e.trace});
    }
  }
  data.residue_fields = data.places();
  return data;
}

TruncSeries euler_product(const LocalData& data) {
  TruncSeries s = TruncSeries::one(0, data.max_degree);
  for (const auto& sp : data.special) {
    i64 Q = ipow(data.q, sp.place.degree());
    s.div_sparse(factor_of(sp.type, sp.trace, Q), sp.place.degree());
  }
  for (int n = 1; n <= data.max_degree; ++n) {
    i64 Q = ipow(data.q, n);
    for (const auto& e : data.generic[std::size_t(n)]) s.div_sparse({1, -e.trace, Q}, n);
  }
  return s;
}

std::vector<i64> baig_hall_power_sums(const LocalData& data, int m) {
  require(m >= 0, "number of power sums must be nonnegative");
  std::vector<__int128> b(std::size_t(m) + 1, 0);
  auto add_good = [&](int d, i64 a, i64 Q) {
    __int128 t0 = 2, t1 = a;
    for (int j = 1; j * d <= m; ++j) {
      b[std::size_t(j * d)] += __int128(d) * t1;
      __int128 t2 = __int128(a) * t1 - __int128(Q) * t0;
      t0 = t1;
      t1 = checked(t2, "power sum overflow");
    }
  };
  for (const auto& sp : data.special) {
    const int d = sp.place.degree();
    if (d > data.max_degree) continue;
    if (sp.type.is_good()) {
      add_good(d, sp.trace, ipow(data.q, d));
    } else if (sp.type.is_multiplicative()) {
      i64 p = 1;
      for (int j = 1; j * d <= m; ++j) {
        p *= sp.trace;
        b[std::size_t(j * d)] += d * p;
      }
    }
  }
  for (int n = 1; n <= data.max_degree && n <= m; ++n) {
    i64 Q = ipow(data.q, n);
    for (const auto& e : data.generic[std::size_t(n)]) add_good(n, e.trace, Q);
  }
  std::vector<i64> out(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) out[i] = checked(b[i], "power sum overflow");
  return out;
}

int place_degree_budget(u32 q, double work) {
  int best = 1;
  double total = 0;
  for (int n = 1; n <= 40; ++n) {
    double qn = std::pow(double(q), n);
    if (qn > double(FieldTable::kMaxSize)) break;
    total += qn * qn / n;
    if (total > work) break;
    best = n;
  }
  return best;
}

// ---------------------------------------------------------------------------
// Exact L-functions

LResult l_from_local_data(const LocalData& data, int degree, int guard, int root_number, LMethod method) {
  require(degree >= 0, "L-function degree must be nonnegative");
  require(guard >= 0, "guard must be nonnegative");
  const u32 q = data.q;
  const int D = data.max_degree;
  const int P = std::min(D, degree + guard);
  std::vector<i64> c(std::size_t(std::max(P, degree)) + 1, 0);
  if (method == LMethod::EulerProduct) {
    TruncSeries s = euler_product(data);
    for (int n = 0; n <= P; ++n) c[std::size_t(n)] = s[n];
  } else {
    std::vector<i64> b = baig_hall_power_sums(data, P);
    c[0] = 1;
    for (int n = 1; n <= P; ++n) {
      __int128 acc = 0;
      for (int m = 1; m <= n; ++m) acc += __int128(b[std::size_t(m)]) * c[std::size_t(n - m)];
      ensure(acc % n == 0, "power-sum recursion is not integral at T^" + std::to_string(n));
      c[std::size_t(n)] = checked(acc / n);
    }
  }
  LResult res;
  res.place_degree = D;
  res.residue_fields = data.residue_fields;
  int eps = 0;
  if (P >= degree) {
    for (int n = degree + 1; n <= P; ++n)
      ensure(c[std::size_t(n)] == 0, "guard coefficient of T^" + std::to_string(n) + " is nonzero; degree " +
                                         std::to_string(degree) + " is wrong");
    i64 qd = ipow(q, degree);
    i64 lead = c[std::size_t(degree)];
    ensure(lead == qd || lead == -qd, "leading coefficient is not +-q^d");
    eps = lead == qd ? 1 : -1;
    res.epsilon_source = "leading coefficient";
  } else {
    require(degree <= 2 * P + 1, "place degree " + std::to_string(D) + " too small for an L-function of degree " +
                                     std::to_string(degree));
    for (int n = degree - P; 2 * n <= degree; ++n) {
      i64 a = c[std::size_t(n)];
      if (a == 0) continue;
      __int128 base = __int128(ipow(q, degree - 2 * n)) * a;
      __int128 other = c[std::size_t(degree - n)];
      int e = other == base ? 1 : (other == -base ? -1 : 0);
      ensure(e != 0, "coefficients violate the functional equation at T^" + std::to_string(degree - n));
      ensure(eps == 0 || eps == e, "functional equation gives both signs");
      eps = e;
    }
    if (eps != 0) {
      res.epsilon_source = "functional equation overlap";
    } else {
      require(root_number == 1 || root_number == -1, "root number required to complete the L-function");
      eps = root_number;
      res.epsilon_source = "root number";
    }
    for (int n = P + 1; n <= degree; ++n)
      c[std::size_t(n)] = checked(__int128(eps) * ipow(q, 2 * n - degree) * c[std::size_t(degree - n)]);
    res.completed = true;
  }
  ensure(root_number == 0 || root_number == eps, "root number disagrees with the computed L-function");
  res.L.q = q;
  res.L.coeffs.assign(c.begin(), c.begin() + degree + 1);
  res.L.epsilon = eps;
  auto bad = lpolynomial_violations(res.L);
  ensure(bad.empty(), bad.empty() ? "" : "computed L-function is invalid: " + bad.front());
  return res;
}

namespace {

LResult exact_L(const CurveOverFqT& E, int degree, const EulerOptions& opt, LMethod method) {
  const int d = degree < 0 ? l_degree(E) : degree;
  require(d >= 0, "L-function degree must be nonnegative");
  int D = opt.max_place_degree > 0 ? opt.max_place_degree : std::min(place_degree_budget(E.q()), d + opt.guard);
  D = std::max(D, 1);
  LocalData data = collect_local_data(E, D, opt.convention);
  int rn = opt.convention == TraceConvention::Standard ? global_root_number(E) : 0;
  return l_from_local_data(data, d, opt.guard, rn, method);
}

}  // namespace

LResult naive_L(const CurveOverFqT& E, int degree, const EulerOptions& opt) {
  return exact_L(E, degree, opt, LMethod::EulerProduct);
}

LResult baig_hall_L(const CurveOverFqT& E, int degree, const EulerOptions& opt) {
  return exact_L(E, degree, opt, LMethod::BaigHall);
}

// ---------------------------------------------------------------------------
// Congruences

LPolynomial ModResult::as_lpolynomial(u32 q) const {
  LPolynomial L;
  L.q = q;
  L.modulus = modulus;
  L.coeffs = residues;
  L.epsilon = epsilon;
  return L;
}

namespace {

int epsilon_from_lead(i64 lead, u32 q, int d, i64 N) {
  if (N < 3) return 0;
  i64 qd = pow_mod_i64(q, d, N);
  if (lead == qd) return 1;
  if (lead == mod_norm(-qd, N)) return -1;
  throw ConsistencyError("leading residue is not +-q^d modulo " + std::to_string(N));
}

int checked_witness(const CurveOverFqT& E, const TorsionWitness& W) {
  int N = verify_torsion_witness(E, W);
  require(N >= 2, "torsion witness must have order at least 2");
  require(gcd_i64(N, E.q()) == 1, "torsion order must be prime to q");
  auto viol = torsion_kodaira_violations(E, W);
  ensure(viol.empty(), viol.empty() ? "" : viol.front());
  return N;
}

}  // namespace

ModResult hall_L_mod(const CurveOverFqT& E, const TorsionWitness& W, int guard) {
  const int N = checked_witness(E, W);
  const u32 q = E.q();
  const int d = l_degree(E);
  const int prec = d + guard;
  TruncSeries s = zeta_P1(q, prec, N) * zeta_P1(q, prec, N).scaled_variable(q);
  for (const auto& w : bad_places(E)) {
    const int dv = w.degree();
    if (dv > prec) continue;
    ReductionType rt = reduction_type_at(E, w);
    i64 Qd = pow_mod_i64(q, dv, N);
    if (rt.kind == Reduction::MultSplit) {
      s.mul_sparse({1, -Qd}, dv);
    } else if (rt.kind == Reduction::MultNonsplit) {
      s.mul_sparse({1, -1}, dv);
      s.mul_sparse({1, -Qd}, dv);
      s.div_sparse({1, 1}, dv);
    } else if (rt.is_additive()) {
      s.mul_sparse({1, -1}, dv);
      s.mul_sparse({1, -Qd}, dv);
    }
  }
  ModResult r;
  r.modulus = N;
  r.degree = d;
  r.residues = s.extract_polynomial(d, guard);
  r.series = s;
  r.epsilon = epsilon_from_lead(r.residues.back(), q, d, N);
  return r;
}

DegreeData degree_data(const CurveOverFqT& E) { return {conductor_degree(E), l_degree(E)}; }

TwistDegreeData twist_degree_data(const TwistPartition& P) {
  TwistDegreeData D;
  const SquareClass& sc = P.square_class;
  require(!sc.is_perfect_square, "twist by a square");
  D.constant_field_degree = sc.g.degree() == 0 ? 2 : 1;
  for (const auto& w : ramified_places(sc)) D.ram_degree += w.degree();
  D.deg_M_unr = P.degree(TwistSet::MspUnr) + P.degree(TwistSet::MnsUnr);
  D.deg_A_unr = P.degree(TwistSet::Aunr);
  D.deg_A_ram_gd = P.degree(TwistSet::AramGd);
  D.deg_A_ram_m = P.degree(TwistSet::AramSp) + P.degree(TwistSet::AramNs);
  D.n_Msp_unr = P.count(TwistSet::MspUnr);
  D.n_A_ram_sp = P.count(TwistSet::AramSp);
  for (const auto& p : P.places) {
    if (p.e.kind == Reduction::MultSplit && p.split == SplitKind::Split) ++D.n_Msp_split;
    if (p.e.kind == Reduction::MultNonsplit && p.split == SplitKind::Inert) ++D.n_Mns_inert;
  }
  if (D.constant_field_degree == 2) {
    D.degree = -4 + D.deg_M_unr + 2 * D.deg_A_unr;
    D.printed_degree = D.deg_M_unr + D.deg_A_unr;
  } else {
    D.degree = -4 + 2 * D.ram_degree + D.deg_M_unr + 2 * D.deg_A_unr - 2 * D.deg_A_ram_gd - D.deg_A_ram_m;
    D.printed_degree = -4 + 2 * D.ram_degree + D.deg_M_unr + D.deg_A_unr - D.deg_A_ram_gd;
  }
  return D;
}

int twist_root_number(const TwistDegreeData& D, u32 q, int N, TwistFormula formula) {
  require(N >= 3, "the root number is not visible modulo 2");
  require(gcd_i64(N, q) == 1, "modulus must be prime to q");
  const bool same_constants = D.constant_field_degree == 1;
  int flips, e;
  if (formula == TwistFormula::Derived) {
    flips = D.n_Msp_split + D.n_Mns_inert + (same_constants ? D.n_A_ram_sp : 0);
    e = -D.deg_A_unr + (same_constants ? D.deg_A_ram_gd + D.deg_A_ram_m : 0);
  } else {
    flips = D.n_Msp_unr + D.n_Mns_inert;
    e = -D.deg_A_unr + (same_constants ? D.deg_A_ram_gd : 0);
  }
  i64 qe = e >= 0 ? pow_mod_i64(q, e, N) : pow_mod_i64(inv_mod_i64(q, N), -e, N);
  i64 v = mod_norm(__int128(flips % 2 ? -1 : 1) * qe, N);
  if (v == 1) return 1;
  if (v == N - 1) return -1;
  throw ConsistencyError("root number congruence is not +-1 modulo " + std::to_string(N));
}

ModResult twist_L_mod(const CurveOverFqT& E, const RationalFunction& f, const TorsionWitness& W, int guard,
                      GammaVariant gamma) {
  const int N = checked_witness(E, W);
  const u32 q = E.q();
  TwistPartition P = classify_twist_sets(E, f);
  TwistDegreeData TD = twist_degree_data(P);
  const int d = TD.degree;
  require(d >= 0, "twist has negative L-function degree");
  const int prec = d + guard;
  CurveL cl = hyperelliptic_L(P.square_class, q);
  TruncSeries s = artin_L_series(cl, prec, N) * artin_L_series(cl, prec, N).scaled_variable(q);
  for (const auto& p : P.places) {
    const int dv = p.place.degree();
    const i64 Qd = pow_mod_i64(q, dv, N);
    if (p.split != SplitKind::Ramified) {
      const i64 a = p.split == SplitKind::Split ? -1 : 1;
      if (p.e.kind == Reduction::MultSplit) {
        s.mul_sparse({1, a * Qd}, dv);
      } else if (p.e.kind == Reduction::MultNonsplit) {
        s.mul_sparse({1, a}, dv);
        s.mul_sparse({1, a * Qd}, dv);
        s.div_sparse({1, -a}, dv);
      } else if (p.e.is_additive()) {
        s.mul_sparse({1, a}, dv);
        s.mul_sparse({1, a * Qd}, dv);
      }
      continue;
    }
    if (!p.e.is_additive()) continue;
    if (p.ef.kind == Reduction::MultSplit) {
      s.div_sparse({1, -1}, dv);
    } else if (p.ef.kind == Reduction::MultNonsplit) {
      s.div_sparse({1, 1}, dv);
    } else if (p.ef.is_good()) {
      s.div_sparse({1, -1}, dv);
      s.div_sparse({1, gamma == GammaVariant::Derived ? -Qd : 1}, dv);
    }
  }
  if (N == 2) {
    TruncSeries h = zeta_P1(q, prec, 2) * zeta_P1(q, prec, 2);
    for (const auto& p : P.places) {
      const int dv = p.place.degree();
      if (p.ef.is_multiplicative()) h.mul_sparse({1, -1}, dv);
      if (p.ef.is_additive()) {
        h.mul_sparse({1, -1}, dv);
        h.mul_sparse({1, -1}, dv);
      }
    }
    ensure(h == s, "mod 2 twist formulas disagree");
  }
  ModResult r;
  r.modulus = N;
  r.degree = d;
  r.residues = s.extract_polynomial(d, guard);
  r.series = s;
  r.epsilon = epsilon_from_lead(r.residues.back(), q, d, N);
  return r;
}

RatioResult ratio_mod2(const CurveOverFqT& E, const RationalFunction& f1, const RationalFunction& f2,
                       int precision) {
  require(precision >= 0, "precision must be nonnegative");
  SquareClass s1 = square_class_rep(f1), s2 = square_class_rep(f2);
  RatioResult r;
  r.series = TruncSeries::one(2, precision);
  bool same = s1.is_perfect_square ? s2.is_perfect_square
                                    : !s2.is_perfect_square && s1.c == s2.c && s1.g == s2.g;
  if (same) return r;
  bool semistable = true;
  for (const auto& w : bad_places(E))
    if (reduction_type_at(E, w).is_additive()) semistable = false;
  if (s2.is_perfect_square && semistable) {
    r.closed_form = true;
    std::vector<Place> places;
    for (const auto& w : ramified_places(s1)) places.push_back(w);
    for (const auto& w : places) {
      if (w.degree() > precision) continue;
      ReductionType rt = reduction_type_at(E, w);
      if (rt.is_good()) {
        i64 a = trace_at(E, w);
        ++r.residue_fields;
        r.series.mul_sparse({1, -a, 1}, w.degree());
      } else {
        r.series.mul_sparse({1, -1}, w.degree());
      }
      r.places.push_back(w);
    }
    return r;
  }
  CurveOverFqT E1 = s1.is_perfect_square ? E : quadratic_twist(E, s1.value());
  CurveOverFqT E2 = s2.is_perfect_square ? E : quadratic_twist(E, s2.value());
  std::vector<Place> cand = special_places(E1);
  for (const auto& w : special_places(E2)) add_place(cand, w);
  std::sort(cand.begin(), cand.end(), place_less);
  for (const auto& w : cand) {
    if (w.degree() > precision) continue;
    ReductionType t1 = reduction_type_at(E1, w), t2 = reduction_type_at(E2, w);
    // Both good only where the relative twist is unramified; the traces then agree up to sign.
    if (t1.is_good() && t2.is_good()) continue;
    auto factor = [&](const CurveOverFqT& C, const ReductionType& t) -> std::vector<i64> {
      if (t.is_good()) {
        ++r.residue_fields;
        return {1, -trace_at(C, w), 1};
      }
      if (t.is_multiplicative()) return {1, -1};
      return {1};
    };
    std::vector<i64> l1 = factor(E1, t1), l2 = factor(E2, t2);
    if (l1 == l2) continue;
    r.series.mul_sparse(l2, w.degree());
    r.series.div_sparse(l1, w.degree());
    r.places.push_back(w);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Reconstruction

LPolynomial odd_rank_completion(const std::vector<i64>& partial, u32 q, int d) {
  require(d >= 1, "odd rank needs a positive degree");
  require(int(partial.size()) >= d - 1 && (d == 1 || partial[0] == 1), "need a_0 = 1, ..., a_(d-2)");
  std::vector<i64> B(std::size_t(d), 0);
  B[0] = 1;
  for (int n = 1; n <= d - 2; ++n) B[std::size_t(n)] = checked(__int128(q) * B[std::size_t(n - 1)] + partial[std::size_t(n)]);
  if (d >= 2) B[std::size_t(d - 1)] = ipow(q, d - 1);
  LPolynomial L;
  L.q = q;
  L.epsilon = -1;
  L.coeffs.assign(std::size_t(d) + 1, 0);
  for (int n = 0; n <= d; ++n) {
    __int128 v = n < d ? B[std::size_t(n)] : 0;
    if (n >= 1) v -= __int128(q) * B[std::size_t(n - 1)];
    L.coeffs[std::size_t(n)] = checked(v);
  }
  return L;
}

Reconstruction crt_reconstruct(const std::vector<ResidueBundle>& residues, int d, u32 q, int epsilon,
                               bool odd_rank) {
  require(d >= 0, "degree must be nonnegative");
  require(!residues.empty(), "no residues given");
  require(epsilon == 0 || epsilon == 1 || epsilon == -1, "root number must be 0, +1 or -1");
  if (odd_rank) {
    require(epsilon != 1, "odd rank forces root number -1");
    epsilon = -1;
  }
  i64 M = 1;
  std::vector<i64> r(std::size_t(d) + 1, 0);
  for (const auto& b : residues) {
    require(b.modulus >= 2, "moduli must be at least 2");
    require(gcd_i64(b.modulus, q) == 1, "moduli must be prime to q");
    require(gcd_i64(b.modulus, M) == 1, "moduli must be pairwise coprime");
    require(int(b.residues.size()) == d + 1, "each residue list must have d + 1 entries");
    require(__int128(M) * b.modulus < (__int128(1) << 62), "product of moduli too large");
    i64 invM = inv_mod_i64(M % b.modulus, b.modulus);
    for (int n = 0; n <= d; ++n) {
      i64 x = r[std::size_t(n)];
      i64 k = mod_norm(__int128(mod_norm(b.residues[std::size_t(n)] - x, b.modulus)) * invM, b.modulus);
      r[std::size_t(n)] = i64(x + __int128(M) * k);
    }
    M *= b.modulus;
  }
  Reconstruction out;
  out.modulus = M;
  ensure(mod_norm(r[0] - 1, M) == 0, "inconsistent residues: constant term is not 1");
  const i64 qd = ipow(q, d);
  auto fits = [&](int e) {
    if (mod_norm(r[std::size_t(d)] - __int128(e) * qd, M) != 0) return false;
    for (int n = 0; 2 * n <= d; ++n) {
      __int128 img = __int128(e) * pow_mod_i64(q, d - 2 * n, M) * r[std::size_t(n)];
      if (mod_norm(img - r[std::size_t(d - n)], M) != 0) return false;
      if (2 * n == d && e == -1 && mod_norm(r[std::size_t(n)], M) != 0) return false;
    }
    return true;
  };
  std::vector<int> eps_options;
  for (int e : {1, -1})
    if ((epsilon == 0 || epsilon == e) && fits(e)) eps_options.push_back(e);
  ensure(!eps_options.empty(), "inconsistent residues: no root number fits");
  // Values congruent to r modulo M in [-bound, bound].
  auto progression = [&](i64 res, i64 bound, std::vector<i64>& list, u64& count) {
    i64 lo = -bound, first = lo + mod_norm(res - lo, M);
    count = first > bound ? 0 : u64((bound - first) / M) + 1;
    for (i64 x = first; x <= bound && list.size() < Reconstruction::kMaxCandidates; x += M) list.push_back(x);
    if (count > list.size()) out.truncated = true;
  };
  out.candidates.assign(std::size_t(d) + 1, {});
  out.candidate_counts.assign(std::size_t(d) + 1, 0);
  out.candidates[0] = {1};
  out.candidate_counts[0] = 1;
  bool unique = eps_options.size() == 1;
  for (int n = 1; 2 * n <= d; ++n) {
    auto& list = out.candidates[std::size_t(n)];
    u64& cnt = out.candidate_counts[std::size_t(n)];
    bool middle = 2 * n == d;
    if (middle && eps_options.size() == 1 && eps_options[0] == -1) {
      list = {0};
      cnt = 1;
    } else {
      progression(r[std::size_t(n)], coefficient_bound(q, d, n), list, cnt);
    }
    ensure(cnt > 0, "inconsistent residues: no coefficient of T^" + std::to_string(n) + " within the bound");
    if (cnt != 1) unique = false;
  }
  for (int n = (d + 2) / 2; n <= d; ++n) {
    const int m = d - n;
    auto& list = out.candidates[std::size_t(n)];
    for (int e : eps_options)
      for (i64 x : out.candidates[std::size_t(m)]) list.push_back(checked(__int128(e) * ipow(q, n - m) * x));
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
    out.candidate_counts[std::size_t(n)] = out.candidate_counts[std::size_t(m)] * eps_options.size();
  }
  if (!unique) return out;
  out.determined = true;
  out.L.q = q;
  out.L.epsilon = eps_options[0];
  for (int n = 0; n <= d; ++n) out.L.coeffs.push_back(out.candidates[std::size_t(n)][0]);
  auto bad = lpolynomial_violations(out.L);
  ensure(bad.empty(), bad.empty() ? "" : "reconstructed polynomial is invalid: " + bad.front());
  if (odd_rank && d >= 1) {
    std::vector<i64> partial(out.L.coeffs.begin(), out.L.coeffs.begin() + std::max(d - 1, 1));
    ensure(odd_rank_completion(partial, q, d) == out.L, "reconstruction does not vanish at T = 1/q");
  }
  return out;
}

int analytic_rank(const LPolynomial& L) {
  require(L.modulus == 0, "analytic rank needs an exact polynomial");
  std::vector<i64> a = L.coeffs;
  while (!a.empty() && a.back() == 0) a.pop_back();
  require(!a.empty(), "zero polynomial");
  int rank = 0;
  while (a.size() > 1) {
    std::vector<i64> b(a.size() - 1);
    __int128 prev = 0;
    for (std::size_t n = 0; n + 1 < a.size(); ++n) {
      prev = checked(a[n] + __int128(L.q) * prev);
      b[n] = i64(prev);
    }
    if (a.back() + __int128(L.q) * prev != 0) break;
    a = b;
    ++rank;
  }
  return rank;
}

int valuation_1_plus_T(const std::vector<i64>& p, i64 ell) {
  require(ell >= 2, "modulus must be at least 2");
  std::vector<i64> a;
  for (i64 x : p) a.push_back(mod_norm(x, ell));
  while (!a.empty() && a.back() == 0) a.pop_back();
  require(!a.empty(), "polynomial vanishes modulo " + std::to_string(ell));
  int v = 0;
  while (a.size() > 1) {
    // Divide by (1 + T) from the top: b_(n-1) = a_n - b_n, with remainder a_0 - b_0.
    std::vector<i64> b(a.size() - 1);
    i64 carry = 0;
    for (std::size_t n = a.size() - 1; n >= 1; --n) {
      carry = mod_norm(a[n] - carry, ell);
      b[n - 1] = carry;
    }
    if (mod_norm(a[0] - carry, ell) != 0) break;
    a = b;
    ++v;
  }
  return v;
}

int valuation_1_plus_T_mod3(const std::vector<i64>& p) { return valuation_1_plus_T(p, 3); }

}  // namespace ellfq
