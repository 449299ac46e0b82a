// Copyright 2026 The ellfq Authors
// SPDX-License-Identifier: Apache-2.0

#include "ellfq/field_table.hpp"

#include <map>
#include <memory>
#include <mutex>

namespace ellfq {

namespace {

std::vector<u64> prime_divisors(u64 n) {
  std::vector<u64> out;
  for (u64 p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    out.push_back(p);
    while (n % p == 0) n /= p;
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

Poly primitive_polynomial(u32 q, int n) {
  require(n >= 1, "extension degree must be positive");
  u64 order = 1;
  for (int i = 0; i < n; ++i) order *= q;
  --order;
  auto primes = prime_divisors(order);
  Poly t = Poly::t(q);
  Poly found(q);
  for_each_monic_irreducible(q, n, [&](const Poly& m) {
    Poly x = t % m;
    if (n == 1 && x.is_zero()) return true;
    for (u64 p : primes)
      if (powmod(x, order / p, m).is_one()) return true;
    found = m;
    return false;
  });
  ensure(!found.is_zero(), "no primitive polynomial found");
  return found;
}

const FieldTable& FieldTable::get(u32 q, int n) {
  static std::mutex mu;
  static std::map<std::pair<u32, int>, std::unique_ptr<FieldTable>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{q, n}];
  if (!slot) slot.reset(new FieldTable(q, n));
  return *slot;
}

FieldTable::FieldTable(u32 q, int n) : q_(q), n_(n), modulus_(primitive_polynomial(q, n)) {
  size_ = 1;
  for (int i = 0; i < n; ++i) {
    size_ *= q;
    require(size_ <= kMaxSize, "extension field too large for lookup tables");
  }
  order_ = u32(size_ - 1);
  exp_.resize(order_);
  log_.assign(size_, kZero);
  zech_.assign(order_, kZero);
  // Powers of the root in the polynomial basis.
  const std::vector<u32>& m = modulus_.coeffs();
  u32 root = n == 1 ? neg_mod(m[0], q) : 0;
  std::vector<u32> cur(std::size_t(n), 0);
  cur[0] = 1;
  auto index = [&](const std::vector<u32>& d) {
    u64 x = 0;
    for (std::size_t j = d.size(); j-- > 0;) x = x * q + d[j];
    return x;
  };
  for (u32 i = 0; i < order_; ++i) {
    u64 idx = index(cur);
    ensure(log_[idx] == kZero, "modulus is not primitive");
    exp_[i] = idx;
    log_[idx] = i;
    if (n == 1) {
      cur[0] = mul_mod(cur[0], root, q);
    } else {
      u32 carry = cur[std::size_t(n - 1)];
      for (int j = n - 1; j > 0; --j) cur[std::size_t(j)] = cur[std::size_t(j - 1)];
      cur[0] = 0;
      for (int j = 0; j < n; ++j)
        cur[std::size_t(j)] = sub_mod(cur[std::size_t(j)], mul_mod(carry, m[std::size_t(j)], q), q);
    }
  }
  for (u32 i = 0; i < order_; ++i) {
    u64 idx = exp_[i];
    u32 c0 = u32(idx % q);
    u64 plus = idx - c0 + (c0 + 1) % q;
    zech_[i] = log_[plus];
  }
}

u32 FieldTable::power(u32 a, u64 e) const {
  if (a == kZero) return e == 0 ? 0 : kZero;
  return u32((u64(a) * (e % order_)) % order_);
}

u32 FieldTable::eval(const Poly& p, u32 x) const {
  u32 r = kZero;
  const auto& c = p.coeffs();
  for (std::size_t i = c.size(); i-- > 0;) r = add(mul(r, x), log_[c[i]]);
  return r;
}

int FieldTable::orbit_size(u32 l) const {
  if (l == kZero) return 1;
  u64 x = l;
  for (int k = 1; k <= n_; ++k) {
    x = (x * q_) % order_;
    if (x == l) return k;
  }
  throw ConsistencyError("Frobenius orbit longer than the extension degree");
}

bool FieldTable::is_orbit_min(u32 l) const {
  if (l == kZero) return true;
  u64 x = l;
  for (int k = 1; k < n_; ++k) {
    x = (x * q_) % order_;
    if (x < l) return false;
  }
  return true;
}

std::vector<u32> FieldTable::orbit_representatives() const {
  std::vector<u32> out;
  if (n_ == 1) out.push_back(kZero);
  for (u32 l = 0; l < order_; ++l)
    if (is_orbit_min(l) && orbit_size(l) == n_) out.push_back(l);
  return out;
}

Poly FieldTable::minimal_polynomial(u32 l) const {
  // Product of (X - conjugate) computed over the table, coefficients land in F_q.
  int k = orbit_size(l);
  std::vector<u32> c{log_of_base(1)};
  u64 x = l;
  for (int i = 0; i < k; ++i) {
    u32 root = l == kZero ? kZero : u32(x);
    std::vector<u32> next(c.size() + 1, kZero);
    for (std::size_t j = 0; j < c.size(); ++j) {
      next[j + 1] = add(next[j + 1], c[j]);
      next[j] = add(next[j], neg(mul(c[j], root)));
    }
    c = next;
    x = (x * q_) % order_;
  }
  std::vector<u32> coeffs;
  for (u32 v : c) {
    u64 idx = index_of_log(v);
    ensure(idx < q_, "minimal polynomial coefficient outside the prime field");
    coeffs.push_back(u32(idx));
  }
  return Poly(q_, coeffs);
}

}  // namespace ellfq
