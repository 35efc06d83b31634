#pragma once

// dense univariate polynomials over Z/p (p prime, p < 2^31 in practice)

#include <cstdint>
#include <utility>
#include <vector>

#include "ordscan/residue.hpp"

namespace ordscan {

struct PolyP {
  u64 p = 2;
  std::vector<u64> c;  // c[i] = coefficient of x^i, trimmed so back() != 0

  PolyP() = default;
  explicit PolyP(u64 prime) : p(prime) {}
  PolyP(u64 prime, std::vector<u64> coeffs) : p(prime), c(std::move(coeffs)) { trim(); }

  void trim() {
    while (!c.empty() && c.back() % p == 0) c.pop_back();
    for (auto& x : c) x %= p;
  }
  bool is_zero() const { return c.empty(); }
  int deg() const { return (int)c.size() - 1; }  // deg(0) = -1
  u64 lc() const { return c.back(); }
  u64 coeff(int i) const { return (i >= 0 && i < (int)c.size()) ? c[i] : 0; }

  static PolyP zero(u64 p) { return PolyP(p); }
  static PolyP constant(u64 p, u64 a) { return PolyP(p, {a % p}); }
  static PolyP x(u64 p) { return PolyP(p, {0, 1}); }

  bool operator==(const PolyP& o) const { return p == o.p && c == o.c; }
};

inline PolyP operator+(const PolyP& a, const PolyP& b) {
  PolyP r(a.p);
  r.c.resize(std::max(a.c.size(), b.c.size()), 0);
  for (size_t i = 0; i < r.c.size(); ++i) r.c[i] = addmod(a.coeff((int)i), b.coeff((int)i), a.p);
  r.trim();
  return r;
}

inline PolyP operator-(const PolyP& a, const PolyP& b) {
  PolyP r(a.p);
  r.c.resize(std::max(a.c.size(), b.c.size()), 0);
  for (size_t i = 0; i < r.c.size(); ++i) r.c[i] = submod(a.coeff((int)i), b.coeff((int)i), a.p);
  r.trim();
  return r;
}

inline PolyP operator*(const PolyP& a, const PolyP& b) {
  if (a.is_zero() || b.is_zero()) return PolyP::zero(a.p);
  PolyP r(a.p);
  r.c.assign(a.c.size() + b.c.size() - 1, 0);
  for (size_t i = 0; i < a.c.size(); ++i)
    for (size_t j = 0; j < b.c.size(); ++j)
      r.c[i + j] = addmod(r.c[i + j], mulmod(a.c[i], b.c[j], a.p), a.p);
  r.trim();
  return r;
}

inline PolyP scale(const PolyP& a, u64 s) {
  PolyP r = a;
  for (auto& x : r.c) x = mulmod(x, s % a.p, a.p);
  r.trim();
  return r;
}

// division with remainder; b != 0
inline std::pair<PolyP, PolyP> divmod(const PolyP& a, const PolyP& b) {
  PolyP q(a.p), r = a;
  u64 inv = invmod(b.lc(), b.p);
  if (r.deg() >= b.deg()) q.c.assign((size_t)(r.deg() - b.deg() + 1), 0);
  while (!r.is_zero() && r.deg() >= b.deg()) {
    int d = r.deg() - b.deg();
    u64 f = mulmod(r.lc(), inv, a.p);
    q.c[(size_t)d] = f;
    for (int i = 0; i <= b.deg(); ++i)
      r.c[(size_t)(i + d)] = submod(r.c[(size_t)(i + d)], mulmod(f, b.c[(size_t)i], a.p), a.p);
    r.trim();
  }
  q.trim();
  return {q, r};
}

inline PolyP operator%(const PolyP& a, const PolyP& b) { return divmod(a, b).second; }
inline PolyP operator/(const PolyP& a, const PolyP& b) { return divmod(a, b).first; }

inline PolyP monic(const PolyP& a) {
  if (a.is_zero()) return a;
  return scale(a, invmod(a.lc(), a.p));
}

inline PolyP gcd(PolyP a, PolyP b) {
  while (!b.is_zero()) {
    PolyP t = a % b;
    a = std::move(b);
    b = std::move(t);
  }
  return monic(a);
}

// g = gcd(a,b) together with s,t such that s*a + t*b = g
inline PolyP xgcd(const PolyP& a, const PolyP& b, PolyP& s, PolyP& t) {
  PolyP r0 = a, r1 = b;
  PolyP s0 = PolyP::constant(a.p, 1), s1 = PolyP::zero(a.p);
  PolyP t0 = PolyP::zero(a.p), t1 = PolyP::constant(a.p, 1);
  while (!r1.is_zero()) {
    auto [q, r2] = divmod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r2);
    PolyP s2 = s0 - q * s1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    PolyP t2 = t0 - q * t1;
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (!r0.is_zero()) {
    u64 inv = invmod(r0.lc(), a.p);
    r0 = scale(r0, inv);
    s0 = scale(s0, inv);
    t0 = scale(t0, inv);
  }
  s = s0;
  t = t0;
  return r0;
}

inline u64 eval(const PolyP& a, u64 x) {
  u64 r = 0;
  for (int i = a.deg(); i >= 0; --i) r = addmod(mulmod(r, x, a.p), a.c[(size_t)i], a.p);
  return r;
}

inline PolyP derivative(const PolyP& a) {
  PolyP r(a.p);
  for (int i = 1; i <= a.deg(); ++i) r.c.push_back(mulmod(a.c[(size_t)i], (u64)i % a.p, a.p));
  r.trim();
  return r;
}

// a^e mod m by repeated squaring (e as plain u64 is enough for our uses)
inline PolyP powmod_poly(PolyP a, u64 e, const PolyP& m) {
  PolyP r = PolyP::constant(a.p, 1);
  a = a % m;
  while (e) {
    if (e & 1) r = (r * a) % m;
    a = (a * a) % m;
    e >>= 1;
  }
  return r;
}

// number of distinct roots of a in F_p, via deg gcd(a, x^p - x)
inline int count_roots(const PolyP& a, u64 p) {
  if (a.deg() <= 0) return 0;
  PolyP xp = powmod_poly(PolyP::x(p), p, a);
  PolyP g = gcd(a, xp - (PolyP::x(p) % a));
  return g.deg();
}

inline bool has_root(const PolyP& a, u64 p) { return count_roots(a, p) > 0; }

}  // namespace ordscan
