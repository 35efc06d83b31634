#pragma once

// dense univariate polynomials over Q (exact), for division polynomials,
// discriminants and the somos identity checks

#include <stdexcept>
#include <vector>

#include "ordscan/bigint.hpp"

namespace ordscan {

struct PolyQ {
  std::vector<Rat> c;  // c[i] = coefficient of x^i, trimmed

  PolyQ() = default;
  explicit PolyQ(std::vector<Rat> coeffs) : c(std::move(coeffs)) { trim(); }
  static PolyQ constant(const Rat& a) { return PolyQ({a}); }
  static PolyQ x() { return PolyQ({Rat(0), Rat(1)}); }

  void trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
  }
  bool is_zero() const { return c.empty(); }
  int deg() const { return (int)c.size() - 1; }
  Rat coeff(int i) const { return (i >= 0 && i < (int)c.size()) ? c[(size_t)i] : Rat(0); }
  Rat lc() const { return c.back(); }
  bool operator==(const PolyQ& o) const { return c == o.c; }
};

inline PolyQ operator+(const PolyQ& a, const PolyQ& b) {
  std::vector<Rat> r(std::max(a.c.size(), b.c.size()), Rat(0));
  for (size_t i = 0; i < r.size(); ++i) r[i] = a.coeff((int)i) + b.coeff((int)i);
  return PolyQ(std::move(r));
}

inline PolyQ operator-(const PolyQ& a, const PolyQ& b) {
  std::vector<Rat> r(std::max(a.c.size(), b.c.size()), Rat(0));
  for (size_t i = 0; i < r.size(); ++i) r[i] = a.coeff((int)i) - b.coeff((int)i);
  return PolyQ(std::move(r));
}

inline PolyQ operator*(const PolyQ& a, const PolyQ& b) {
  if (a.is_zero() || b.is_zero()) return PolyQ();
  std::vector<Rat> r(a.c.size() + b.c.size() - 1, Rat(0));
  for (size_t i = 0; i < a.c.size(); ++i)
    for (size_t j = 0; j < b.c.size(); ++j) r[i + j] += a.c[i] * b.c[j];
  return PolyQ(std::move(r));
}

inline PolyQ operator*(const Rat& s, const PolyQ& a) {
  PolyQ r = a;
  for (auto& x : r.c) x *= s;
  r.trim();
  return r;
}

inline std::pair<PolyQ, PolyQ> divmod(const PolyQ& a, const PolyQ& b) {
  if (b.is_zero()) throw std::domain_error("PolyQ divmod by zero");
  PolyQ q, r = a;
  if (r.deg() >= b.deg()) q.c.assign((size_t)(r.deg() - b.deg() + 1), Rat(0));
  while (!r.is_zero() && r.deg() >= b.deg()) {
    int d = r.deg() - b.deg();
    Rat f = r.lc() / b.lc();
    q.c[(size_t)d] = f;
    for (int i = 0; i <= b.deg(); ++i) r.c[(size_t)(i + d)] -= f * b.coeff(i);
    r.trim();
  }
  q.trim();
  return {q, r};
}

inline Rat eval(const PolyQ& a, const Rat& x) {
  Rat r(0);
  for (int i = a.deg(); i >= 0; --i) r = r * x + a.c[(size_t)i];
  return r;
}

inline PolyQ derivative(const PolyQ& a) {
  std::vector<Rat> r;
  for (int i = 1; i <= a.deg(); ++i) r.push_back(Rat(i) * a.c[(size_t)i]);
  return PolyQ(std::move(r));
}

// resultant by the euclidean recurrence over Q (exact; fine at our sizes)
inline Rat resultant(PolyQ a, PolyQ b) {
  Rat res(1);
  if (a.is_zero() || b.is_zero()) return Rat(0);
  while (true) {
    if (b.deg() == 0) {
      Rat lb = b.lc();
      Rat out = res;
      for (int i = 0; i < a.deg(); ++i) out *= lb;
      return out;
    }
    auto [q, r] = divmod(a, b);
    if (r.is_zero()) return Rat(0);
    Rat lb = b.lc();
    // res(a,b) = lc(b)^(deg a - deg r) * (-1)^(deg a * deg b) * res(b, r)
    Rat fac(1);
    for (int i = 0; i < a.deg() - r.deg(); ++i) fac *= lb;
    if ((a.deg() & 1) && (b.deg() & 1)) fac = -fac;
    res *= fac;
    a = b;
    b = r;
  }
}

// disc(f) = (-1)^(d(d-1)/2) res(f, f') / lc(f)
inline Rat discriminant(const PolyQ& f) {
  int d = f.deg();
  Rat r = resultant(f, derivative(f)) / f.lc();
  if ((d * (d - 1) / 2) % 2 == 1) r = -r;
  return r;
}

// reduce a polynomial with rational coefficients mod p; requires all
// denominators prime to p
inline std::vector<u64> reduce_coeffs_mod_p(const PolyQ& f, u64 p, bool* ok = nullptr) {
  std::vector<u64> out;
  for (const auto& q : f.c) {
    Int den = q.get_den();
    if (mpz_divisible_ui_p(den.get_mpz_t(), (unsigned long)p)) {
      if (ok) {
        *ok = false;
        return {};
      }
      throw std::domain_error("reduce mod p: denominator divisible by p");
    }
    Int num = q.get_num() % (unsigned long)p;
    if (num < 0) num += (unsigned long)p;
    u64 d = mpz_fdiv_ui(den.get_mpz_t(), (unsigned long)p);
    out.push_back(mulmod(num.get_ui(), invmod(d, p), p));
  }
  if (ok) *ok = true;
  return out;
}

}  // namespace ordscan
