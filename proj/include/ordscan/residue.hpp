#pragma once

// fixed-width modular arithmetic for moduli < 2^63

#include <cassert>
#include <cstdint>
#include <stdexcept>

namespace ordscan {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

inline u64 addmod(u64 a, u64 b, u64 m) {
  u64 s = a + b;
  if (s >= m || s < a) s -= m;
  return s;
}

inline u64 submod(u64 a, u64 b, u64 m) { return a >= b ? a - b : a + (m - b); }

inline u64 mulmod(u64 a, u64 b, u64 m) { return (u64)((u128)a * b % m); }

inline u64 powmod(u64 base, u64 exp, u64 m) {
  if (m == 1) return 0;
  u64 r = 1 % m;
  base %= m;
  while (exp) {
    if (exp & 1) r = mulmod(r, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return r;
}

// extended gcd; returns g and writes x with a*x = g (mod m) context-free
inline u64 gcd_u64(u64 a, u64 b) {
  while (b) {
    u64 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// inverse of a modulo m, requires gcd(a, m) = 1
inline u64 invmod(u64 a, u64 m) {
  i64 t = 0, nt = 1;
  i64 r = (i64)m, nr = (i64)(a % m);
  while (nr != 0) {
    i64 q = r / nr;
    i64 tmp = t - q * nt;
    t = nt;
    nt = tmp;
    tmp = r - q * nr;
    r = nr;
    nr = tmp;
  }
  if (r != 1) throw std::domain_error("invmod: not invertible");
  return t < 0 ? (u64)(t + (i64)m) : (u64)t;
}

// legendre symbol (a/p) for odd prime p: returns 0, 1 or p-1 (for -1)
inline u64 legendre(u64 a, u64 p) { return powmod(a % p, (p - 1) / 2, p); }

// residue in [0, m) with its modulus attached; m = ell^n < 2^63 throughout
struct ResidueInt {
  u64 value = 0;
  u64 modulus = 1;

  ResidueInt() = default;
  ResidueInt(u64 v, u64 m) : value(v % m), modulus(m) {}

  ResidueInt operator+(const ResidueInt& o) const {
    assert(modulus == o.modulus);
    return {addmod(value, o.value, modulus), modulus};
  }
  ResidueInt operator-(const ResidueInt& o) const {
    assert(modulus == o.modulus);
    return {submod(value, o.value, modulus), modulus};
  }
  ResidueInt operator*(const ResidueInt& o) const {
    assert(modulus == o.modulus);
    return {mulmod(value, o.value, modulus), modulus};
  }
  bool operator==(const ResidueInt& o) const = default;
};

}  // namespace ordscan
