#pragma once

// small d x d matrices over Z/ell^n (d <= 4) and smith-form valuations

#include <array>
#include <cstdint>
#include <vector>

#include "ordscan/bigint.hpp"
#include "ordscan/residue.hpp"

namespace ordscan {

struct ResidueMatrix {
  int d = 2;
  u64 ell = 2;
  unsigned n = 1;
  u64 mod = 2;                 // ell^n
  std::array<u64, 16> a{};     // row-major, entries in [0, mod)

  ResidueMatrix() = default;
  ResidueMatrix(int dim, u64 l, unsigned lev) : d(dim), ell(l), n(lev) {
    mod = 1;
    for (unsigned i = 0; i < lev; ++i) mod *= l;
  }

  u64& at(int i, int j) { return a[(size_t)(i * d + j)]; }
  u64 at(int i, int j) const { return a[(size_t)(i * d + j)]; }

  static ResidueMatrix identity(int dim, u64 l, unsigned lev) {
    ResidueMatrix m(dim, l, lev);
    for (int i = 0; i < dim; ++i) m.at(i, i) = 1 % m.mod;
    return m;
  }

  bool operator==(const ResidueMatrix& o) const {
    if (d != o.d || mod != o.mod) return false;
    for (int i = 0; i < d * d; ++i)
      if (a[(size_t)i] != o.a[(size_t)i]) return false;
    return true;
  }

  // packed key for hashing (d<=4, mod<2^16 in all enumerated uses)
  u64 key() const {
    u64 k = 1469598103934665603ull;
    for (int i = 0; i < d * d; ++i) {
      k ^= a[(size_t)i] + 0x9e3779b97f4a7c15ull;
      k *= 1099511628211ull;
    }
    return k;
  }
};

inline ResidueMatrix mat_mul(const ResidueMatrix& x, const ResidueMatrix& y) {
  ResidueMatrix r(x.d, x.ell, x.n);
  for (int i = 0; i < x.d; ++i)
    for (int j = 0; j < x.d; ++j) {
      u64 s = 0;
      for (int k = 0; k < x.d; ++k) s = addmod(s, mulmod(x.at(i, k), y.at(k, j), x.mod), x.mod);
      r.at(i, j) = s;
    }
  return r;
}

inline ResidueMatrix mat_sub(const ResidueMatrix& x, const ResidueMatrix& y) {
  ResidueMatrix r(x.d, x.ell, x.n);
  for (int i = 0; i < x.d * x.d; ++i) r.a[(size_t)i] = submod(x.a[(size_t)i], y.a[(size_t)i], x.mod);
  return r;
}

u64 mat_det(const ResidueMatrix& m);

// elementary divisor valuations of m over Z/ell^n, each capped at n,
// sorted ascending; length d
std::vector<unsigned> smith_valuations(const ResidueMatrix& m);

// |image of m acting on (Z/ell^n)^d| = ell^(d n - sum min(v_i, n))
Int image_cardinality(const ResidueMatrix& m);

// does m x = b have a solution over Z/ell^n?
bool in_image(const ResidueMatrix& m, const std::array<u64, 4>& b);

}  // namespace ordscan
