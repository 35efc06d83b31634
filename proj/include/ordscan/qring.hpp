#pragma once

// small quotient rings F_p[t]/(f), deg f in {1,2,3}; covers the prime field,
// its quadratic/cubic extensions (f irreducible) and the split/ramified
// quotients the torus scans need when f factors mod p

#include <array>
#include <stdexcept>
#include <vector>

#include "ordscan/bigint.hpp"
#include "ordscan/polyp.hpp"

namespace ordscan {

struct QRing {
  u64 p;
  int k;                      // deg f
  std::array<u64, 3> f;       // monic defining poly: t^k + f[k-1] t^{k-1} + ... + f[0]
  // multiplication table helpers: reduction of t^k, t^{k+1}, ... is derived on the fly

  QRing(u64 prime, std::vector<u64> fcoeffs) : p(prime) {
    k = (int)fcoeffs.size();
    if (k < 1 || k > 3) throw std::invalid_argument("QRing: degree must be 1..3");
    f = {0, 0, 0};
    for (int i = 0; i < k; ++i) f[(size_t)i] = fcoeffs[(size_t)i] % p;
  }

  PolyP defining_poly() const {
    std::vector<u64> c(f.begin(), f.begin() + k);
    c.push_back(1);
    return PolyP(p, c);
  }
};

struct QRingElem {
  std::array<u64, 3> c{0, 0, 0};  // c[0] + c[1] t + c[2] t^2

  bool operator==(const QRingElem& o) const = default;
};

inline QRingElem qr_from(const QRing& R, u64 c0, u64 c1 = 0, u64 c2 = 0) {
  return {{c0 % R.p, c1 % R.p, c2 % R.p}};
}

inline QRingElem qr_one(const QRing& R) { return qr_from(R, 1); }

inline QRingElem qr_add(const QRing& R, const QRingElem& a, const QRingElem& b) {
  QRingElem r;
  for (int i = 0; i < 3; ++i) r.c[(size_t)i] = addmod(a.c[(size_t)i], b.c[(size_t)i], R.p);
  return r;
}

inline QRingElem qr_mul(const QRing& R, const QRingElem& a, const QRingElem& b) {
  u64 p = R.p;
  u64 w[5] = {0, 0, 0, 0, 0};
  for (int i = 0; i < R.k; ++i)
    for (int j = 0; j < R.k; ++j)
      w[i + j] = addmod(w[i + j], mulmod(a.c[(size_t)i], b.c[(size_t)j], p), p);
  // reduce degrees k..2k-2 using t^k = -(f[k-1] t^{k-1} + ... + f[0])
  for (int d = 2 * R.k - 2; d >= R.k; --d) {
    u64 top = w[d];
    if (top == 0) continue;
    w[d] = 0;
    for (int i = 0; i < R.k; ++i)
      w[d - R.k + i] = submod(w[d - R.k + i], mulmod(top, R.f[(size_t)i], p), p);
  }
  QRingElem r;
  for (int i = 0; i < R.k; ++i) r.c[(size_t)i] = w[i];
  return r;
}

inline QRingElem qr_pow(const QRing& R, QRingElem a, const Int& e) {
  QRingElem r = qr_one(R);
  Int n = e;
  while (n > 0) {
    if (mpz_odd_p(n.get_mpz_t())) r = qr_mul(R, r, a);
    a = qr_mul(R, a, a);
    n >>= 1;
  }
  return r;
}

// determinant of multiplication-by-a on the ring (the ring norm)
inline u64 qr_norm(const QRing& R, const QRingElem& a) {
  u64 p = R.p;
  // columns of the multiplication matrix: a * t^j reduced
  QRingElem col[3];
  col[0] = a;
  QRingElem t = R.k >= 2 ? qr_from(R, 0, 1) : qr_from(R, submod(0, R.f[0], p));
  for (int j = 1; j < R.k; ++j) col[j] = qr_mul(R, col[j - 1], t);
  if (R.k == 1) return col[0].c[0];
  if (R.k == 2)
    return submod(mulmod(col[0].c[0], col[1].c[1], p), mulmod(col[0].c[1], col[1].c[0], p), p);
  u64 det = 0;
  // 3x3 laplace
  u64 m[3][3];
  for (int j = 0; j < 3; ++j)
    for (int i = 0; i < 3; ++i) m[i][j] = col[j].c[(size_t)i];
  det = mulmod(m[0][0], submod(mulmod(m[1][1], m[2][2], p), mulmod(m[1][2], m[2][1], p), p), p);
  det = submod(
      det, mulmod(m[0][1], submod(mulmod(m[1][0], m[2][2], p), mulmod(m[1][2], m[2][0], p), p), p),
      p);
  det = addmod(
      det, mulmod(m[0][2], submod(mulmod(m[1][0], m[2][1], p), mulmod(m[1][1], m[2][0], p), p), p),
      p);
  return det;
}

// an integer annihilating every unit of R: lcm over distinct irreducible
// factors d_i of (p^{d_i} - 1), times p^ceil(log_p max-multiplicity)
Int qr_unit_annihilator(const QRing& R);

// field extension element with the defining polynomial checked irreducible
// at construction (root search suffices for k = 2, 3)
struct FiniteField {
  QRing R;

  // root search suffices: a reducible quadratic or cubic has a linear factor
  FiniteField(u64 p, std::vector<u64> fcoeffs) : R(p, std::move(fcoeffs)) {
    if (R.k > 1 && has_root(R.defining_poly(), p))
      throw std::invalid_argument("FiniteField: defining polynomial is reducible");
  }
};

}  // namespace ordscan
