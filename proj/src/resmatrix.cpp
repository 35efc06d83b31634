#include "ordscan/resmatrix.hpp"

#include <algorithm>

namespace ordscan {

namespace {

u64 det2(const u64 m[2][2], u64 mod) {
  return submod(mulmod(m[0][0], m[1][1], mod), mulmod(m[0][1], m[1][0], mod), mod);
}

u64 det3(const u64 m[3][3], u64 mod) {
  u64 r = 0;
  r = mulmod(m[0][0], submod(mulmod(m[1][1], m[2][2], mod), mulmod(m[1][2], m[2][1], mod), mod),
             mod);
  r = submod(
      r,
      mulmod(m[0][1], submod(mulmod(m[1][0], m[2][2], mod), mulmod(m[1][2], m[2][0], mod), mod),
             mod),
      mod);
  r = addmod(
      r,
      mulmod(m[0][2], submod(mulmod(m[1][0], m[2][1], mod), mulmod(m[1][1], m[2][0], mod), mod),
             mod),
      mod);
  return r;
}

}  // namespace

u64 mat_det(const ResidueMatrix& m) {
  u64 mod = m.mod;
  if (m.d == 1) return m.at(0, 0);
  if (m.d == 2) {
    u64 w[2][2] = {{m.at(0, 0), m.at(0, 1)}, {m.at(1, 0), m.at(1, 1)}};
    return det2(w, mod);
  }
  if (m.d == 3) {
    u64 w[3][3];
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) w[i][j] = m.at(i, j);
    return det3(w, mod);
  }
  // laplace along the first row for d = 4
  u64 r = 0;
  for (int j = 0; j < 4; ++j) {
    u64 w[3][3];
    for (int i = 1; i < 4; ++i) {
      int cc = 0;
      for (int k = 0; k < 4; ++k) {
        if (k == j) continue;
        w[i - 1][cc++] = m.at(i, k);
      }
    }
    u64 term = mulmod(m.at(0, j), det3(w, mod), mod);
    r = (j % 2 == 0) ? addmod(r, term, mod) : submod(r, term, mod);
  }
  return r;
}

namespace {

struct SmithWork {
  int d;
  u64 ell, mod;
  unsigned n;
  u64 w[4][4];
  u64 b[4];  // carried right-hand side (row ops applied)
  bool with_b = false;

  unsigned vord(u64 x) const {
    if (x == 0) return n;
    unsigned k = 0;
    while (x % ell == 0) x /= ell, ++k;
    return k < n ? k : n;
  }

  // diagonalize by valuation pivoting; returns valuations sorted ascending
  std::vector<unsigned> run() {
    std::vector<unsigned> vals;
    for (int t = 0; t < d; ++t) {
      // minimal-valuation pivot in trailing block
      unsigned best = n + 1;
      int bi = t, bj = t;
      for (int i = t; i < d; ++i)
        for (int j = t; j < d; ++j) {
          unsigned v = vord(w[i][j]);
          if (v < best) best = v, bi = i, bj = j;
        }
      if (best >= n) {
        for (int r = t; r < d; ++r) vals.push_back(n);
        break;
      }
      if (bi != t) {
        for (int j = 0; j < d; ++j) std::swap(w[t][j], w[bi][j]);
        if (with_b) std::swap(b[t], b[bi]);
      }
      if (bj != t)
        for (int i = 0; i < d; ++i) std::swap(w[i][t], w[i][bj]);
      u64 piv = w[t][t];
      unsigned v = best;
      u64 scaleq = 1;
      for (unsigned k = 0; k < v; ++k) scaleq *= ell;
      u64 unit = piv / scaleq;  // the pivot's unit part modulo ell^(n-v), lifted
      u64 uinv = invmod(unit % mod, mod);
      for (int i = t + 1; i < d; ++i) {
        if (w[i][t] == 0) continue;
        u64 c = mulmod(w[i][t] / scaleq, uinv, mod);
        for (int j = t; j < d; ++j) w[i][j] = submod(w[i][j], mulmod(c, w[t][j], mod), mod);
        if (with_b) b[i] = submod(b[i], mulmod(c, b[t], mod), mod);
      }
      for (int j = t + 1; j < d; ++j) {
        if (w[t][j] == 0) continue;
        u64 c = mulmod(w[t][j] / scaleq, uinv, mod);
        for (int i = t; i < d; ++i) w[i][j] = submod(w[i][j], mulmod(c, w[i][t], mod), mod);
      }
      vals.push_back(v);
    }
    std::sort(vals.begin(), vals.end());
    return vals;
  }
};

SmithWork make_work(const ResidueMatrix& m) {
  SmithWork s;
  s.d = m.d;
  s.ell = m.ell;
  s.mod = m.mod;
  s.n = m.n;
  for (int i = 0; i < m.d; ++i)
    for (int j = 0; j < m.d; ++j) s.w[i][j] = m.at(i, j);
  return s;
}

}  // namespace

std::vector<unsigned> smith_valuations(const ResidueMatrix& m) {
  SmithWork s = make_work(m);
  return s.run();
}

Int image_cardinality(const ResidueMatrix& m) {
  auto vals = smith_valuations(m);
  unsigned long e = (unsigned long)m.d * m.n;
  for (unsigned v : vals) e -= std::min(v, m.n);
  return pow_int(m.ell, e);
}

bool in_image(const ResidueMatrix& m, const std::array<u64, 4>& rhs) {
  SmithWork s = make_work(m);
  s.with_b = true;
  for (int i = 0; i < m.d; ++i) s.b[i] = rhs[(size_t)i] % m.mod;
  // rerun with rhs carried along; diagonal entry with valuation v needs
  // ell^v | rhs entry after reduction
  std::vector<unsigned> diag;
  for (int t = 0; t < s.d; ++t) {
    unsigned best = s.n + 1;
    int bi = t, bj = t;
    for (int i = t; i < s.d; ++i)
      for (int j = t; j < s.d; ++j) {
        unsigned v = s.vord(s.w[i][j]);
        if (v < best) best = v, bi = i, bj = j;
      }
    if (best >= s.n) {
      for (int r = t; r < s.d; ++r) {
        if (s.b[r] % s.mod != 0) return false;
      }
      return true;
    }
    if (bi != t) {
      for (int j = 0; j < s.d; ++j) std::swap(s.w[t][j], s.w[bi][j]);
      std::swap(s.b[t], s.b[bi]);
    }
    if (bj != t)
      for (int i = 0; i < s.d; ++i) std::swap(s.w[i][t], s.w[i][bj]);
    u64 piv = s.w[t][t];
    unsigned v = best;
    u64 scaleq = 1;
    for (unsigned k = 0; k < v; ++k) scaleq *= s.ell;
    u64 uinv = invmod((piv / scaleq) % s.mod, s.mod);
    for (int i = t + 1; i < s.d; ++i) {
      if (s.w[i][t] != 0) {
        u64 c = mulmod(s.w[i][t] / scaleq, uinv, s.mod);
        for (int j = t; j < s.d; ++j) s.w[i][j] = submod(s.w[i][j], mulmod(c, s.w[t][j], s.mod), s.mod);
        s.b[i] = submod(s.b[i], mulmod(c, s.b[t], s.mod), s.mod);
      }
    }
    for (int j = t + 1; j < s.d; ++j) {
      if (s.w[t][j] != 0) {
        u64 c = mulmod(s.w[t][j] / scaleq, uinv, s.mod);
        for (int i = t; i < s.d; ++i) s.w[i][j] = submod(s.w[i][j], mulmod(c, s.w[i][t], s.mod), s.mod);
      }
    }
    if (s.b[t] % scaleq != 0) return false;
  }
  return true;
}

}  // namespace ordscan
