#include "ordscan/matgroups.hpp"

#include <cmath>
#include <deque>
#include <map>
#include <mutex>
#include <thread>
#include <unordered_set>

namespace ordscan {

namespace {

u64 ipow(u64 b, unsigned e) {
  u64 r = 1;
  while (e--) r *= b;
  return r;
}

// exact packed key: two 64-bit words, 8 bits per entry (mod <= 256 in all
// enumerated settings), plus dimension salt
struct MatKey {
  u64 lo = 0, hi = 0;
  bool operator==(const MatKey&) const = default;
};
struct MatKeyHash {
  size_t operator()(const MatKey& k) const {
    u64 h = k.lo * 0x9e3779b97f4a7c15ull;
    h ^= (k.hi + 0x517cc1b727220a95ull) * 0xbf58476d1ce4e5b9ull;
    h ^= h >> 29;
    return (size_t)h;
  }
};

MatKey matkey(const ResidueMatrix& m) {
  MatKey k;
  for (int i = 0; i < 8; ++i) k.lo |= (m.a[(size_t)i] & 0xff) << (8 * i);
  for (int i = 8; i < 16; ++i) k.hi |= (m.a[(size_t)i] & 0xff) << (8 * (i - 8));
  k.hi ^= (u64)m.d << 61;
  return k;
}

// antidiagonal symplectic form: +1 on the upper half, -1 on the lower half
ResidueMatrix standard_J(unsigned g, u64 ell, unsigned n) {
  int d = (int)(2 * g);
  ResidueMatrix J(d, ell, n);
  for (int i = 0; i < (int)g; ++i) J.at(i, d - 1 - i) = 1 % J.mod;
  for (int i = (int)g; i < d; ++i) J.at(i, d - 1 - i) = J.mod - 1;
  return J;
}

ResidueMatrix transpose(const ResidueMatrix& m) {
  ResidueMatrix r(m.d, m.ell, m.n);
  for (int i = 0; i < m.d; ++i)
    for (int j = 0; j < m.d; ++j) r.at(i, j) = m.at(j, i);
  return r;
}

bool is_unit(u64 x, u64 ell) { return x % ell != 0; }

}  // namespace

u64 gsp_multiplier(const ResidueMatrix& m) {
  unsigned g = (unsigned)m.d / 2;
  ResidueMatrix J = standard_J(g, m.ell, m.n);
  ResidueMatrix w = mat_mul(mat_mul(transpose(m), J), m);
  return w.at(0, m.d - 1);
}

bool is_gsp_member(const ResidueMatrix& m) {
  unsigned g = (unsigned)m.d / 2;
  ResidueMatrix J = standard_J(g, m.ell, m.n);
  ResidueMatrix w = mat_mul(mat_mul(transpose(m), J), m);
  u64 mult = w.at(0, m.d - 1);
  if (!is_unit(mult, m.ell)) return false;
  for (int i = 0; i < m.d; ++i)
    for (int j = 0; j < m.d; ++j) {
      u64 expect = mulmod(mult, J.at(i, j), m.mod);
      if (w.at(i, j) != expect) return false;
    }
  return true;
}

namespace {

// symplectic transvection x -> x + <x, v> v as a matrix (level n)
ResidueMatrix transvection(const std::array<u64, 4>& v, unsigned g, u64 ell, unsigned n) {
  int d = (int)(2 * g);
  ResidueMatrix J = standard_J(g, ell, n);
  ResidueMatrix t = ResidueMatrix::identity(d, ell, n);
  // <e_j, v> = sum_k J[j][k] v[k]
  for (int j = 0; j < d; ++j) {
    u64 pair = 0;
    for (int k = 0; k < d; ++k) pair = addmod(pair, mulmod(J.at(j, k), v[(size_t)k], t.mod), t.mod);
    for (int i = 0; i < d; ++i)
      t.at(j, i) = addmod(t.at(j, i), mulmod(pair, v[(size_t)i], t.mod), t.mod);
  }
  return transpose(t);  // act on column vectors
}

std::vector<ResidueMatrix> bfs_closure(std::vector<ResidueMatrix> gens, u64 guard) {
  std::unordered_set<MatKey, MatKeyHash> seen;
  std::deque<ResidueMatrix> queue;
  std::vector<ResidueMatrix> out;
  ResidueMatrix id = ResidueMatrix::identity(gens.front().d, gens.front().ell, gens.front().n);
  seen.insert(matkey(id));
  out.push_back(id);
  queue.push_back(id);
  while (!queue.empty()) {
    ResidueMatrix cur = queue.front();
    queue.pop_front();
    for (const auto& g : gens) {
      ResidueMatrix nx = mat_mul(cur, g);
      if (seen.insert(matkey(nx)).second) {
        out.push_back(nx);
        queue.push_back(nx);
        if (out.size() > guard) throw CardinalityGuardExceeded("group closure exceeds guard");
      }
    }
  }
  return out;
}

std::vector<ResidueMatrix> enumerate_gl2(u64 ell, unsigned n) {
  u64 mod = ipow(ell, n);
  std::vector<ResidueMatrix> out;
  for (u64 a = 0; a < mod; ++a)
    for (u64 b = 0; b < mod; ++b)
      for (u64 c = 0; c < mod; ++c)
        for (u64 d = 0; d < mod; ++d) {
          if (!is_unit(submod(mulmod(a, d, mod), mulmod(b, c, mod), mod), ell)) continue;
          ResidueMatrix m(2, ell, n);
          m.at(0, 0) = a;
          m.at(0, 1) = b;
          m.at(1, 0) = c;
          m.at(1, 1) = d;
          out.push_back(m);
        }
  return out;
}

std::vector<u64> units_mod(u64 ell, unsigned n) {
  u64 mod = ipow(ell, n);
  std::vector<u64> u;
  for (u64 x = 1; x < mod; ++x)
    if (x % ell != 0) u.push_back(x);
  return u;
}

// the six matrices of the standard 2-dim integral representation of S3
// (permutation action on coordinates of a+b+c = 0, basis e1-e2, e2-e3)
std::vector<std::array<i64, 4>> s3_rep() {
  return {
      {1, 0, 0, 1},     // id
      {0, -1, 1, -1},   // 3-cycle (123)
      {-1, 1, -1, 0},   // 3-cycle (132)
      {-1, 1, 0, 1},    // transposition (12)
      {1, 0, 1, -1},    // transposition (23)
      {0, -1, -1, 0},   // transposition (13)
  };
}

ResidueMatrix from_i64(const std::array<i64, 4>& e, u64 ell, unsigned n) {
  ResidueMatrix m(2, ell, n);
  for (int i = 0; i < 4; ++i) {
    i64 v = e[(size_t)i] % (i64)m.mod;
    if (v < 0) v += (i64)m.mod;
    m.a[(size_t)i] = (u64)v;
  }
  return m;
}

// lie algebra of gsp (or full matrix algebra for gl2) as F_ell basis vectors
std::vector<std::array<u64, 16>> lie_basis_gsp(unsigned g, u64 ell) {
  int d = (int)(2 * g);
  // solve Z^T J + J Z = c J over F_ell, unknowns (Z entries, c)
  int nv = d * d + 1;
  ResidueMatrix J = standard_J(g, ell, 1);
  // rows: equations indexed by (i,j); columns: unknowns
  std::vector<std::vector<u64>> rows;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      std::vector<u64> eq((size_t)nv, 0);
      // (Z^T J)[i][j] = sum_k Z[k][i] J[k][j];  (J Z)[i][j] = sum_k J[i][k] Z[k][j]
      for (int k = 0; k < d; ++k) {
        eq[(size_t)(k * d + i)] = addmod(eq[(size_t)(k * d + i)], J.at(k, j), ell);
        eq[(size_t)(k * d + j)] = addmod(eq[(size_t)(k * d + j)], J.at(i, k), ell);
      }
      eq[(size_t)(d * d)] = submod(0, J.at(i, j), ell);
      rows.push_back(eq);
    }
  // gaussian elimination, then read off a kernel basis
  int nr = (int)rows.size();
  std::vector<int> pivot_col;
  int r = 0;
  for (int c = 0; c < nv && r < nr; ++c) {
    int sel = -1;
    for (int i = r; i < nr; ++i)
      if (rows[(size_t)i][(size_t)c] % ell != 0) {
        sel = i;
        break;
      }
    if (sel < 0) continue;
    std::swap(rows[(size_t)r], rows[(size_t)sel]);
    u64 inv = invmod(rows[(size_t)r][(size_t)c], ell);
    for (auto& x : rows[(size_t)r]) x = mulmod(x, inv, ell);
    for (int i = 0; i < nr; ++i) {
      if (i == r) continue;
      u64 f = rows[(size_t)i][(size_t)c];
      if (f == 0) continue;
      for (int k = 0; k < nv; ++k)
        rows[(size_t)i][(size_t)k] =
            submod(rows[(size_t)i][(size_t)k], mulmod(f, rows[(size_t)r][(size_t)k], ell), ell);
    }
    pivot_col.push_back(c);
    ++r;
  }
  std::vector<bool> is_pivot((size_t)nv, false);
  for (int c : pivot_col) is_pivot[(size_t)c] = true;
  std::vector<std::array<u64, 16>> basis;
  for (int freec = 0; freec < nv; ++freec) {
    if (is_pivot[(size_t)freec]) continue;
    std::vector<u64> sol((size_t)nv, 0);
    sol[(size_t)freec] = 1;
    for (int i = 0; i < (int)pivot_col.size(); ++i)
      sol[(size_t)pivot_col[(size_t)i]] = submod(0, rows[(size_t)i][(size_t)freec], ell);
    std::array<u64, 16> z{};
    for (int k = 0; k < d * d; ++k) z[(size_t)k] = sol[(size_t)k];
    basis.push_back(z);
  }
  return basis;
}

// hensel-correct m (taken mod ell^level entries, any lift) to a genuine
// GSp element mod ell^target
ResidueMatrix hensel_lift_gsp(const ResidueMatrix& m_in, unsigned target) {
  unsigned g = (unsigned)m_in.d / 2;
  u64 ell = m_in.ell;
  int d = m_in.d;
  ResidueMatrix m(d, ell, target);
  for (int i = 0; i < d * d; ++i) m.a[(size_t)i] = m_in.a[(size_t)i] % m.mod;
  for (unsigned k = m_in.n; k < target; ++k) {
    u64 modk1 = ipow(ell, k + 1);
    ResidueMatrix Mk1(d, ell, k + 1);
    for (int i = 0; i < d * d; ++i) Mk1.a[(size_t)i] = m.a[(size_t)i] % modk1;
    ResidueMatrix J = standard_J(g, ell, k + 1);
    ResidueMatrix W = mat_mul(mat_mul(transpose(Mk1), J), Mk1);
    u64 mult = W.at(0, d - 1);
    // E = (W - mult*J) / ell^k, entries mod ell
    u64 lk = ipow(ell, k);
    std::array<u64, 16> E{};
    bool need = false;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        u64 diff = submod(W.at(i, j), mulmod(mult, J.at(i, j), modk1), modk1);
        E[(size_t)(i * d + j)] = (diff / lk) % ell;
        if (E[(size_t)(i * d + j)]) need = true;
      }
    if (!need) continue;
    // solve mult*(Z^T J + J Z) = -E + s J over F_ell (s folded in as unknown)
    int nv = d * d + 1;
    std::vector<std::vector<u64>> rows;
    ResidueMatrix J1 = standard_J(g, ell, 1);
    u64 m1 = mult % ell;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        std::vector<u64> eq((size_t)(nv + 1), 0);
        for (int kk = 0; kk < d; ++kk) {
          eq[(size_t)(kk * d + i)] =
              addmod(eq[(size_t)(kk * d + i)], mulmod(m1, J1.at(kk, j), ell), ell);
          eq[(size_t)(kk * d + j)] =
              addmod(eq[(size_t)(kk * d + j)], mulmod(m1, J1.at(i, kk), ell), ell);
        }
        eq[(size_t)(d * d)] = submod(0, J1.at(i, j), ell);
        eq[(size_t)nv] = submod(0, E[(size_t)(i * d + j)], ell);  // rhs
        rows.push_back(eq);
      }
    // gaussian elimination with augmented column
    int nr = (int)rows.size();
    std::vector<int> pivot_col;
    int r = 0;
    for (int c = 0; c < nv && r < nr; ++c) {
      int sel = -1;
      for (int i = r; i < nr; ++i)
        if (rows[(size_t)i][(size_t)c] % ell != 0) {
          sel = i;
          break;
        }
      if (sel < 0) continue;
      std::swap(rows[(size_t)r], rows[(size_t)sel]);
      u64 inv = invmod(rows[(size_t)r][(size_t)c], ell);
      for (auto& x : rows[(size_t)r]) x = mulmod(x, inv, ell);
      for (int i = 0; i < nr; ++i) {
        if (i == r) continue;
        u64 f = rows[(size_t)i][(size_t)c];
        if (f == 0) continue;
        for (int kk = 0; kk <= nv; ++kk)
          rows[(size_t)i][(size_t)kk] =
              submod(rows[(size_t)i][(size_t)kk], mulmod(f, rows[(size_t)r][(size_t)kk], ell), ell);
      }
      pivot_col.push_back(c);
      ++r;
    }
    for (int i = r; i < nr; ++i)
      if (rows[(size_t)i][(size_t)nv] % ell != 0)
        throw std::logic_error("hensel lift: inconsistent system");
    std::array<u64, 16> Z{};
    for (int i = 0; i < (int)pivot_col.size(); ++i) {
      int c = pivot_col[(size_t)i];
      if (c < d * d) Z[(size_t)c] = rows[(size_t)i][(size_t)nv];
    }
    // m <- Mk1 * (I + ell^k Z), then re-embed at target modulus
    ResidueMatrix F = ResidueMatrix::identity(d, ell, target);
    for (int i = 0; i < d * d; ++i)
      F.a[(size_t)i] = addmod(F.a[(size_t)i], mulmod(lk % F.mod, Z[(size_t)i], F.mod), F.mod);
    ResidueMatrix Mt(d, ell, target);
    for (int i = 0; i < d * d; ++i) Mt.a[(size_t)i] = m.a[(size_t)i];
    m = mat_mul(Mt, F);
    // the correction is supported mod ell^{k+1}; higher digits are arbitrary
    // lifts fixed by the next iteration
  }
  return m;
}

std::vector<ResidueMatrix> enumerate_gsp(u64 ell, unsigned g, unsigned n, u64 guard) {
  std::vector<ResidueMatrix> level = gsp_level1(ell, g);
  for (unsigned k = 1; k < n; ++k) {
    Int next_size = Int((unsigned long)level.size()) *
                    pow_int(ell, 2 * (unsigned long)g * g + g + 1);
    if (next_size > (long)guard) throw CardinalityGuardExceeded("gsp enumeration exceeds guard");
    auto basis = lie_basis_gsp(g, ell);
    std::vector<ResidueMatrix> next;
    next.reserve((size_t)next_size.get_ui());
    int d = (int)(2 * g);
    u64 lk = ipow(ell, k);
    u64 modk1 = ipow(ell, k + 1);
    // all kernel coset representatives I + ell^k Z, Z in the F_ell lie algebra
    std::vector<ResidueMatrix> cosets;
    unsigned dim = (unsigned)basis.size();
    u64 count = 1;
    for (unsigned i = 0; i < dim; ++i) count *= ell;
    for (u64 idx = 0; idx < count; ++idx) {
      std::array<u64, 16> z{};
      u64 t = idx;
      for (unsigned b = 0; b < dim; ++b) {
        u64 coef = t % ell;
        t /= ell;
        if (coef)
          for (int e = 0; e < d * d; ++e)
            z[(size_t)e] = addmod(z[(size_t)e], mulmod(coef, basis[b][(size_t)e], modk1), modk1);
      }
      ResidueMatrix F = ResidueMatrix::identity(d, ell, k + 1);
      for (int e = 0; e < d * d; ++e)
        F.a[(size_t)e] = addmod(F.a[(size_t)e], mulmod(lk, z[(size_t)e], modk1), modk1);
      cosets.push_back(F);
    }
    for (const auto& M : level) {
      ResidueMatrix lift = hensel_lift_gsp(M, k + 1);
      for (const auto& F : cosets) next.push_back(mat_mul(lift, F));
    }
    level = std::move(next);
  }
  return level;
}

}  // namespace

std::vector<ResidueMatrix> gsp_level1(u64 ell, unsigned g) {
  static std::map<std::pair<u64, unsigned>, std::vector<ResidueMatrix>> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find({ell, g});
  if (it != cache.end()) return it->second;
  GroupSpec spec;
  spec.kind = SpecKind::GSp;
  spec.ell = ell;
  spec.gsp_g = g;
  Int expect = spec.order_at_level(1);
  if (expect > (long)kEnumerationGuard)
    throw CardinalityGuardExceeded("gsp level-1 group exceeds guard");
  int d = (int)(2 * g);
  std::vector<ResidueMatrix> gens;
  // all transvections with v over F_ell
  u64 total = ipow(ell, (unsigned)d);
  for (u64 idx = 1; idx < total; ++idx) {
    std::array<u64, 4> v{};
    u64 t = idx;
    for (int i = 0; i < d; ++i) {
      v[(size_t)i] = t % ell;
      t /= ell;
    }
    gens.push_back(transvection(v, g, ell, 1));
  }
  // similitude generators diag(m, .., m, 1, .., 1)
  for (u64 m = 2; m < ell; ++m) {
    ResidueMatrix D = ResidueMatrix::identity(d, ell, 1);
    for (int i = 0; i < (int)g; ++i) D.at(i, i) = m;
    gens.push_back(D);
  }
  auto out = bfs_closure(gens, kEnumerationGuard);
  if (Int((unsigned long)out.size()) != expect)
    throw std::logic_error("gsp level-1 enumeration does not match the order formula");
  cache[{ell, g}] = out;
  return out;
}

std::vector<ResidueMatrix> enumerate_group(const GroupSpec& spec, unsigned n) {
  u64 ell = spec.ell;
  if (spec.kind != SpecKind::Generated) {
    Int expect = spec.order_at_level(n);
    if (expect > (long)kEnumerationGuard)
      throw CardinalityGuardExceeded("predicted cardinality exceeds guard: " + expect.get_str());
  }
  std::vector<ResidueMatrix> out;
  switch (spec.kind) {
    case SpecKind::GL2Full:
      out = enumerate_gl2(ell, n);
      break;
    case SpecKind::CartanSplit: {
      auto us = units_mod(ell, n);
      for (u64 a : us)
        for (u64 b : us) {
          ResidueMatrix m(2, ell, n);
          m.at(0, 0) = a;
          m.at(1, 1) = b;
          out.push_back(m);
        }
      break;
    }
    case SpecKind::CartanNonsplit: {
      u64 mod = ipow(ell, n);
      for (u64 x = 0; x < mod; ++x)
        for (u64 y = 0; y < mod; ++y) {
          if (x % ell == 0 && y % ell == 0) continue;
          ResidueMatrix m(2, ell, n);
          m.at(0, 0) = x;
          m.at(0, 1) = submod(0, mulmod(spec.cns_d, y, mod), mod);
          m.at(1, 0) = y;
          m.at(1, 1) = submod(x, mulmod(spec.cns_c, y, mod), mod);
          out.push_back(m);
        }
      break;
    }
    case SpecKind::CartanNormalizerSplit: {
      GroupSpec inner = spec;
      inner.kind = SpecKind::CartanSplit;
      out = enumerate_group(inner, n);
      auto us = units_mod(ell, n);
      for (u64 a : us)
        for (u64 b : us) {
          ResidueMatrix m(2, ell, n);
          m.at(0, 1) = a;
          m.at(1, 0) = b;
          out.push_back(m);
        }
      break;
    }
    case SpecKind::CartanNormalizerNonsplit: {
      GroupSpec inner = spec;
      inner.kind = SpecKind::CartanNonsplit;
      out = enumerate_group(inner, n);
      u64 mod = ipow(ell, n);
      for (u64 a = 0; a < mod; ++a)
        for (u64 b = 0; b < mod; ++b) {
          if (a % ell == 0 && b % ell == 0) continue;
          // non-identity coset element [[a, bd - ac], [b, -a]]
          ResidueMatrix m(2, ell, n);
          m.at(0, 0) = a;
          m.at(0, 1) = submod(mulmod(b, spec.cns_d, mod), mulmod(a, spec.cns_c, mod), mod);
          m.at(1, 0) = b;
          m.at(1, 1) = submod(0, a, mod);
          out.push_back(m);
        }
      break;
    }
    case SpecKind::GSp:
      if (spec.gsp_g == 1) {
        out = enumerate_gl2(ell, n);
      } else {
        out = enumerate_gsp(ell, spec.gsp_g, n, kEnumerationGuard);
      }
      break;
    case SpecKind::SplitTorusPair: {
      for (u64 u : units_mod(ell, n)) {
        ResidueMatrix m(2, ell, n);
        m.at(0, 0) = u;
        m.at(1, 1) = u;
        out.push_back(m);
      }
      break;
    }
    case SpecKind::BigTorusS3: {
      for (const auto& sigma : s3_rep())
        for (u64 u : units_mod(ell, n)) {
          ResidueMatrix m = from_i64(sigma, ell, n);
          for (auto& e : m.a) e = mulmod(e, u, m.mod);
          out.push_back(m);
        }
      break;
    }
    case SpecKind::ScalarUnits: {
      for (u64 u : units_mod(ell, n)) {
        ResidueMatrix m(1, ell, n);
        m.at(0, 0) = u;
        out.push_back(m);
      }
      break;
    }
    case SpecKind::Generated: {
      std::vector<ResidueMatrix> gens;
      for (const auto& g : spec.generators) gens.push_back(g.reduce(ell, n));
      out = bfs_closure(gens, kEnumerationGuard);
      break;
    }
  }
  if (spec.kind != SpecKind::Generated) {
    Int expect = spec.order_at_level(n);
    if (Int((unsigned long)out.size()) != expect)
      throw std::logic_error("enumeration does not match the closed-form order for " +
                             spec.to_string());
  }
  return out;
}

DensityInterval density_level(const GroupSpec& spec, unsigned n) {
  auto elems = enumerate_group(spec, n);
  u64 ell = spec.ell;
  int d = spec.dim();
  Int sum_lower = 0;  // sum of ell^{n - ord} over det != 0
  Int sum_upper = 0;  // sum of #im(M - I)
  ResidueMatrix id = ResidueMatrix::identity(d, ell, n);
  for (const auto& M : elems) {
    ResidueMatrix B = mat_sub(M, id);
    u64 det = mat_det(B);
    if (det != 0) {
      unsigned v = (unsigned)ord_ell_u64(det, ell).v;
      sum_lower += pow_int(ell, n - v);
    }
    sum_upper += image_cardinality(B);
  }
  Int size((unsigned long)elems.size());
  DensityInterval di;
  di.level = n;
  di.lower = make_rat(sum_lower, size * pow_int(ell, n));
  di.upper = make_rat(sum_upper, size * pow_int(ell, (unsigned long)d * n));
  return di;
}

namespace {

struct AffKey {
  MatKey m;
  u64 t = 0;
  bool operator==(const AffKey&) const = default;
};
struct AffKeyHash {
  size_t operator()(const AffKey& k) const {
    size_t h = MatKeyHash{}(k.m);
    return h ^ (k.t * 0x2545f4914f6cdd1dull + 0x9e3779b97f4a7c15ull);
  }
};

AffKey affkey(const AffineElement& e) {
  AffKey k;
  k.m = matkey(e.linear);
  for (int i = 0; i < e.linear.d; ++i) k.t |= (e.translation[(size_t)i] & 0xffff) << (16 * i);
  return k;
}

AffineElement aff_mul(const AffineElement& x, const AffineElement& y) {
  AffineElement r;
  r.linear = mat_mul(x.linear, y.linear);
  int d = x.linear.d;
  u64 mod = x.linear.mod;
  for (int i = 0; i < d; ++i) {
    u64 s = x.translation[(size_t)i];
    for (int j = 0; j < d; ++j)
      s = addmod(s, mulmod(x.linear.at(i, j), y.translation[(size_t)j], mod), mod);
    r.translation[(size_t)i] = s;
  }
  return r;
}

}  // namespace

std::vector<AffineElement> affine_closure(const std::vector<AffineElement>& generators) {
  std::unordered_set<AffKey, AffKeyHash> seen;
  std::deque<AffineElement> queue;
  std::vector<AffineElement> out;
  const auto& g0 = generators.front().linear;
  AffineElement id;
  id.linear = ResidueMatrix::identity(g0.d, g0.ell, g0.n);
  seen.insert(affkey(id));
  out.push_back(id);
  queue.push_back(id);
  while (!queue.empty()) {
    AffineElement cur = queue.front();
    queue.pop_front();
    for (const auto& g : generators) {
      AffineElement nx = aff_mul(cur, g);
      if (seen.insert(affkey(nx)).second) {
        out.push_back(nx);
        queue.push_back(nx);
        if (out.size() > kEnumerationGuard)
          throw CardinalityGuardExceeded("affine closure exceeds guard");
      }
    }
  }
  return out;
}

Rat affine_fixed_fraction(const std::vector<AffineElement>& generators, unsigned n) {
  auto elems = affine_closure(generators);
  const auto& l0 = generators.front().linear;
  if (l0.n != n) throw std::invalid_argument("affine_fixed_fraction: generator level mismatch");
  ResidueMatrix id = ResidueMatrix::identity(l0.d, l0.ell, n);
  u64 fixed = 0;
  for (const auto& e : elems) {
    ResidueMatrix B = mat_sub(e.linear, id);
    if (in_image(B, e.translation)) ++fixed;
  }
  return make_rat(Int(fixed), Int((unsigned long)elems.size()));
}

DensityInterval affine_fixed_interval(const std::vector<AffineElement>& generators, unsigned n) {
  auto elems = affine_closure(generators);
  const auto& l0 = generators.front().linear;
  if (l0.n != n) throw std::invalid_argument("affine_fixed_interval: generator level mismatch");
  ResidueMatrix id = ResidueMatrix::identity(l0.d, l0.ell, n);
  u64 fixed = 0, fixed_regular = 0;
  for (const auto& e : elems) {
    ResidueMatrix B = mat_sub(e.linear, id);
    if (in_image(B, e.translation)) {
      ++fixed;
      if (mat_det(B) != 0) ++fixed_regular;
    }
  }
  DensityInterval di;
  di.level = n;
  di.lower = make_rat(Int(fixed_regular), Int((unsigned long)elems.size()));
  di.upper = make_rat(Int(fixed), Int((unsigned long)elems.size()));
  return di;
}

HaarSampler::HaarSampler(const GroupSpec& spec, unsigned n) : spec_(spec), n_(n) {
  if (spec.kind == SpecKind::Generated) throw UnsupportedSpec("haar sampling needs a named spec");
  if (spec.kind == SpecKind::GL2Full || (spec.kind == SpecKind::GSp && spec.gsp_g == 1)) {
    GroupSpec s1 = spec;
    s1.kind = SpecKind::GL2Full;
    level1_ = enumerate_group(s1, 1);
    return;
  }
  if (spec.kind == SpecKind::GSp) {
    level1_ = gsp_level1(spec.ell, spec.gsp_g);
    lie_basis_ = lie_basis_gsp(spec.gsp_g, spec.ell);
    level1_lifts_.reserve(level1_.size());
    for (const auto& M : level1_) level1_lifts_.push_back(hensel_lift_gsp(M, n));
    // kernel factor lifts per sub-level; I + ell^k Z is a genuine member of
    // GSp mod ell^n only for k = n-1 (the lie condition holds mod ell), so
    // every earlier level needs hensel-corrected factors
    ker_lift_.resize(n);
    int d = (int)(2 * spec.gsp_g);
    for (unsigned k = 1; k + 1 < n; ++k) {
      u64 cnt = 1;
      for (size_t i = 0; i < lie_basis_.size(); ++i) cnt *= spec.ell;
      if (cnt > 1u << 22) throw UnsupportedSpec("kernel lift table too large at this level");
      std::vector<ResidueMatrix> lifts;
      lifts.reserve(cnt);
      u64 lk = ipow(spec.ell, k);
      for (u64 idx = 0; idx < cnt; ++idx) {
        ResidueMatrix F = ResidueMatrix::identity(d, spec.ell, n);
        u64 t = idx;
        for (size_t b = 0; b < lie_basis_.size(); ++b) {
          u64 coef = t % spec.ell;
          t /= spec.ell;
          if (coef)
            for (int e = 0; e < d * d; ++e)
              F.a[(size_t)e] =
                  addmod(F.a[(size_t)e], mulmod(mulmod(coef, lk, F.mod), lie_basis_[b][(size_t)e], F.mod),
                         F.mod);
        }
        ResidueMatrix Fk(d, spec.ell, k + 1);
        for (int e = 0; e < d * d; ++e) Fk.a[(size_t)e] = F.a[(size_t)e] % Fk.mod;
        lifts.push_back(hensel_lift_gsp(Fk, n));
      }
      ker_lift_[k] = std::move(lifts);
    }
  }
}

ResidueMatrix HaarSampler::sample(Rng& rng) const {
  u64 ell = spec_.ell;
  u64 mod = ipow(ell, n_);
  switch (spec_.kind) {
    case SpecKind::ScalarUnits: {
      ResidueMatrix m(1, ell, n_);
      u64 u;
      do {
        u = rng.below(mod);
      } while (u % ell == 0);
      m.at(0, 0) = u;
      return m;
    }
    case SpecKind::SplitTorusPair: {
      ResidueMatrix m(2, ell, n_);
      u64 u;
      do {
        u = rng.below(mod);
      } while (u % ell == 0);
      m.at(0, 0) = m.at(1, 1) = u;
      return m;
    }
    case SpecKind::BigTorusS3: {
      auto reps = s3_rep();
      ResidueMatrix m = from_i64(reps[(size_t)rng.below(6)], ell, n_);
      u64 u;
      do {
        u = rng.below(mod);
      } while (u % ell == 0);
      for (auto& e : m.a) e = mulmod(e, u, m.mod);
      return m;
    }
    case SpecKind::CartanSplit:
    case SpecKind::CartanNormalizerSplit: {
      bool coset = spec_.kind == SpecKind::CartanNormalizerSplit && rng.below(2) == 1;
      u64 a, b;
      do {
        a = rng.below(mod);
      } while (a % ell == 0);
      do {
        b = rng.below(mod);
      } while (b % ell == 0);
      ResidueMatrix m(2, ell, n_);
      if (coset) {
        m.at(0, 1) = a;
        m.at(1, 0) = b;
      } else {
        m.at(0, 0) = a;
        m.at(1, 1) = b;
      }
      return m;
    }
    case SpecKind::CartanNonsplit:
    case SpecKind::CartanNormalizerNonsplit: {
      bool coset = spec_.kind == SpecKind::CartanNormalizerNonsplit && rng.below(2) == 1;
      u64 x, y;
      do {
        x = rng.below(mod);
        y = rng.below(mod);
      } while (x % ell == 0 && y % ell == 0);
      ResidueMatrix m(2, ell, n_);
      if (coset) {
        m.at(0, 0) = x;
        m.at(0, 1) = submod(mulmod(y, spec_.cns_d, mod), mulmod(x, spec_.cns_c, mod), mod);
        m.at(1, 0) = y;
        m.at(1, 1) = submod(0, x, mod);
      } else {
        m.at(0, 0) = x;
        m.at(0, 1) = submod(0, mulmod(spec_.cns_d, y, mod), mod);
        m.at(1, 0) = y;
        m.at(1, 1) = submod(x, mulmod(spec_.cns_c, y, mod), mod);
      }
      return m;
    }
    case SpecKind::GL2Full: {
      // uniform level-1 element, then a uniform additive lift of the fiber
      const ResidueMatrix& m1 = level1_[(size_t)rng.below(level1_.size())];
      ResidueMatrix m(2, ell, n_);
      u64 q = mod / ell;
      for (int i = 0; i < 4; ++i)
        m.a[(size_t)i] = (m1.a[(size_t)i] + ell * rng.below(q)) % mod;
      return m;
    }
    case SpecKind::GSp: {
      if (spec_.gsp_g == 1) {
        const ResidueMatrix& m1 = level1_[(size_t)rng.below(level1_.size())];
        ResidueMatrix m(2, ell, n_);
        u64 q = mod / ell;
        for (int i = 0; i < 4; ++i)
          m.a[(size_t)i] = (m1.a[(size_t)i] + ell * rng.below(q)) % mod;
        return m;
      }
      ResidueMatrix m = level1_lifts_[(size_t)rng.below(level1_lifts_.size())];
      int d = m.d;
      for (unsigned k = 1; k < n_; ++k) {
        if (!ker_lift_[k].empty()) {
          u64 idx = rng.below(ker_lift_[k].size());
          m = mat_mul(m, ker_lift_[k][(size_t)idx]);
        } else {
          // exact coset factor I + ell^k Z
          ResidueMatrix F = ResidueMatrix::identity(d, ell, n_);
          u64 lk = ipow(ell, k);
          for (const auto& bz : lie_basis_) {
            u64 coef = rng.below(ell);
            if (coef)
              for (int e = 0; e < d * d; ++e)
                F.a[(size_t)e] =
                    addmod(F.a[(size_t)e], mulmod(mulmod(coef, lk, F.mod), bz[(size_t)e], F.mod),
                           F.mod);
          }
          m = mat_mul(m, F);
        }
      }
      return m;
    }
    default:
      throw UnsupportedSpec("haar sampling not supported for this spec");
  }
}

ResidueMatrix haar_sample(const GroupSpec& spec, unsigned n, u64 seed) {
  HaarSampler s(spec, n);
  Rng rng(seed);
  return s.sample(rng);
}


std::vector<std::array<u64, 16>> gsp_lie_basis(unsigned g, u64 ell) {
  return lie_basis_gsp(g, ell);
}

ResidueMatrix gsp_hensel_lift(const ResidueMatrix& m, unsigned target) {
  return hensel_lift_gsp(m, target);
}

McEstimate density_mc(const GroupSpec& spec, unsigned n, u64 samples, u64 seed, int workers) {
  HaarSampler sampler(spec, n);
  int d = spec.dim();
  u64 ell = spec.ell;
  if (workers < 1) workers = 1;
  std::vector<std::vector<u64>> bucket((size_t)workers, std::vector<u64>(n + 1, 0));
  auto run = [&](int w) {
    Rng rng = worker_rng(seed, (u64)w);
    u64 lo = samples * (u64)w / (u64)workers;
    u64 hi = samples * (u64)(w + 1) / (u64)workers;
    ResidueMatrix id = ResidueMatrix::identity(d, ell, n);
    for (u64 i = lo; i < hi; ++i) {
      ResidueMatrix M = sampler.sample(rng);
      u64 det = mat_det(mat_sub(M, id));
      unsigned v = det == 0 ? n : (unsigned)std::min<u64>(ord_ell_u64(det, ell).v, n);
      bucket[(size_t)w][v]++;
    }
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> ts;
    for (int w = 0; w < workers; ++w) ts.emplace_back(run, w);
    for (auto& t : ts) t.join();
  }
  std::vector<u64> counts(n + 1, 0);
  for (const auto& b : bucket)
    for (unsigned v = 0; v <= n; ++v) counts[v] += b[v];
  double mean = 0, m2 = 0;
  for (unsigned v = 0; v <= n; ++v) {
    double x = std::pow(1.0 / (double)ell, (double)v);
    double w = (double)counts[v] / (double)samples;
    mean += w * x;
    m2 += w * x * x;
  }
  double var = std::max(0.0, m2 - mean * mean);
  McEstimate e;
  e.mean = mean;
  e.half_width_99 = 2.5758293 * std::sqrt(var / (double)samples);
  e.samples = samples;
  return e;
}

}  // namespace ordscan
