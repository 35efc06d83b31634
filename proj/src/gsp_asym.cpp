#include "ordscan/gsp_asym.hpp"

#include <functional>
#include <map>

#include "ordscan/polyp.hpp"

namespace ordscan {

Int sp_order(unsigned g, unsigned n, u64 ell) {
  Int l((unsigned long)ell);
  Int r = pow_int(l, (unsigned long)(n - 1) * (2 * g * g + g));
  for (unsigned j = 1; j <= g; ++j) r *= pow_int(l, 2 * j - 1) * (pow_int(l, 2 * j) - 1);
  return r;
}

Int gl_order(unsigned g, unsigned n, u64 ell) {
  Int l((unsigned long)ell);
  Int r = pow_int(l, (unsigned long)(n - 1) * g * g);
  for (unsigned j = 1; j <= g; ++j) r *= pow_int(l, j - 1) * (pow_int(l, j) - 1);
  return r;
}

Rat decomposition_count_S(unsigned g, unsigned r, unsigned n, u64 ell) {
  if (r > g) throw std::invalid_argument("S(g,r,n): need r <= g");
  Rat s = make_rat(sp_order(g, n, ell), sp_order(r, n, ell) * sp_order(g - r, n, ell));
  if (s.get_den() != 1) throw std::logic_error("S(g,r,n) must be an integer");
  return s;
}

Rat lagrangian_count_L(unsigned g, unsigned n, u64 ell) {
  Int d = gl_order(g, n, ell);
  return make_rat(sp_order(g, n, ell), d * d);
}

Rat a_coeff(unsigned g, bool m_is_one, u64 ell) {
  if (g == 0) return Rat(1);
  Int l((unsigned long)ell);
  if (m_is_one) {
    Int den = 1;
    for (unsigned j = 1; j <= g; ++j) den *= pow_int(l, 2 * j) - 1;
    return make_rat(pow_int(l, (unsigned long)g * g), den);
  }
  Int den = 1;
  for (unsigned j = 1; j <= g; ++j) {
    Int f = pow_int(l, j) - 1;
    den *= f * f;
  }
  return make_rat(Int(1), den);
}

namespace {

// characteristic polynomial mod ell by cofactor expansion on t*I - M
PolyP charpoly_mod(const ResidueMatrix& m, u64 ell) {
  int d = m.d;
  std::vector<PolyP> e((size_t)(d * d), PolyP(ell));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      std::vector<u64> c{submod(0, m.at(i, j) % ell, ell)};
      if (i == j) c.push_back(1);
      e[(size_t)(i * d + j)] = PolyP(ell, c);
    }
  std::function<PolyP(const std::vector<int>&, const std::vector<int>&)> det =
      [&](const std::vector<int>& rows, const std::vector<int>& cols) -> PolyP {
    if (rows.size() == 1) return e[(size_t)(rows[0] * d + cols[0])];
    PolyP acc(ell);
    std::vector<int> subr(rows.begin() + 1, rows.end());
    for (size_t j = 0; j < cols.size(); ++j) {
      std::vector<int> subc;
      for (size_t k = 0; k < cols.size(); ++k)
        if (k != j) subc.push_back(cols[k]);
      PolyP term = e[(size_t)(rows[0] * d + cols[j])] * det(subr, subc);
      acc = (j % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
  };
  std::vector<int> idx;
  for (int i = 0; i < d; ++i) idx.push_back(i);
  return det(idx, idx);
}

u64 multiplier_mod_ell(const ResidueMatrix& m) {
  if (m.d == 2) return mat_det(m) % m.ell;
  return gsp_multiplier(m) % m.ell;
}

struct SliceData {
  std::map<u64, Int> u_count;
  std::map<u64, Int> n_count;
  Int sp_size = 0;
};

const SliceData& slice_data(unsigned g, u64 ell) {
  static std::map<std::pair<unsigned, u64>, SliceData> cache;
  auto it = cache.find({g, ell});
  if (it != cache.end()) return it->second;
  GroupSpec spec;
  spec.kind = g == 1 ? SpecKind::GL2Full : SpecKind::GSp;
  spec.ell = ell;
  spec.gsp_g = g;
  auto elems = enumerate_group(spec, 1);
  SliceData sd;
  sd.sp_size = sp_order(g, 1, ell);
  int d = (int)(2 * g);
  ResidueMatrix id = ResidueMatrix::identity(d, ell, 1);
  for (const auto& x : elems) {
    u64 mult = multiplier_mod_ell(x);
    if (mat_det(mat_sub(x, id)) % ell != 0) sd.n_count[mult] += 1;
    PolyP target(ell, {1});
    PolyP f1(ell, {submod(0, 1, ell), 1});
    PolyP fm(ell, {submod(0, mult, ell), 1});
    for (unsigned j = 0; j < g; ++j) target = target * f1 * fm;
    if (charpoly_mod(x, ell) == target) sd.u_count[mult] += 1;
  }
  return cache[{g, ell}] = sd;
}

u64 nonresidue_rep(u64 ell) { return ell >= 3 ? 2 : 1; }

}  // namespace

std::optional<SliceCoeffs> brute_slice_coeffs(unsigned g, bool m_is_one, u64 ell) {
  if (g == 0) return SliceCoeffs{Rat(1), Rat(1)};
  if (g > 2 || (ell != 2 && ell != 3)) return std::nullopt;
  if (!m_is_one && ell == 2) return std::nullopt;  // single multiplier class mod 2
  const SliceData& sd = slice_data(g, ell);
  u64 m = m_is_one ? 1 : nonresidue_rep(ell);
  SliceCoeffs out;
  Int u = sd.u_count.count(m) ? sd.u_count.at(m) : Int(0);
  Int nn = sd.n_count.count(m) ? sd.n_count.at(m) : Int(0);
  out.a = make_rat(u, sd.sp_size);
  out.b = make_rat(nn, sd.sp_size);
  return out;
}

Rat a_effective(unsigned g, bool m_is_one, u64 ell) {
  if (g == 1) {
    auto bf = brute_slice_coeffs(g, m_is_one, ell);
    if (bf) return bf->a;
  }
  return a_coeff(g, m_is_one, ell);
}

RationalSeries b_coeffs(bool m_is_one, u64 ell, unsigned G) {
  if (G < 1) throw std::invalid_argument("b_coeffs: G >= 1");
  std::vector<Rat> a(G + 1), c(G + 1), b(G + 1);
  for (unsigned g = 0; g <= G; ++g) a[g] = a_effective(g, m_is_one, ell);
  c[0] = Rat(1);
  for (unsigned g = 1; g <= G; ++g) {
    Rat s(0);
    for (unsigned j = 1; j <= g; ++j) s += a[j] * c[g - j];
    c[g] = -s;
  }
  b[0] = c[0];
  for (unsigned g = 1; g <= G; ++g) b[g] = b[g - 1] + c[g];
  RationalSeries rs;
  rs.coeffs = b;
  rs.order = G;
  return rs;
}

LimitReport b_limit(bool m_is_one, u64 ell, unsigned G) {
  if (G < 4) throw std::invalid_argument("b_limit: G >= 4");
  std::vector<Rat> a(G + 1), c(G + 1);
  for (unsigned g = 0; g <= G; ++g) a[g] = a_effective(g, m_is_one, ell);
  c[0] = Rat(1);
  Rat sum = c[0];
  int nondecreasing_run = 0;
  for (unsigned g = 1; g <= G; ++g) {
    Rat s(0);
    for (unsigned j = 1; j <= g; ++j) s += a[j] * c[g - j];
    c[g] = -s;
    sum += c[g];
    if (g >= 2 && abs(c[g]) >= abs(c[g - 1])) {
      if (++nondecreasing_run >= 3)
        throw DivergenceDetected("increments |c_g| failed to decrease three times in a row");
    } else {
      nondecreasing_run = 0;
    }
  }
  LimitReport lr;
  lr.value = sum;
  lr.increments = c;
  lr.last_increment_abs = abs(c[G]);
  lr.geometric_decay = true;
  Rat inv_ell = make_rat(1, (long)ell);
  for (unsigned g = 3; g < G; ++g)
    if (abs(c[g + 1]) > Rat(abs(c[g]) * inv_ell)) lr.geometric_decay = false;
  return lr;
}

ConvolutionReport convolution_check(unsigned g_max, u64 ell) {
  ConvolutionReport rep;
  rep.all_pass = true;
  bool brute_arm = (ell == 2 || ell == 3);
  for (int mi = 0; mi < (ell > 2 ? 2 : 1); ++mi) {
    bool m_is_one = mi == 0;
    u64 m_rep = m_is_one ? 1 : nonresidue_rep(ell);
    std::vector<Rat> a(g_max + 1), b(g_max + 1);
    std::vector<bool> is_brute(g_max + 1, false);
    RationalSeries series = b_coeffs(m_is_one, ell, std::max(1u, g_max));
    for (unsigned g = 0; g <= g_max; ++g) {
      auto bf = brute_arm ? brute_slice_coeffs(g, m_is_one, ell) : std::nullopt;
      if (bf) {
        a[g] = bf->a;
        b[g] = bf->b;
        is_brute[g] = true;
        Rat closed_a = a_coeff(g, m_is_one, ell);
        if (closed_a != bf->a) rep.discrepancies.push_back({g, m_rep, closed_a, bf->a});
      } else {
        a[g] = a_coeff(g, m_is_one, ell);
        b[g] = series.coeffs[g];
      }
    }
    for (unsigned g = 0; g <= g_max; ++g) {
      Rat s(0);
      bool brute_row = true;
      for (unsigned r = 0; r <= g; ++r) {
        s += a[r] * b[g - r];
        brute_row = brute_row && is_brute[r] && is_brute[g - r];
      }
      ConvolutionRow row{g, m_rep, s, brute_row, s == 1};
      rep.all_pass = rep.all_pass && row.pass;
      rep.rows.push_back(row);
    }
  }
  return rep;
}

std::vector<GapRow> finite_level_gap_check(u64 ell, unsigned n_max) {
  std::vector<GapRow> out;
  GroupSpec spec;
  spec.kind = SpecKind::GL2Full;
  spec.ell = ell;
  Rat target = gl2_density(ell);
  for (unsigned n = 1; n <= n_max; ++n) {
    auto d = density_level(spec, n);
    Rat gap = abs(Rat(target - d.upper));
    Rat bound = make_rat(Int(1), pow_int(ell, n));
    out.push_back({n, gap, bound, gap < bound});
  }
  return out;
}

unsigned eps_gl2(const ResidueMatrix& m) {
  u64 ell = m.ell;
  unsigned n = m.n;
  ResidueMatrix id = ResidueMatrix::identity(2, ell, n);
  ResidueMatrix B = mat_sub(m, id);
  unsigned k = n;
  for (int i = 0; i < 4; ++i)
    k = std::min(k, (unsigned)std::min<u64>(ord_ell_u64(B.a[(size_t)i], ell).v, n));
  if (k == n) return 2 * n;  // M = I at this level: best lift has det = l^{2n} * unit
  unsigned nk = n - k;
  u64 lk = 1;
  for (unsigned i = 0; i < k; ++i) lk *= ell;
  ResidueMatrix Y(2, ell, nk);
  for (int i = 0; i < 4; ++i) Y.a[(size_t)i] = (B.a[(size_t)i] / lk) % Y.mod;
  u64 dety = mat_det(Y);
  if (dety != 0) return 2 * k + (unsigned)ord_ell_u64(dety, ell).v;
  // adj(Y) != 0 mod ell for a nonzero 2x2, so valuation exactly nk is reachable
  return 2 * k + nk;
}

Rat d_coefficient_g1(bool m_is_one, u64 ell, unsigned n) {
  if (!m_is_one && ell == 2) throw std::invalid_argument("no second multiplier class mod 2");
  GroupSpec spec;
  spec.kind = SpecKind::GL2Full;
  spec.ell = ell;
  auto elems = enumerate_group(spec, n);
  u64 m_rep = m_is_one ? 1 : nonresidue_rep(ell);
  Rat acc(0);
  Int slice = 0;
  for (const auto& x : elems) {
    if (mat_det(x) % ell != m_rep) continue;
    ++slice;
    u64 tr = addmod(x.at(0, 0) % ell, x.at(1, 1) % ell, ell);
    if (tr != (1 + m_rep) % ell) continue;
    acc += make_rat(Int(1), pow_int(ell, eps_gl2(x)));
  }
  return acc / Rat(make_rat(slice, Int(1)));
}

DensityInterval d_coefficient_g2_l2() {
  auto elems = gsp_level1(2, 2);
  auto basis = gsp_lie_basis(2, 2);
  ResidueMatrix id4 = ResidueMatrix::identity(4, 2, 2);
  Int n_eps1 = 0, n_deep = 0;
  Rat acc(0);
  PolyP target(2, {1});
  PolyP f1(2, {1, 1});
  for (int j = 0; j < 4; ++j) target = target * f1;
  for (const auto& x : elems) {
    // U-slice only: char = (T-1)^4 mod 2; these all have det(x - I) even
    if (charpoly_mod(x, 2) != target) continue;
    // lift to Z/4; det over the fiber is det0 + 2*linear(Z), so probing the
    // base and each basis direction decides whether valuation 1 is reachable
    ResidueMatrix lift = gsp_hensel_lift(x, 2);
    bool eps1 = false;
    u64 det0 = mat_det(mat_sub(lift, id4));
    if (det0 % 4 == 2) eps1 = true;
    for (size_t b = 0; !eps1 && b < basis.size(); ++b) {
      ResidueMatrix F = ResidueMatrix::identity(4, 2, 2);
      for (int e = 0; e < 16; ++e)
        F.a[(size_t)e] = addmod(F.a[(size_t)e], mulmod(2, basis[b][(size_t)e], 4), 4);
      u64 det = mat_det(mat_sub(mat_mul(lift, F), id4));
      if (det % 4 == 2) eps1 = true;
    }
    if (eps1) {
      ++n_eps1;
      acc += make_rat(1, 2);
    } else {
      ++n_deep;
    }
  }
  // elements with eps >= 2 contribute between 0 and 1/4 each
  DensityInterval di;
  di.level = 1;
  Int sp = sp_order(2, 1, 2);
  di.lower = Rat(acc) / Rat(make_rat(sp, Int(1)));
  di.upper = Rat(acc + make_rat(n_deep, 4)) / Rat(make_rat(sp, Int(1)));
  return di;
}

}  // namespace ordscan
