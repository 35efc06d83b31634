#include "ordscan/genus2.hpp"

#include <unordered_map>

#include "ordscan/curves.hpp"
#include "ordscan/qring.hpp"

namespace ordscan {

Genus2CurveQ Genus2CurveQ::from_sextic(const PolyQ& f) {
  if (f.deg() != 6) throw std::invalid_argument("genus2: f must have degree 6");
  if (!is_rational_square(f.lc()))
    throw std::invalid_argument("genus2: leading coefficient must be a square");
  if (ordscan::discriminant(f) == 0) throw std::invalid_argument("genus2: f must be squarefree");
  Genus2CurveQ C;
  C.f = f;
  Rat h3 = make_rat(isqrt_int(f.lc().get_num()), isqrt_int(f.lc().get_den()));
  Rat h2 = f.coeff(5) / (2 * h3);
  Rat h1 = Rat(f.coeff(4) - h2 * h2) / (2 * h3);
  Rat h0 = Rat(f.coeff(3) - 2 * h2 * h1) / (2 * h3);
  C.H = PolyQ({h0, h1, h2, h3});
  C.r = f - C.H * C.H;
  if (C.r.deg() > 2) throw std::logic_error("genus2: polynomial part of sqrt(f) is wrong");
  return C;
}

std::optional<Genus2CurveP> reduce_genus2(const Genus2CurveQ& C, u64 p) {
  bool ok = true;
  auto fc = reduce_coeffs_mod_p(C.f, p, &ok);
  if (!ok) return std::nullopt;
  auto hc = reduce_coeffs_mod_p(C.H, p, &ok);
  if (!ok) return std::nullopt;
  Genus2CurveP R;
  R.p = p;
  R.f = PolyP(p, fc);
  R.H = PolyP(p, hc);
  if (R.f.deg() != 6) return std::nullopt;  // p divides the leading coefficient
  Rat disc = ordscan::discriminant(C.f);
  if (mpz_divisible_ui_p(disc.get_num().get_mpz_t(), (unsigned long)p)) return std::nullopt;
  R.r = R.f - R.H * R.H;
  if (R.r.is_zero() || R.r.deg() > 2) return std::nullopt;
  return R;
}

BalancedDivisor Jacobian::identity() const {
  BalancedDivisor d;
  d.u = PolyP::constant(C.p, 1);
  d.v = PolyP::zero(C.p);
  d.n = 1;
  return d;
}

bool Jacobian::is_identity(const BalancedDivisor& d) const {
  return d.u.deg() == 0 && d.n == 1;
}

bool Jacobian::is_valid(const BalancedDivisor& d) const {
  if (d.u.is_zero() || d.u.lc() != 1) return false;
  if (d.u.deg() > 2) return false;
  if (!d.v.is_zero() && d.v.deg() >= d.u.deg()) return false;
  if (d.n < 0 || d.n > 2 - d.u.deg()) return false;
  PolyP rem = (C.f - d.v * d.v) % d.u;
  return rem.is_zero();
}

BalancedDivisor Jacobian::neg(const BalancedDivisor& d) const {
  BalancedDivisor r;
  r.u = d.u;
  r.v = d.u.deg() == 0 ? PolyP::zero(C.p) : (PolyP::zero(C.p) - d.v) % d.u;
  r.n = 2 - d.u.deg() - d.n;
  return r;
}

namespace {

struct RedState {
  PolyP u, v;
  long a, b, c;  // class = [E(u,v) + a inf+ + b inf- - c (inf+ + inf-)]
};

// order of y - vt at the infinite points (negative = pole)
long ord_inf_plus(const PolyP& vt, const Genus2CurveP& C) {
  PolyP diff = C.H - vt;
  if (diff.is_zero()) return 3 - C.r.deg();
  return -(long)diff.deg();
}
long ord_inf_minus(const PolyP& vt, const Genus2CurveP& C) {
  PolyP sum = C.H + vt;
  if (sum.is_zero()) return 3 - C.r.deg();
  return -(long)sum.deg();
}

// one reduction step through the function y - vt, with vt = v mod u adapted
// to +H (plus) or to -H
void reduction_step(RedState& s, const Genus2CurveP& C, bool plus) {
  PolyP vt = plus ? C.H + ((s.v - C.H) % s.u)
                  : (PolyP::zero(C.p) - C.H) + ((s.v + C.H) % s.u);
  s.a -= ord_inf_plus(vt, C);
  s.b -= ord_inf_minus(vt, C);
  auto [q, rem] = divmod(C.f - vt * vt, s.u);
  if (!rem.is_zero()) throw std::logic_error("genus2 reduction: u does not divide f - v^2");
  PolyP unew = monic(q);
  s.c += unew.deg();
  s.v = unew.deg() == 0 ? PolyP::zero(C.p) : (PolyP::zero(C.p) - vt) % unew;
  s.u = unew;
}

}  // namespace

BalancedDivisor Jacobian::add(const BalancedDivisor& d1, const BalancedDivisor& d2) const {
  u64 p = C.p;
  // cantor composition of the affine parts
  PolyP e1(p), e2(p), c1(p), c2(p);
  PolyP g1 = xgcd(d1.u, d2.u, e1, e2);
  PolyP g = xgcd(g1, d1.v + d2.v, c1, c2);
  PolyP s1 = c1 * e1, s2 = c1 * e2, s3 = c2;
  auto [u, ur] = divmod(d1.u * d2.u, g * g);
  if (!ur.is_zero()) throw std::logic_error("genus2 compose: gcd^2 does not divide u1 u2");
  PolyP num = s1 * d1.u * d2.v + s2 * d2.u * d1.v + s3 * (d1.v * d2.v + C.f);
  auto [vq, vr] = divmod(num, g);
  if (!vr.is_zero()) throw std::logic_error("genus2 compose: v numerator not divisible by gcd");
  u = monic(u);
  PolyP v = u.deg() == 0 ? PolyP::zero(p) : vq % u;

  RedState s;
  s.u = u;
  s.v = v;
  s.a = d1.n + d2.n;
  s.b = (2 - d1.u.deg() - d1.n) + (2 - d2.u.deg() - d2.n);
  s.c = 2 - g.deg();

  while (s.u.deg() > 2) reduction_step(s, C, true);
  int guard = 0;
  while (true) {
    long n = s.a - s.c + 1;
    if (n > 2 - s.u.deg()) {
      reduction_step(s, C, true);  // moves weight from inf+ to inf-
    } else if (n < 0) {
      reduction_step(s, C, false);
    } else {
      break;
    }
    if (++guard > 16) throw std::logic_error("genus2 balance loop did not terminate");
  }
  BalancedDivisor out;
  out.u = s.u;
  out.v = s.u.deg() == 0 ? PolyP::zero(p) : s.v % s.u;
  out.n = (int)(s.a - s.c + 1);
  return out;
}

BalancedDivisor Jacobian::mul(Int k, const BalancedDivisor& d) const {
  BalancedDivisor base = d;
  if (k < 0) {
    k = -k;
    base = neg(base);
  }
  BalancedDivisor acc = identity();
  while (k > 0) {
    if (mpz_odd_p(k.get_mpz_t())) acc = add(acc, base);
    base = add(base, base);
    k >>= 1;
  }
  return acc;
}

BalancedDivisor Jacobian::from_infinity_minus_point(u64 x0, u64 y0, int sign) const {
  // [inf^sign - P] = [Pbar + n inf+ + (1-n) inf- - D_inf], n = 1 for the plus
  // branch, n = 0 for the minus branch (Pbar the hyperelliptic conjugate)
  u64 p = C.p;
  if (eval(C.f, x0) != mulmod(y0 % p, y0 % p, p))
    throw std::invalid_argument("from_infinity_minus_point: point not on the curve");
  BalancedDivisor d;
  d.u = PolyP(p, {submod(0, x0 % p, p), 1});
  d.v = PolyP(p, {submod(0, y0 % p, p)});
  d.n = sign > 0 ? 1 : 0;
  return d;
}

u64 Jacobian::key(const BalancedDivisor& d) const {
  u64 h = 1469598103934665603ull;
  auto mix = [&](u64 x) {
    h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    h *= 1099511628211ull;
  };
  mix((u64)d.u.deg() + 1);
  for (int i = 0; i <= d.u.deg(); ++i) mix(d.u.coeff(i));
  for (int i = 0; i < 2; ++i) mix(d.v.coeff(i));
  mix((u64)d.n);
  return h;
}

u64 genus2_curve_count(const Genus2CurveP& C) {
  u64 p = C.p;
  std::vector<signed char> chi(p, -1);
  chi[0] = 0;
  for (u64 t = 1; t <= p / 2; ++t) chi[mulmod(t, t, p)] = 1;
  i64 cnt = 2 + (i64)p;  // two rational points at infinity (lc is a square)
  for (u64 x = 0; x < p; ++x) cnt += chi[eval(C.f, x)];
  return (u64)cnt;
}

u64 genus2_curve_count_ext(const Genus2CurveP& C) {
  u64 p = C.p;
  u64 a = 0;
  for (u64 cand = 2; cand < p; ++cand)
    if (legendre(cand, p) == p - 1) {
      a = cand;
      break;
    }
  if (a == 0) throw std::logic_error("no quadratic non-residue found");
  QRing R(p, {submod(0, a, p), 0});
  Int half((long)((p * p - 1) / 2));
  i64 cnt = 2;
  for (u64 c0 = 0; c0 < p; ++c0)
    for (u64 c1 = 0; c1 < p; ++c1) {
      QRingElem x = qr_from(R, c0, c1);
      QRingElem acc = qr_from(R, C.f.coeff(6));
      for (int i = 5; i >= 0; --i) acc = qr_add(R, qr_mul(R, acc, x), qr_from(R, C.f.coeff(i)));
      if (acc == qr_from(R, 0)) {
        cnt += 1;
      } else if (qr_pow(R, acc, half) == qr_one(R)) {
        cnt += 2;
      }
    }
  return (u64)cnt;
}

Int genus2_jacobian_order(const Genus2CurveP& C) {
  i64 p = (i64)C.p;
  i64 N1 = (i64)genus2_curve_count(C);
  i64 N2 = (i64)genus2_curve_count_ext(C);
  i64 s1 = p + 1 - N1;
  i64 s2 = (N2 - p * p - 1 + s1 * s1) / 2;
  return Int(p) * p + 1 - Int(s1) * (p + 1) + s2;
}

std::vector<BalancedDivisor> enumerate_jacobian(const Jacobian& J) {
  u64 p = J.C.p;
  std::vector<BalancedDivisor> out;
  for (int n = 0; n <= 2; ++n) {
    BalancedDivisor d;
    d.u = PolyP::constant(p, 1);
    d.v = PolyP::zero(p);
    d.n = n;
    out.push_back(d);
  }
  for (u64 x0 = 0; x0 < p; ++x0) {
    u64 fx = eval(J.C.f, x0);
    for (u64 y0 = 0; y0 < p; ++y0) {
      if (mulmod(y0, y0, p) != fx) continue;
      for (int n = 0; n <= 1; ++n) {
        BalancedDivisor d;
        d.u = PolyP(p, {submod(0, x0, p), 1});
        d.v = PolyP(p, {y0});
        d.n = n;
        out.push_back(d);
      }
    }
  }
  for (u64 s = 0; s < p; ++s)
    for (u64 t = 0; t < p; ++t) {
      PolyP u(p, {t, s, 1});
      for (u64 v1 = 0; v1 < p; ++v1)
        for (u64 v0 = 0; v0 < p; ++v0) {
          PolyP v(p, {v0, v1});
          if (((J.C.f - v * v) % u).is_zero()) {
            BalancedDivisor d;
            d.u = u;
            d.v = v;
            d.n = 0;
            out.push_back(d);
          }
        }
    }
  return out;
}

Int genus2_bsgs_annihilator(const Jacobian& J, const BalancedDivisor& D, const Int& A,
                            const Int& B) {
  if (A > B || A < 1) throw std::invalid_argument("genus2 bsgs: bad interval");
  if (J.is_identity(D)) return A;
  Int width = B - A + 1;
  u64 m = (u64)isqrt_int(width).get_ui() + 1;
  std::unordered_map<u64, u64> table;
  table.reserve((size_t)m * 2);
  BalancedDivisor cur = J.identity();
  for (u64 j = 0; j < m; ++j) {
    table.emplace(J.key(cur), j);
    cur = J.add(cur, D);
  }
  BalancedDivisor negmD = J.neg(cur);
  BalancedDivisor R = J.neg(J.mul(A, D));
  for (Int i = 0; A + i * (long)m <= B; i += 1) {
    auto it = table.find(J.key(R));
    if (it != table.end()) {
      Int e = A + i * (long)m + (long)it->second;
      if (e >= A && e <= B && J.is_identity(J.mul(e, D))) return e;
    }
    R = J.add(R, negmD);
  }
  throw NotFound("genus2 bsgs: no annihilator in the interval");
}

}  // namespace ordscan
