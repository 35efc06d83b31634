#include "ordscan/curves.hpp"

#include <map>
#include <unordered_map>
#include <vector>

namespace ordscan {

bool WeierstrassQ::on_curve(const EcPointQ& p) const {
  if (p.infinity) return true;
  Rat lhs = p.y * p.y + a1 * p.x * p.y + a3 * p.y;
  Rat rhs = p.x * p.x * p.x + a2 * p.x * p.x + a4 * p.x + a6;
  return lhs == rhs;
}

EcPointQ WeierstrassQ::neg(const EcPointQ& p) const {
  if (p.infinity) return p;
  return EcPointQ::affine(p.x, Rat(-p.y - a1 * p.x - a3));
}

EcPointQ WeierstrassQ::add(const EcPointQ& p, const EcPointQ& q) const {
  if (p.infinity) return q;
  if (q.infinity) return p;
  if (p.x == q.x && q.y == Rat(-p.y - a1 * p.x - a3)) return EcPointQ::O();
  Rat lambda, nu;
  if (p.x != q.x) {
    lambda = Rat(q.y - p.y) / Rat(q.x - p.x);
    nu = Rat(p.y * q.x - q.y * p.x) / Rat(q.x - p.x);
  } else {
    Rat den = 2 * p.y + a1 * p.x + a3;
    lambda = Rat(3 * p.x * p.x + 2 * a2 * p.x + a4 - a1 * p.y) / den;
    nu = Rat(-(p.x * p.x * p.x) + a4 * p.x + 2 * a6 - a3 * p.y) / den;
  }
  Rat x3 = lambda * lambda + a1 * lambda - a2 - p.x - q.x;
  Rat y3 = -(lambda + a1) * x3 - nu - a3;
  return EcPointQ::affine(x3, y3);
}

EcPointQ WeierstrassQ::mul(const Int& k, const EcPointQ& p) const {
  Int n = k;
  EcPointQ base = p;
  if (n < 0) {
    n = -n;
    base = neg(base);
  }
  EcPointQ acc = EcPointQ::O();
  while (n > 0) {
    if (mpz_odd_p(n.get_mpz_t())) acc = add(acc, base);
    base = add(base, base);
    n >>= 1;
  }
  return acc;
}

bool WeierstrassP::on_curve(const EcPointP& pt) const {
  if (pt.infinity) return true;
  u64 lhs = addmod(mulmod(pt.y, pt.y, p),
                   addmod(mulmod(mulmod(a1, pt.x, p), pt.y, p), mulmod(a3, pt.y, p), p), p);
  u64 x2 = mulmod(pt.x, pt.x, p);
  u64 rhs = addmod(addmod(mulmod(x2, pt.x, p), mulmod(a2, x2, p), p),
                   addmod(mulmod(a4, pt.x, p), a6 % p, p), p);
  return lhs == rhs;
}

EcPointP WeierstrassP::neg(const EcPointP& pt) const {
  if (pt.infinity) return pt;
  return EcPointP::affine(pt.x, submod(0, addmod(pt.y, addmod(mulmod(a1, pt.x, p), a3, p), p), p));
}

EcPointP WeierstrassP::add(const EcPointP& A, const EcPointP& B) const {
  if (A.infinity) return B;
  if (B.infinity) return A;
  u64 negy = submod(0, addmod(A.y, addmod(mulmod(a1, A.x, p), a3, p), p), p);
  if (A.x == B.x && B.y == negy) return EcPointP::O();
  u64 lambda, nu;
  if (A.x != B.x) {
    u64 inv = invmod(submod(B.x, A.x, p), p);
    lambda = mulmod(submod(B.y, A.y, p), inv, p);
    nu = mulmod(submod(mulmod(A.y, B.x, p), mulmod(B.y, A.x, p), p), inv, p);
  } else {
    u64 den = addmod(addmod(A.y, A.y, p), addmod(mulmod(a1, A.x, p), a3, p), p);
    u64 inv = invmod(den, p);
    u64 x2 = mulmod(A.x, A.x, p);
    u64 num = addmod(addmod(mulmod(3 % p, x2, p), mulmod(mulmod(2 % p, a2, p), A.x, p), p),
                     submod(a4 % p, mulmod(a1, A.y, p), p), p);
    lambda = mulmod(num, inv, p);
    u64 nun = addmod(submod(addmod(mulmod(a4, A.x, p), mulmod(2 % p, a6, p), p),
                            mulmod(x2, A.x, p), p),
                     submod(0, mulmod(a3, A.y, p), p), p);
    nu = mulmod(nun, inv, p);
  }
  u64 x3 = submod(submod(addmod(mulmod(lambda, lambda, p), mulmod(a1, lambda, p), p),
                         addmod(a2 % p, A.x, p), p),
                  B.x, p);
  u64 y3 = submod(submod(0, mulmod(addmod(lambda, a1, p), x3, p), p), addmod(nu, a3 % p, p), p);
  return EcPointP::affine(x3, y3);
}

EcPointP WeierstrassP::mul(Int k, EcPointP pt) const {
  if (k < 0) {
    k = -k;
    pt = neg(pt);
  }
  EcPointP acc = EcPointP::O();
  while (k > 0) {
    if (mpz_odd_p(k.get_mpz_t())) acc = add(acc, pt);
    pt = add(pt, pt);
    k >>= 1;
  }
  return acc;
}

std::optional<WeierstrassP> reduce_curve(const WeierstrassQ& E, u64 p) {
  auto reduce_one = [&](const Rat& q, u64& out) -> bool {
    if (mpz_divisible_ui_p(q.get_den().get_mpz_t(), (unsigned long)p)) return false;
    Int num = q.get_num() % (long)p;
    if (num < 0) num += (long)p;
    out = mulmod(num.get_ui(), invmod(mpz_fdiv_ui(q.get_den().get_mpz_t(), (unsigned long)p), p),
                 p);
    return true;
  };
  WeierstrassP r;
  r.p = p;
  if (!reduce_one(E.a1, r.a1) || !reduce_one(E.a2, r.a2) || !reduce_one(E.a3, r.a3) ||
      !reduce_one(E.a4, r.a4) || !reduce_one(E.a6, r.a6))
    return std::nullopt;
  Rat disc = E.discriminant();
  Int dn = disc.get_num();
  if (mpz_divisible_ui_p(dn.get_mpz_t(), (unsigned long)p)) return std::nullopt;
  return r;
}

u64 ec_count_points(const WeierstrassP& E) {
  u64 p = E.p;
  if (p <= 3) {
    u64 cnt = 1;
    for (u64 x = 0; x < p; ++x)
      for (u64 y = 0; y < p; ++y)
        if (E.on_curve(EcPointP::affine(x, y))) ++cnt;
    return cnt;
  }
  std::vector<signed char> chi(p, -1);
  chi[0] = 0;
  for (u64 t = 1; t <= p / 2; ++t) chi[mulmod(t, t, p)] = 1;
  u64 b2 = addmod(mulmod(E.a1, E.a1, p), mulmod(4 % p, E.a2, p), p);
  u64 b4 = addmod(addmod(E.a4, E.a4, p), mulmod(E.a1, E.a3, p), p);
  u64 b6 = addmod(mulmod(E.a3, E.a3, p), mulmod(4 % p, E.a6, p), p);
  i64 cnt = 1 + (i64)p;
  for (u64 x = 0; x < p; ++x) {
    // g(x) = 4x^3 + b2 x^2 + 2 b4 x + b6 via horner
    u64 g = addmod(mulmod(addmod(mulmod(addmod(mulmod(4 % p, x, p), b2, p), x, p),
                                 addmod(b4, b4, p), p),
                          x, p),
                   b6, p);
    cnt += chi[g];
  }
  return (u64)cnt;
}

i64 ec_trace(const WeierstrassP& E) { return (i64)(E.p + 1) - (i64)ec_count_points(E); }

namespace {

u64 pt_key(const EcPointP& pt, u64 p) { return pt.infinity ? p * p + 1 : pt.x * p + pt.y; }

}  // namespace

Int ec_bsgs_annihilator(const WeierstrassP& E, const EcPointP& P, const Int& A, const Int& B) {
  if (A > B || A < 1) throw std::invalid_argument("ec_bsgs_annihilator: bad interval");
  if (P.infinity) return A;
  Int width = B - A + 1;
  u64 m = (u64)isqrt_int(width).get_ui() + 1;
  std::unordered_map<u64, u64> table;
  table.reserve((size_t)m * 2);
  EcPointP cur = EcPointP::O();
  for (u64 j = 0; j < m; ++j) {
    table.emplace(pt_key(cur, E.p), j);
    cur = E.add(cur, P);
  }
  // giant steps: if -A*P - i*(m*P) = j*P then (A + im + j) P = O
  EcPointP negmP = E.neg(cur);
  EcPointP R = E.neg(E.mul(A, P));
  for (Int i = 0; A + i * (long)m <= B; i += 1) {
    auto it = table.find(pt_key(R, E.p));
    if (it != table.end()) {
      Int e = A + i * (long)m + (long)it->second;
      if (e >= A && e <= B) {
        if (!E.mul(e, P).infinity) throw std::logic_error("bsgs: annihilator failed recheck");
        return e;
      }
    }
    R = E.add(R, negmP);
  }
  throw NotFound("no annihilator in the interval");
}

namespace {

// psi_m in the (polynomial in x, pending 2y factor) representation for the
// short curve y^2 = x^3 + ax + b
struct Psi {
  PolyQ poly;
  bool has_y;
};

Psi psi_rec(const Rat& a, const Rat& b, unsigned m, std::map<unsigned, Psi>& memo) {
  auto it = memo.find(m);
  if (it != memo.end()) return it->second;
  PolyQ F({b, a, Rat(0), Rat(1)});
  PolyQ four_F = Rat(4) * F;  // (2y)^2
  Psi out;
  if (m == 0) {
    out = {PolyQ(), false};
  } else if (m == 1) {
    out = {PolyQ::constant(Rat(1)), false};
  } else if (m == 2) {
    out = {PolyQ::constant(Rat(1)), true};
  } else if (m == 3) {
    out = {PolyQ({-(a * a), Rat(12) * b, Rat(6) * a, Rat(0), Rat(3)}), false};
  } else if (m == 4) {
    out = {Rat(2) * PolyQ({-(Rat(8) * b * b) - a * a * a, Rat(-4) * a * b, Rat(-5) * (a * a),
                           Rat(20) * b, Rat(5) * a, Rat(0), Rat(1)}),
           true};
  } else {
    auto lift_even_pairs = [&](PolyQ t, int ycount, int& rest) {
      while (ycount >= 2) {
        t = t * four_F;
        ycount -= 2;
      }
      rest = ycount;
      return t;
    };
    if (m % 2 == 1) {
      unsigned k = (m - 1) / 2;
      Psi pk = psi_rec(a, b, k, memo), pk1 = psi_rec(a, b, k + 1, memo),
          pk2 = psi_rec(a, b, k + 2, memo), pkm1 = psi_rec(a, b, k - 1, memo);
      // psi_{2k+1} = psi_{k+2} psi_k^3 - psi_{k-1} psi_{k+1}^3
      int y1 = (pk2.has_y ? 1 : 0) + 3 * (pk.has_y ? 1 : 0);
      int y2 = (pkm1.has_y ? 1 : 0) + 3 * (pk1.has_y ? 1 : 0);
      int r1 = 0, r2 = 0;
      PolyQ t1 = lift_even_pairs(pk2.poly * pk.poly * pk.poly * pk.poly, y1, r1);
      PolyQ t2 = lift_even_pairs(pkm1.poly * pk1.poly * pk1.poly * pk1.poly, y2, r2);
      if (r1 != 0 || r2 != 0) throw std::logic_error("odd psi carries a stray y factor");
      out = {t1 - t2, false};
    } else {
      unsigned k = m / 2;
      Psi pk = psi_rec(a, b, k, memo), pk1 = psi_rec(a, b, k + 1, memo),
          pk2 = psi_rec(a, b, k + 2, memo), pkm1 = psi_rec(a, b, k - 1, memo),
          pkm2 = psi_rec(a, b, k - 2, memo);
      // psi_{2k} = psi_k (psi_{k+2} psi_{k-1}^2 - psi_{k-2} psi_{k+1}^2) / (2y);
      // the numerator always carries (2y)^2, of which one factor survives
      int y1 = (pk.has_y ? 1 : 0) + (pk2.has_y ? 1 : 0) + 2 * (pkm1.has_y ? 1 : 0);
      int y2 = (pk.has_y ? 1 : 0) + (pkm2.has_y ? 1 : 0) + 2 * (pk1.has_y ? 1 : 0);
      if (y1 != 2 || y2 != 2) throw std::logic_error("even psi: unexpected y powers");
      PolyQ t1 = pk2.poly * pkm1.poly * pkm1.poly;
      PolyQ t2 = pkm2.poly * pk1.poly * pk1.poly;
      out = {pk.poly * (t1 - t2), true};
    }
  }
  memo[m] = out;
  return out;
}

}  // namespace

PolyQ division_poly_x(const Rat& a, const Rat& b, unsigned m, bool& even_part) {
  std::map<unsigned, Psi> memo;
  Psi r = psi_rec(a, b, m, memo);
  even_part = r.has_y;
  return r.poly;
}

PolyQ torsion_polynomial(const WeierstrassQ& E, unsigned m) {
  if (m == 2) {
    if (E.a1 == 0 && E.a2 == 0 && E.a3 == 0) return PolyQ({E.a6, E.a4, Rat(0), Rat(1)});
    return PolyQ({E.b6(), 2 * E.b4(), E.b2(), Rat(4)});
  }
  if (!(E.a1 == 0 && E.a2 == 0 && E.a3 == 0))
    throw std::invalid_argument("torsion_polynomial: m >= 3 needs the short model");
  Rat a = E.a4, b = E.a6;
  bool even = false;
  if (m == 3) return division_poly_x(a, b, 3, even);
  if (m == 4) {
    // psi_4 = (2y) * 2 * (sextic); stripping the 2y factor removes the
    // 2-torsion part, leaving exactly the order-4 x-coordinates
    PolyQ p4 = division_poly_x(a, b, 4, even);
    if (!even) throw std::logic_error("psi_4 should carry a 2y factor");
    return Rat(Rat(1) / p4.lc()) * p4;
  }
  if (m == 9) {
    PolyQ p9 = division_poly_x(a, b, 9, even);
    PolyQ p3 = division_poly_x(a, b, 3, even);
    auto [q, r] = divmod(p9, p3);
    if (!r.is_zero()) throw std::logic_error("psi_9 not divisible by psi_3");
    return Rat(Rat(1) / q.lc()) * q;
  }
  throw std::invalid_argument("torsion_polynomial: m must be one of 2, 3, 4, 9");
}

}  // namespace ordscan
