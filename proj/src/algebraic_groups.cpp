#include "ordscan/algebraic_groups.hpp"

#include <sstream>

#include "ordscan/primes.hpp"

namespace ordscan {

namespace {

std::set<u64> small_prime_factors(const Int& n) {
  std::set<u64> out;
  if (n == 0) return out;
  Int a = abs(n);
  for (auto& [prime, mult] : factorize(a)) {
    auto pv = to_u64(prime);
    if (pv) out.insert(*pv);
  }
  return out;
}

Rat parse_rat(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rat(Int(s));
  Rat q(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
  q.canonicalize();
  return q;
}

std::vector<Rat> parse_rat_list(const std::string& s) {
  std::vector<Rat> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_rat(item));
  return out;
}

// reduce a rational mod p (denominator must be a unit)
bool reduce_rat(const Rat& q, u64 p, u64& out) {
  if (mpz_divisible_ui_p(q.get_den().get_mpz_t(), (unsigned long)p)) return false;
  Int num = q.get_num() % (long)p;
  if (num < 0) num += (long)p;
  out = mulmod(num.get_ui(), invmod(mpz_fdiv_ui(q.get_den().get_mpz_t(), (unsigned long)p), p), p);
  return true;
}

}  // namespace

std::string AlgebraicGroupConfig::to_string() const {
  std::ostringstream os;
  if (auto* c = std::get_if<ConicTorusCfg>(&v)) {
    os << "conic:d=" << c->d;
  } else if (auto* c3 = std::get_if<CubicNormTorusCfg>(&v)) {
    os << "cubicnorm:";
    for (int i = c3->f.deg(); i >= 0; --i) {
      os << c3->f.coeff(i);
      if (i) os << ",";
    }
  } else if (std::holds_alternative<SplitTorusPairCfg>(v)) {
    os << "splitpair";
  } else if (auto* w = std::get_if<WeierstrassCfg>(&v)) {
    os << "weierstrass:" << w->E.a1 << "," << w->E.a2 << "," << w->E.a3 << "," << w->E.a4 << ","
       << w->E.a6;
  } else if (auto* g = std::get_if<Genus2Cfg>(&v)) {
    os << "genus2:";
    for (int i = 6; i >= 0; --i) {
      os << g->C.f.coeff(i);
      if (i) os << ",";
    }
  }
  return os.str();
}

AlgebraicGroupConfig AlgebraicGroupConfig::parse(const std::string& text) {
  AlgebraicGroupConfig cfg;
  if (text.rfind("conic:d=", 0) == 0) {
    cfg.v = ConicTorusCfg{parse_rat(text.substr(8))};
  } else if (text.rfind("cubicnorm:", 0) == 0) {
    auto cs = parse_rat_list(text.substr(10));
    if (cs.size() != 4 || cs[0] != 1)
      throw std::invalid_argument("cubicnorm wants 4 coefficients, leading 1");
    cfg.v = CubicNormTorusCfg{PolyQ({cs[3], cs[2], cs[1], cs[0]})};
  } else if (text == "splitpair") {
    cfg.v = SplitTorusPairCfg{};
  } else if (text.rfind("weierstrass:", 0) == 0) {
    auto cs = parse_rat_list(text.substr(12));
    if (cs.size() != 5) throw std::invalid_argument("weierstrass wants a1,a2,a3,a4,a6");
    cfg.v = WeierstrassCfg{WeierstrassQ{cs[0], cs[1], cs[2], cs[3], cs[4]}};
  } else if (text.rfind("genus2:", 0) == 0) {
    auto cs = parse_rat_list(text.substr(7));
    if (cs.size() != 7) throw std::invalid_argument("genus2 wants 7 coefficients, degree 6 first");
    PolyQ f({cs[6], cs[5], cs[4], cs[3], cs[2], cs[1], cs[0]});
    cfg.v = Genus2Cfg{Genus2CurveQ::from_sextic(f)};
  } else {
    throw std::invalid_argument("unknown group config: " + text);
  }
  return cfg;
}

std::set<u64> AlgebraicGroupConfig::structural_bad_primes() const {
  std::set<u64> out;
  if (auto* c = std::get_if<ConicTorusCfg>(&v)) {
    for (u64 q : small_prime_factors(c->d.get_num())) out.insert(q);
    for (u64 q : small_prime_factors(c->d.get_den())) out.insert(q);
  } else if (auto* c3 = std::get_if<CubicNormTorusCfg>(&v)) {
    Rat disc = discriminant(c3->f);
    for (u64 q : small_prime_factors(disc.get_num())) out.insert(q);
    for (u64 q : small_prime_factors(disc.get_den())) out.insert(q);
  } else if (auto* w = std::get_if<WeierstrassCfg>(&v)) {
    Rat disc = w->E.discriminant();
    for (u64 q : small_prime_factors(disc.get_num())) out.insert(q);
    for (u64 q : small_prime_factors(disc.get_den())) out.insert(q);
  } else if (auto* g = std::get_if<Genus2Cfg>(&v)) {
    Rat disc = g->C.discriminant();
    for (u64 q : small_prime_factors(disc.get_num())) out.insert(q);
    for (u64 q : small_prime_factors(disc.get_den())) out.insert(q);
    for (u64 q : small_prime_factors(g->C.f.lc().get_num())) out.insert(q);
  }
  return out;
}

std::string RationalPoint::to_string() const {
  std::ostringstream os;
  for (size_t i = 0; i < coords.size(); ++i) {
    if (i) os << ",";
    os << coords[i];
  }
  if (inf_sign) os << (inf_sign > 0 ? ",+" : ",-");
  return os.str();
}

RationalPoint RationalPoint::parse(const std::string& text) {
  RationalPoint pt;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item == "+") pt.inf_sign = 1;
    else if (item == "-") pt.inf_sign = -1;
    else pt.coords.push_back(parse_rat(item));
  }
  return pt;
}

std::set<u64> RationalPoint::denominator_primes() const {
  std::set<u64> out;
  for (const auto& q : coords)
    for (u64 r : small_prime_factors(q.get_den())) out.insert(r);
  return out;
}

ReduceResult reduce_point(const AlgebraicGroupConfig& cfg, const RationalPoint& alpha, u64 p) {
  // denominators first
  for (const auto& q : alpha.coords)
    if (mpz_divisible_ui_p(q.get_den().get_mpz_t(), (unsigned long)p))
      return BadReduction{BadReason::Denominator};

  if (auto* c = std::get_if<ConicTorusCfg>(&cfg.v)) {
    if (alpha.coords.size() != 2) throw std::invalid_argument("conic point wants (x, y)");
    u64 d, x, y;
    if (!reduce_rat(c->d, p, d)) return BadReduction{BadReason::Discriminant};
    reduce_rat(alpha.coords[0], p, x);
    reduce_rat(alpha.coords[1], p, y);
    QRing R(p, {submod(0, d, p), 0});  // t^2 - d
    TorusElem e{R, qr_from(R, x, y)};
    if (qr_norm(R, e.e) != 1) throw std::invalid_argument("conic point is not on the torus");
    return GroupElementModP{e};
  }
  if (auto* c3 = std::get_if<CubicNormTorusCfg>(&cfg.v)) {
    if (alpha.coords.size() != 3) throw std::invalid_argument("cubic point wants (x, y, z)");
    bool ok = true;
    auto fc = reduce_coeffs_mod_p(c3->f, p, &ok);
    if (!ok) return BadReduction{BadReason::Discriminant};
    u64 x, y, z;
    reduce_rat(alpha.coords[0], p, x);
    reduce_rat(alpha.coords[1], p, y);
    reduce_rat(alpha.coords[2], p, z);
    QRing R(p, {fc[0], fc[1], fc[2]});
    TorusElem e{R, qr_from(R, x, y, z)};
    if (qr_norm(R, e.e) != 1)
      throw std::invalid_argument("cubic point does not have norm one");
    return GroupElementModP{e};
  }
  if (std::holds_alternative<SplitTorusPairCfg>(cfg.v)) {
    if (alpha.coords.size() != 2) throw std::invalid_argument("splitpair point wants (p, q)");
    u64 a, b;
    reduce_rat(alpha.coords[0], p, a);
    reduce_rat(alpha.coords[1], p, b);
    if (a == 0 || b == 0) return BadReduction{BadReason::Denominator};
    return GroupElementModP{PairElem{p, a, b}};
  }
  if (auto* w = std::get_if<WeierstrassCfg>(&cfg.v)) {
    auto Er = reduce_curve(w->E, p);
    if (!Er) return BadReduction{BadReason::Discriminant};
    u64 x, y;
    reduce_rat(alpha.coords[0], p, x);
    reduce_rat(alpha.coords[1], p, y);
    CurveElem e{*Er, EcPointP::affine(x, y)};
    if (!Er->on_curve(e.pt)) throw std::invalid_argument("point is not on the curve mod p");
    return GroupElementModP{e};
  }
  auto* g = std::get_if<Genus2Cfg>(&cfg.v);
  auto Cp = reduce_genus2(g->C, p);
  if (!Cp) return BadReduction{BadReason::Discriminant};
  u64 x, y;
  reduce_rat(alpha.coords[0], p, x);
  reduce_rat(alpha.coords[1], p, y);
  Jacobian J(*Cp);
  JacElem e{*Cp, J.from_infinity_minus_point(x, y, alpha.inf_sign)};
  return GroupElementModP{e};
}

Int ambient_exponent(const AlgebraicGroupConfig& cfg, const GroupElementModP& elem, u64 p) {
  if (auto* c = std::get_if<ConicTorusCfg>(&cfg.v)) {
    if (p == 2) return Int(2);
    u64 d;
    if (!reduce_rat(c->d, p, d)) throw std::invalid_argument("p divides the conic parameter");
    if (d == 0) return Int(2 * (long)p);  // degenerate fiber {x = +-1} x G_a
    u64 leg = legendre(d, p);
    return leg == 1 ? Int((long)(p - 1)) : Int((long)(p + 1));
  }
  if (std::holds_alternative<CubicNormTorusCfg>(cfg.v)) {
    const auto& te = std::get<TorusElem>(elem.v);
    return qr_unit_annihilator(te.ring);
  }
  if (std::holds_alternative<SplitTorusPairCfg>(cfg.v)) return Int((long)(p - 1));
  if (std::holds_alternative<WeierstrassCfg>(cfg.v)) {
    const auto& ce = std::get<CurveElem>(elem.v);
    Int s = isqrt_int(Int(4 * (long)p));
    Int A = Int((long)p) + 1 - s - 1, B = Int((long)p) + 1 + s + 1;
    if (A < 1) A = 1;
    return ec_bsgs_annihilator(ce.E, ce.pt, A, B);
  }
  const auto& je = std::get<JacElem>(elem.v);
  // narrow the hasse-weil window with the curve count: #J = (p^2+1) -
  // s1 (p+1) + s2 with s1 from #C(F_p) and |s2| <= 6p
  Int s1 = Int((long)p) + 1 - Int((long)genus2_curve_count(je.C));
  Int center = Int((long)p) * (long)p + 1 - s1 * ((long)p + 1);
  Int A = center - 6 * (long)p, B = center + 6 * (long)p;
  if (A < 1) A = 1;
  Jacobian J(je.C);
  return genus2_bsgs_annihilator(J, je.d, A, B);
}

Int bsgs_annihilator(const GroupElementModP& elem, const Int& A, const Int& B) {
  if (auto* ce = std::get_if<CurveElem>(&elem.v)) return ec_bsgs_annihilator(ce->E, ce->pt, A, B);
  if (auto* je = std::get_if<JacElem>(&elem.v)) {
    Jacobian J(je->C);
    return genus2_bsgs_annihilator(J, je->d, A, B);
  }
  // bsgs over a torus element: generic cycle walk on powers
  Int e = A;
  GroupElementModP cur = group_power(elem, A);
  while (e <= B) {
    if (is_group_identity(cur)) return e;
    cur = group_law(cur, elem);
    e += 1;
  }
  throw NotFound("no annihilator in the interval");
}

GroupElementModP group_law(const GroupElementModP& x, const GroupElementModP& y) {
  if (auto* tx = std::get_if<TorusElem>(&x.v)) {
    const auto& ty = std::get<TorusElem>(y.v);
    return GroupElementModP{TorusElem{tx->ring, qr_mul(tx->ring, tx->e, ty.e)}};
  }
  if (auto* px = std::get_if<PairElem>(&x.v)) {
    const auto& py = std::get<PairElem>(y.v);
    return GroupElementModP{
        PairElem{px->p, mulmod(px->a, py.a, px->p), mulmod(px->b, py.b, px->p)}};
  }
  if (auto* cx = std::get_if<CurveElem>(&x.v)) {
    const auto& cy = std::get<CurveElem>(y.v);
    return GroupElementModP{CurveElem{cx->E, cx->E.add(cx->pt, cy.pt)}};
  }
  const auto& jx = std::get<JacElem>(x.v);
  const auto& jy = std::get<JacElem>(y.v);
  Jacobian J(jx.C);
  return GroupElementModP{JacElem{jx.C, J.add(jx.d, jy.d)}};
}

GroupElementModP group_identity(const GroupElementModP& like) {
  if (auto* t = std::get_if<TorusElem>(&like.v))
    return GroupElementModP{TorusElem{t->ring, qr_one(t->ring)}};
  if (auto* pe = std::get_if<PairElem>(&like.v))
    return GroupElementModP{PairElem{pe->p, 1, 1}};
  if (auto* c = std::get_if<CurveElem>(&like.v))
    return GroupElementModP{CurveElem{c->E, EcPointP::O()}};
  const auto& j = std::get<JacElem>(like.v);
  Jacobian J(j.C);
  return GroupElementModP{JacElem{j.C, J.identity()}};
}

GroupElementModP group_inverse(const GroupElementModP& x) {
  if (auto* t = std::get_if<TorusElem>(&x.v)) {
    // conjugate-free generic inverse: raise to (annihilator - 1) is wasteful;
    // use the norm-trick for k = 2, otherwise the annihilator power
    Int e = qr_unit_annihilator(t->ring);
    return GroupElementModP{TorusElem{t->ring, qr_pow(t->ring, t->e, e - 1)}};
  }
  if (auto* pe = std::get_if<PairElem>(&x.v))
    return GroupElementModP{PairElem{pe->p, invmod(pe->a, pe->p), invmod(pe->b, pe->p)}};
  if (auto* c = std::get_if<CurveElem>(&x.v))
    return GroupElementModP{CurveElem{c->E, c->E.neg(c->pt)}};
  const auto& j = std::get<JacElem>(x.v);
  Jacobian J(j.C);
  return GroupElementModP{JacElem{j.C, J.neg(j.d)}};
}

GroupElementModP group_power(const GroupElementModP& x, const Int& k) {
  if (auto* t = std::get_if<TorusElem>(&x.v)) {
    Int e = k;
    TorusElem out{t->ring, t->e};
    if (e < 0) {
      GroupElementModP inv = group_inverse(x);
      out = std::get<TorusElem>(inv.v);
      e = -e;
    }
    return GroupElementModP{TorusElem{t->ring, qr_pow(t->ring, out.e, e)}};
  }
  if (auto* pe = std::get_if<PairElem>(&x.v)) {
    Int e = k % Int((long)(pe->p - 1));
    if (e < 0) e += (long)(pe->p - 1);
    u64 ee = e.get_ui();
    return GroupElementModP{PairElem{pe->p, powmod(pe->a, ee, pe->p), powmod(pe->b, ee, pe->p)}};
  }
  if (auto* c = std::get_if<CurveElem>(&x.v))
    return GroupElementModP{CurveElem{c->E, c->E.mul(k, c->pt)}};
  const auto& j = std::get<JacElem>(x.v);
  Jacobian J(j.C);
  return GroupElementModP{JacElem{j.C, J.mul(k, j.d)}};
}

bool is_group_identity(const GroupElementModP& x) {
  if (auto* t = std::get_if<TorusElem>(&x.v)) return t->e == qr_one(t->ring);
  if (auto* pe = std::get_if<PairElem>(&x.v)) return pe->a == 1 && pe->b == 1;
  if (auto* c = std::get_if<CurveElem>(&x.v)) return c->pt.infinity;
  const auto& j = std::get<JacElem>(x.v);
  Jacobian J(j.C);
  return J.is_identity(j.d);
}

bool order_coprime_to_ell(const AlgebraicGroupConfig& cfg, const GroupElementModP& elem, u64 p,
                          u64 ell) {
  Int e = ambient_exponent(cfg, elem, p);
  Int m = ell_free_part(e, Int((long)ell));
  return is_group_identity(group_power(elem, m));
}

u64 count_curve_points(const AlgebraicGroupConfig& cfg, u64 p) {
  if (auto* w = std::get_if<WeierstrassCfg>(&cfg.v)) {
    auto Er = reduce_curve(w->E, p);
    if (!Er) throw std::invalid_argument("count_curve_points: bad reduction");
    return ec_count_points(*Er);
  }
  if (auto* g = std::get_if<Genus2Cfg>(&cfg.v)) {
    auto Cp = reduce_genus2(g->C, p);
    if (!Cp) throw std::invalid_argument("count_curve_points: bad reduction");
    return genus2_curve_count(*Cp);
  }
  throw std::invalid_argument("count_curve_points: config has no curve");
}

}  // namespace ordscan
