#pragma once

// genus-2 jacobian arithmetic for even-degree models y^2 = f(x), deg f = 6,
// lc(f) a square: cantor composition plus reduction in the balanced
// representation (u, v, n), where n counts the weight of the divisor at the
// two rational points at infinity.
//
// a class is stored as [E(u,v) + n*inf+ + (2 - deg u - n)*inf- - inf+ - inf-]
// with u monic of degree <= 2, v = y on E, 0 <= n <= 2 - deg u.  inf+ is the
// branch where y/x^3 tends to +lc(H), for H the cubic polynomial part of
// sqrt(f) fixed once over Q.

#include <optional>

#include "ordscan/bigint.hpp"
#include "ordscan/polyp.hpp"
#include "ordscan/polyq.hpp"

namespace ordscan {

struct Genus2CurveQ {
  PolyQ f;  // degree 6, squarefree, lc a rational square
  PolyQ H;  // cubic polynomial part of sqrt(f), lc(H) = +sqrt(lc(f))
  PolyQ r;  // f - H^2, degree <= 2

  static Genus2CurveQ from_sextic(const PolyQ& f);
  Rat discriminant() const { return ordscan::discriminant(f); }
};

struct Genus2CurveP {
  u64 p = 5;
  PolyP f, H, r;
};

// reduce mod p; nullopt when p divides a denominator, lc(f) or disc(f)
std::optional<Genus2CurveP> reduce_genus2(const Genus2CurveQ& C, u64 p);

struct BalancedDivisor {
  PolyP u;  // monic, deg <= 2
  PolyP v;  // deg v < deg u, v^2 = f mod u
  int n = 1;

  bool operator==(const BalancedDivisor& o) const { return u == o.u && v == o.v && n == o.n; }
};

struct Jacobian {
  Genus2CurveP C;

  explicit Jacobian(Genus2CurveP curve) : C(std::move(curve)) {}

  BalancedDivisor identity() const;
  bool is_identity(const BalancedDivisor& d) const;
  bool is_valid(const BalancedDivisor& d) const;
  BalancedDivisor neg(const BalancedDivisor& d) const;
  BalancedDivisor add(const BalancedDivisor& a, const BalancedDivisor& b) const;
  BalancedDivisor mul(Int k, const BalancedDivisor& d) const;

  // class of [inf^sign - (x0, y0)] for an affine point on the curve
  BalancedDivisor from_infinity_minus_point(u64 x0, u64 y0, int sign) const;

  u64 key(const BalancedDivisor& d) const;
};

// #C(F_p) including both points at infinity
u64 genus2_curve_count(const Genus2CurveP& C);

// #C(F_{p^2}) by a sweep over the quadratic extension (small p; tests)
u64 genus2_curve_count_ext(const Genus2CurveP& C);

// #J(F_p) from the zeta function data N1, N2 (small p; tests)
Int genus2_jacobian_order(const Genus2CurveP& C);

// every balanced divisor (small p; tests)
std::vector<BalancedDivisor> enumerate_jacobian(const Jacobian& J);

// some e in [A, B] with e*D = identity, by baby-step giant-step
Int genus2_bsgs_annihilator(const Jacobian& J, const BalancedDivisor& D, const Int& A,
                            const Int& B);

}  // namespace ordscan
