#pragma once

// elliptic curves in general weierstrass form y^2 + a1 xy + a3 y = x^3 +
// a2 x^2 + a4 x + a6: exact chord-tangent arithmetic over Q, reductions
// mod p (any p of good reduction, including 2 and 3), point counting and
// baby-step giant-step annihilators in the hasse interval

#include <optional>

#include "ordscan/bigint.hpp"
#include "ordscan/polyq.hpp"

namespace ordscan {

struct EcPointQ {
  bool infinity = true;
  Rat x, y;
  static EcPointQ O() { return {}; }
  static EcPointQ affine(const Rat& x, const Rat& y) { return {false, x, y}; }
  bool operator==(const EcPointQ& o) const {
    if (infinity != o.infinity) return false;
    return infinity || (x == o.x && y == o.y);
  }
};

struct WeierstrassQ {
  Rat a1, a2, a3, a4, a6;

  Rat b2() const { return a1 * a1 + 4 * a2; }
  Rat b4() const { return 2 * a4 + a1 * a3; }
  Rat b6() const { return a3 * a3 + 4 * a6; }
  Rat b8() const {
    return a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
  }
  Rat discriminant() const {
    Rat B2 = b2(), B4 = b4(), B6 = b6(), B8 = b8();
    return -B2 * B2 * B8 - 8 * B4 * B4 * B4 - 27 * B6 * B6 + 9 * B2 * B4 * B6;
  }
  bool on_curve(const EcPointQ& p) const;

  EcPointQ neg(const EcPointQ& p) const;
  EcPointQ add(const EcPointQ& p, const EcPointQ& q) const;
  EcPointQ mul(const Int& k, const EcPointQ& p) const;
};

struct EcPointP {
  bool infinity = true;
  u64 x = 0, y = 0;
  static EcPointP O() { return {}; }
  static EcPointP affine(u64 x, u64 y) { return {false, x, y}; }
  bool operator==(const EcPointP& o) const {
    if (infinity != o.infinity) return false;
    return infinity || (x == o.x && y == o.y);
  }
};

struct WeierstrassP {
  u64 p = 5;
  u64 a1 = 0, a2 = 0, a3 = 0, a4 = 0, a6 = 0;

  bool on_curve(const EcPointP& pt) const;
  EcPointP neg(const EcPointP& pt) const;
  EcPointP add(const EcPointP& a, const EcPointP& b) const;
  EcPointP mul(Int k, EcPointP pt) const;
};

// reduce a curve over Q mod p; nullopt if a denominator or the discriminant
// vanishes mod p
std::optional<WeierstrassP> reduce_curve(const WeierstrassQ& E, u64 p);

// #E(F_p) including the point at infinity (sweep for p odd, brute force for
// p = 2)
u64 ec_count_points(const WeierstrassP& E);

// trace of frobenius a_p = p + 1 - #E(F_p)
i64 ec_trace(const WeierstrassP& E);

struct NotFound : std::runtime_error {
  explicit NotFound(const std::string& m) : std::runtime_error(m) {}
};

// some e in [A, B] with e*P = O, by baby-step giant-step; throws NotFound if
// the interval contains no annihilator
Int ec_bsgs_annihilator(const WeierstrassP& E, const EcPointP& P, const Int& A, const Int& B);

// division polynomials for the short model y^2 = x^3 + ax + b; psi_m as a
// polynomial in x, with even-index psi divided by 2y
PolyQ division_poly_x(const Rat& a, const Rat& b, unsigned m, bool& even_part);

// exact-order-m x-coordinate polynomial (primitive part) for m in {2,3,4,9};
// m = 2 works for any model (the b-model cubic), m >= 3 requires the short
// form a1 = a2 = a3 = 0
PolyQ torsion_polynomial(const WeierstrassQ& E, unsigned m);

}  // namespace ordscan
