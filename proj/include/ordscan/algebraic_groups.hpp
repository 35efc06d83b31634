#pragma once

// the concrete groups the scans run over: one-dimensional conic tori, the
// norm-one cubic torus, the split torus pair, elliptic curves, and genus-2
// jacobians, with reduction, annihilators and the coprime-order predicate

#include <set>
#include <string>
#include <variant>

#include "ordscan/curves.hpp"
#include "ordscan/genus2.hpp"
#include "ordscan/qring.hpp"

namespace ordscan {

struct ConicTorusCfg {
  Rat d;  // x^2 - d y^2 = 1
};
struct CubicNormTorusCfg {
  PolyQ f;  // monic cubic defining the ring Q[t]/(f)
};
struct SplitTorusPairCfg {};  // xyz = 1, alpha = (p, q, 1/(pq))
struct WeierstrassCfg {
  WeierstrassQ E;
};
struct Genus2Cfg {
  Genus2CurveQ C;
};

struct AlgebraicGroupConfig {
  std::variant<ConicTorusCfg, CubicNormTorusCfg, SplitTorusPairCfg, WeierstrassCfg, Genus2Cfg> v;

  std::string to_string() const;
  static AlgebraicGroupConfig parse(const std::string& text);

  // primes dividing the structure data (conic parameter, discriminants)
  std::set<u64> structural_bad_primes() const;
};

// the rational point alpha, with shapes matching the config
struct RationalPoint {
  std::vector<Rat> coords;  // conic (x,y); cubic (x,y,z); splitpair (p,q); curve (x,y); genus2 (x0,y0)
  int inf_sign = 0;         // genus2 only: alpha = [inf^sign - (x0,y0)]

  std::string to_string() const;
  static RationalPoint parse(const std::string& text);

  // primes dividing a coordinate denominator
  std::set<u64> denominator_primes() const;
};

enum class BadReason { Denominator, Discriminant, ConfiguredExclusion };

struct TorusElem {
  QRing ring;
  QRingElem e;
};
struct PairElem {
  u64 p;
  u64 a, b;
};
struct CurveElem {
  WeierstrassP E;
  EcPointP pt;
};
struct JacElem {
  Genus2CurveP C;
  BalancedDivisor d;
};

struct GroupElementModP {
  std::variant<TorusElem, PairElem, CurveElem, JacElem> v;
};

struct BadReduction {
  BadReason reason;
};

using ReduceResult = std::variant<GroupElementModP, BadReduction>;

// coordinatewise reduction when denominators and discriminant data are
// prime to p
ReduceResult reduce_point(const AlgebraicGroupConfig& cfg, const RationalPoint& alpha, u64 p);

// an integer annihilating the reduced group containing the element; for
// curves and jacobians this is the bsgs annihilator of the element itself
Int ambient_exponent(const AlgebraicGroupConfig& cfg, const GroupElementModP& elem, u64 p);

// some annihilator of the element inside [A, B]
Int bsgs_annihilator(const GroupElementModP& elem, const Int& A, const Int& B);

// group operations (identity and inverse exposed as companions)
GroupElementModP group_law(const GroupElementModP& x, const GroupElementModP& y);
GroupElementModP group_identity(const GroupElementModP& like);
GroupElementModP group_inverse(const GroupElementModP& x);
GroupElementModP group_power(const GroupElementModP& x, const Int& k);
bool is_group_identity(const GroupElementModP& x);

// true iff ell does not divide the order of the element: with annihilator e
// and m its ell-free part, test m * element = identity
bool order_coprime_to_ell(const AlgebraicGroupConfig& cfg, const GroupElementModP& elem, u64 p,
                          u64 ell);

// #C(F_p) for curve-type configs (legendre sweep plus points at infinity)
u64 count_curve_points(const AlgebraicGroupConfig& cfg, u64 p);

}  // namespace ordscan
