#include "ordscan/densities.hpp"

namespace ordscan {

Rat gm_density(u64 ell) {
  Int l((unsigned long)ell);
  return make_rat(l * l - l - 1, l * l - 1);
}

Rat gl2_density(u64 ell) {
  Int l((unsigned long)ell);
  Int l2 = l * l, l3 = l2 * l, l4 = l3 * l, l5 = l4 * l;
  return make_rat(l5 - l4 - l3 + l + 1, l5 - l3 - l2 + 1);
}

Int gl2_cn(u64 ell, unsigned n) {
  Int l((unsigned long)ell);
  if (n == 0) throw std::invalid_argument("gl2_cn: n >= 1");
  if (n == 1) return l * l * l * l - 2 * l * l * l - l * l + 3 * l;
  return (l - 1) * (l - 1) * (l + 1) * pow_int(l, 3 * n - 2) -
         (l * l - 1) * pow_int(l, 2 * n - 1);
}

Int pair_count(u64 a, u64 b, u64 c, u64 ell, unsigned n) {
  if (n < 2) throw std::invalid_argument("pair_count: n >= 2");
  Int l((unsigned long)ell);
  u64 modn = 1;
  for (unsigned i = 0; i < n; ++i) modn *= ell;
  a %= ell;
  b %= ell;
  c %= modn;
  if (mulmod(a, b, ell) != c % ell) return 0;
  if (a != 0 || b != 0) return pow_int(l, n - 1);
  if (c != 0) {
    unsigned v = (unsigned)ord_ell_u64(c, ell).v;
    return (l - 1) * Int((long)v - 1) * pow_int(l, n - 1);
  }
  return (Int((long)n) * l - Int((long)n) - l + 2) * pow_int(l, n - 1);
}

Rat h_of(const Rat& x) { return Rat(x * x - x - 1) / Rat(x * x - 1); }

Rat cm_density(u64 ell, CartanShape shape, CartanScope scope) {
  Rat l((long)ell);
  Rat cartan = shape == CartanShape::Split ? Rat(h_of(l) * h_of(l)) : h_of(Rat(l * l));
  if (scope == CartanScope::Cartan) return cartan;
  return Rat(cartan + h_of(l)) / 2;
}

Rat split_torus_pair_density(u64 ell) {
  Int l((unsigned long)ell);
  Int l3 = l * l * l;
  return make_rat(l3 - l * l - l - 1, l3 - 1);
}

DensityInterval gsp4_bounds(u64 ell) {
  Int l((unsigned long)ell);
  Int l2 = l * l, l3 = l2 * l, l4 = l3 * l, l5 = l4 * l, l6 = l5 * l, l7 = l6 * l;
  DensityInterval di;
  di.level = 1;
  di.lower =
      make_rat(l7 - 2 * l6 - l5 + 4 * l4 - 2 * l3 + 2 * l2 - 5, (l4 - 1) * (l2 - 1) * (l - 1));
  di.upper = make_rat(l7 - l6 - l5 + 3 * l4 - 2 * l3 + l2 - 4, l7 - l5 - l3 + l);
  return di;
}

std::optional<DensityInterval> gsp4_table_interval(u64 ell) {
  DensityInterval di;
  if (ell == 2) {
    di.level = 4;
    di.lower = make_rat(26701, 46080);
    di.upper = make_rat(1201, 2048);
    return di;
  }
  if (ell == 3) {
    di.level = 2;
    di.lower = make_rat(70769, 103680);
    di.upper = make_rat(27203, 38880);
    return di;
  }
  return std::nullopt;
}

}  // namespace ordscan
