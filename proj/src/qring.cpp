#include "ordscan/qring.hpp"

namespace ordscan {

Int qr_unit_annihilator(const QRing& R) {
  u64 p = R.p;
  PolyP f = R.defining_poly();
  int r = count_roots(f, p);
  PolyP fp = derivative(f);
  bool squarefree = fp.is_zero() ? false : gcd(f, fp).deg() == 0;

  Int pm1 = Int((unsigned long)p) - 1;
  auto pk_minus_1 = [&](unsigned long k) -> Int { return pow_int(p, k) - 1; };
  auto lcm2 = [](const Int& a, const Int& b) -> Int {
    Int g;
    mpz_lcm(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
  };
  // p^ceil(log_p m): smallest p-power >= multiplicity m
  auto ppow_cover = [&](unsigned m) {
    Int t = 1;
    while (t < m) t *= (unsigned long)p;
    return t;
  };

  if (R.k == 1) return pm1;
  if (R.k == 2) {
    if (r == 0) return pk_minus_1(2);
    if (r == 2) return pm1;
    return pm1 * ppow_cover(2);  // (t-a)^2
  }
  // k == 3
  if (r == 0) return pk_minus_1(3);
  if (r == 3) return pm1;
  if (r == 2) return pm1 * ppow_cover(2);  // (t-a)^2 (t-b)
  // single root: squarefree means linear x irreducible quadratic, else (t-a)^3
  if (squarefree) return lcm2(pm1, pk_minus_1(2));
  return pm1 * ppow_cover(3);
}

}  // namespace ordscan
