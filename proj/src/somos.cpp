#include "ordscan/somos.hpp"

#include <unordered_set>

#include "ordscan/curves.hpp"
#include "ordscan/primes.hpp"
#include "ordscan/redscan.hpp"

namespace ordscan {

std::vector<Int> somos_terms(unsigned N) {
  if (N < 3) throw std::invalid_argument("somos_terms: N >= 3");
  std::vector<Int> a(N + 1);
  a[0] = a[1] = a[2] = a[3] = 1;
  for (unsigned n = 4; n <= N; ++n) {
    Int num = a[n - 1] * a[n - 3] + a[n - 2] * a[n - 2];
    Int q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), a[n - 4].get_mpz_t());
    if (r != 0) throw NonIntegralTerm("somos term " + std::to_string(n) + " is not integral");
    a[n] = q;
  }
  return a;
}

Int quartic_invariant(const Int& a, const Int& b, const Int& c, const Int& d) {
  return a * a * d * d - 4 * a * b * c * d + a * c * c * c + b * b * b * d + b * b * c * c;
}

std::vector<EcIdentityRow> somos_ec_identity_check(unsigned n_max) {
  if (n_max < 2 || n_max > 12) throw std::invalid_argument("somos_ec_identity_check: 2 <= n <= 12");
  WeierstrassQ E{Rat(0), Rat(0), Rat(1), Rat(-1), Rat(0)};
  EcPointQ alpha = EcPointQ::affine(Rat(0), Rat(0));
  auto a = somos_terms(n_max + 2);
  std::vector<EcIdentityRow> rows;
  for (unsigned n = 2; n <= n_max; ++n) {
    EcPointQ lhs = E.mul(Int(2 * (long)n - 3), alpha);
    Rat x = make_rat(a[n] * a[n] - a[n - 1] * a[n + 1], a[n] * a[n]);
    Rat y = make_rat(a[n - 1] * a[n - 1] * a[n + 2] - 2 * a[n - 1] * a[n] * a[n + 1],
                     a[n] * a[n] * a[n]);
    bool pass = !lhs.infinity && lhs.x == x && lhs.y == y;
    rows.push_back({n, pass});
  }
  return rows;
}

std::optional<bool> somos_divides(u64 p, u64 cap) {
  if (!is_prime_u64(p)) throw std::invalid_argument("somos_divides: p must be prime");
  u64 sqrtp = (u64)isqrt_int(Int((long)p)).get_ui();
  u64 first_zero_bound = (p + 4) / 2 + sqrtp + 8;
  if (cap == 0) cap = first_zero_bound;
  // state (a_{n-4}, .., a_{n-1}) mod p; the packed key is exact only for
  // p < 2^16, so revisit detection is skipped beyond that (the first-zero
  // bound still decides)
  u64 w = 1 % p, x = 1 % p, y = 1 % p, z = 1 % p;
  bool track_states = p < (1u << 16);
  std::unordered_set<u64> seen;
  auto pack = [&](u64 a0, u64 a1, u64 a2, u64 a3) {
    return ((a0 * p + a1) * p + a2) * p + a3;
  };
  if (track_states) seen.insert(pack(w, x, y, z));
  for (u64 step = 0; step < cap; ++step) {
    if (step >= first_zero_bound) return false;  // no zero can appear later
    u64 num = addmod(mulmod(z, x, p), mulmod(y, y, p), p);
    u64 an = mulmod(num, invmod(w, p), p);
    if (an == 0) return true;
    w = x;
    x = y;
    y = z;
    z = an;
    if (track_states && !seen.insert(pack(w, x, y, z)).second) return false;
  }
  if (cap >= first_zero_bound) return false;
  return std::nullopt;
}

EquivalenceReport somos_oddorder_equivalence(u64 x) {
  if (x > 10000) throw std::invalid_argument("somos_oddorder_equivalence: x <= 1e4");
  ScanConfig cfg = example_scan_config("noncmex", x);
  EquivalenceReport rep;
  rep.bound = x;
  for (u64 p : sieve_primes(x)) {
    auto odd_order = coprime_order_at(cfg, p);
    if (!odd_order.has_value()) continue;  // bad reduction (p = 37)
    ++rep.total;
    auto divides = somos_divides(p);
    if (!divides.has_value()) {
      ++rep.undetermined;
      rep.counterexamples.push_back(p);
      continue;
    }
    if (*odd_order) ++rep.good;
    if (*divides != *odd_order) rep.counterexamples.push_back(p);
  }
  return rep;
}

}  // namespace ordscan
