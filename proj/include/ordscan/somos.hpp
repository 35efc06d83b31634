#pragma once

// the somos-4 sequence: exact terms, the quartic invariant, the identity
// tying terms to multiples of (0,0) on y^2 + y = x^3 - x, and the prime
// divisibility scan equivalent to the odd-order scan

#include <optional>
#include <vector>

#include "ordscan/bigint.hpp"

namespace ordscan {

struct NonIntegralTerm : std::runtime_error {
  explicit NonIntegralTerm(const std::string& m) : std::runtime_error(m) {}
};

// a_0..a_N with a_0..a_3 = 1 and a_n = (a_{n-1} a_{n-3} + a_{n-2}^2)/a_{n-4};
// every division is checked exact
std::vector<Int> somos_terms(unsigned N);

// F(a,b,c,d) = a^2 d^2 - 4abcd + ac^3 + b^3 d + b^2 c^2
Int quartic_invariant(const Int& a, const Int& b, const Int& c, const Int& d);

struct EcIdentityRow {
  unsigned n;
  bool pass;
};

// checks [2n-3](0,0) = ((a_n^2 - a_{n-1} a_{n+1})/a_n^2,
//                       (a_{n-1}^2 a_{n+2} - 2 a_{n-1} a_n a_{n+1})/a_n^3)
// by exact rational arithmetic, n = 2..n_max (n_max <= 12)
std::vector<EcIdentityRow> somos_ec_identity_check(unsigned n_max);

// does p divide some somos term: iterate the recurrence mod p; true at the
// first zero term.  false when the 4-tuple state revisits with no zero, or
// when the iteration passes the first-zero bound (p + 4)/2 + sqrt(p) + 8
// derived from the hasse interval through the curve identity: a zero at
// index n forces [2n-3](0,0) = O, so the first zero sits at (tau + 3)/2 for
// tau the odd point order, and tau <= p + 1 + 2 sqrt(p).  nullopt only when
// a caller-supplied cap cuts the walk before either rule decides
std::optional<bool> somos_divides(u64 p, u64 cap = 0);

struct EquivalenceReport {
  u64 bound = 0;
  u64 good = 0;           // primes with alpha of odd order (and divisibility)
  u64 total = 0;          // good-reduction primes scanned
  u64 undetermined = 0;   // somos_divides hit its cap (expected zero)
  std::vector<u64> counterexamples;
};

// for every good prime p <= x of the noncm example: somos divisibility must
// coincide with the odd-order predicate
EquivalenceReport somos_oddorder_equivalence(u64 x);

}  // namespace ordscan
