#pragma once

// arbitrary-precision integers and rationals (GMP) plus l-adic valuations

#include <gmpxx.h>

#include <cstdint>
#include <limits>
#include <optional>
#include <string>

#include "ordscan/residue.hpp"

namespace ordscan {

using Int = mpz_class;
using Rat = mpq_class;

inline Rat make_rat(const Int& num, const Int& den) {
  Rat q(num, den);
  q.canonicalize();
  return q;
}

inline Rat make_rat(long num, long den) { return make_rat(Int(num), Int(den)); }

inline Int pow_int(const Int& b, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

inline Int pow_int(unsigned long b, unsigned long e) { return pow_int(Int(b), e); }

// valuation value: finite k >= 0, or infinity (reserved for ord(0))
struct Valuation {
  static constexpr std::uint64_t kInf = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t v = 0;

  static Valuation infinity() { return {kInf}; }
  static Valuation finite(std::uint64_t k) { return {k}; }
  bool is_infinity() const { return v == kInf; }

  Valuation operator+(const Valuation& o) const {
    if (is_infinity() || o.is_infinity()) return infinity();
    return {v + o.v};
  }
  bool operator==(const Valuation& o) const = default;
  auto operator<=>(const Valuation& o) const = default;
};

// largest k with ell^k | x; ord(0) = infinity
inline Valuation ord_ell(const Int& x, const Int& ell) {
  if (x == 0) return Valuation::infinity();
  Int a = abs(x);
  std::uint64_t k = 0;
  while (mpz_divisible_p(a.get_mpz_t(), ell.get_mpz_t())) {
    a /= ell;
    ++k;
  }
  return Valuation::finite(k);
}

inline Valuation ord_ell(const Int& x, u64 ell) { return ord_ell(x, Int((unsigned long)ell)); }

// ord for a plain residue value (0 maps to infinity as well)
inline Valuation ord_ell_u64(u64 x, u64 ell) {
  if (x == 0) return Valuation::infinity();
  std::uint64_t k = 0;
  while (x % ell == 0) {
    x /= ell;
    ++k;
  }
  return Valuation::finite(k);
}

// m with e = ell^k * m and gcd(m, ell) = 1, for e >= 1
inline Int ell_free_part(Int e, const Int& ell) {
  while (mpz_divisible_p(e.get_mpz_t(), ell.get_mpz_t())) e /= ell;
  return e;
}

inline u64 ell_free_part_u64(u64 e, u64 ell) {
  while (e % ell == 0) e /= ell;
  return e;
}

inline Int isqrt_int(const Int& x) {
  Int r;
  mpz_sqrt(r.get_mpz_t(), x.get_mpz_t());
  return r;
}

// exact squareness over Q: both numerator and denominator perfect squares
inline bool is_rational_square(const Rat& q) {
  if (q < 0) return false;
  return mpz_perfect_square_p(q.get_num().get_mpz_t()) &&
         mpz_perfect_square_p(q.get_den().get_mpz_t());
}

inline std::string rat_to_decimal(const Rat& q, int places) {
  // round-half-up decimal rendering, exact integer arithmetic
  bool neg = q < 0;
  Rat a = neg ? Rat(-q) : q;
  Int scale = pow_int(10, (unsigned long)places);
  Int num = a.get_num() * scale * 2 + a.get_den();  // 2*scaled + 1 ulp for rounding
  Int t = num / (a.get_den() * 2);
  Int ip = t / scale, fp = t % scale;
  std::string frac = fp.get_str();
  frac.insert(0, (size_t)places - frac.size(), '0');
  return (neg ? "-" : "") + ip.get_str() + "." + frac;
}

inline std::optional<u64> to_u64(const Int& x) {
  if (x < 0 || !x.fits_ulong_p()) return std::nullopt;
  return (u64)x.get_ui();
}

}  // namespace ordscan
