#include "ordscan/primes.hpp"

#include <stdexcept>

namespace ordscan {

std::vector<u64> sieve_primes(u64 x) {
  if (x < 2) throw std::invalid_argument("sieve_primes: bound must be >= 2");
  std::vector<bool> comp(x + 1, false);
  std::vector<u64> out;
  for (u64 i = 2; i <= x; ++i) {
    if (comp[i]) continue;
    out.push_back(i);
    if (i <= x / i)
      for (u64 j = i * i; j <= x; j += i) comp[j] = true;
  }
  return out;
}

bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  // deterministic miller-rabin for 64-bit with these bases
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) d >>= 1, ++s;
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

namespace {

Int pollard_rho(const Int& n) {
  // brent's variant; n odd composite, no factor below 1e6
  for (unsigned long c = 1;; ++c) {
    Int x = 2, y = 2, d = 1;
    Int diff, q = 1;
    int count = 0;
    while (d == 1) {
      x = (x * x + c) % n;
      y = (y * y + c) % n;
      y = (y * y + c) % n;
      diff = x > y ? x - y : y - x;
      if (diff == 0) break;
      q = q * diff % n;
      if (++count % 64 == 0) {
        mpz_gcd(d.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        if (d == n) break;
      }
    }
    if (d == 1 || d == 0) {
      mpz_gcd(d.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
    }
    if (d > 1 && d < n) return d;
  }
}

void factor_rec(const Int& n, std::map<Int, unsigned>& out) {
  if (n == 1) return;
  if (mpz_probab_prime_p(n.get_mpz_t(), 40)) {
    out[n]++;
    return;
  }
  Int d = pollard_rho(n);
  factor_rec(d, out);
  factor_rec(n / d, out);
}

}  // namespace

std::map<Int, unsigned> factorize(const Int& e) {
  if (e < 1) throw std::invalid_argument("factorize: input must be >= 1");
  std::map<Int, unsigned> out;
  Int n = e;
  for (u64 p = 2; p <= 1000000 && Int(p) * p <= n; p = (p == 2 ? 3 : p + 2)) {
    while (mpz_divisible_ui_p(n.get_mpz_t(), (unsigned long)p)) {
      out[Int((unsigned long)p)]++;
      n /= (unsigned long)p;
    }
  }
  if (n > 1) {
    if (n <= 1000000ul * 1000000ul) {
      out[n]++;  // remaining cofactor below trial bound squared is prime
    } else {
      factor_rec(n, out);
    }
  }
  return out;
}

}  // namespace ordscan
