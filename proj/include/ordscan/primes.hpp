#pragma once

// prime sieving, primality and factorization for scan-scale inputs

#include <cstdint>
#include <map>
#include <vector>

#include "ordscan/bigint.hpp"

namespace ordscan {

// all primes <= x in increasing order (x >= 2)
std::vector<u64> sieve_primes(u64 x);

bool is_prime_u64(u64 n);

// complete factorization of e >= 1 (trial division to 1e6, then pollard rho);
// key = prime, value = exponent
std::map<Int, unsigned> factorize(const Int& e);

}  // namespace ordscan
