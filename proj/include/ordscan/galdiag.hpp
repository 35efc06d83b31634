#pragma once

// finitely checkable diagnostics: exact rational square tests, torsion
// polynomials (hosted in curves.hpp), and empirical frobenius-distribution
// comparisons. these report evidence, never verdicts about surjectivity

#include <map>

#include "ordscan/curves.hpp"

namespace ordscan {

struct SquareTestReport {
  std::vector<Rat> values;
  std::vector<bool> is_square;
};

SquareTestReport rational_square_tests(const std::vector<Rat>& values);

enum class FrobVerdict { ConsistentWithSurjective, Inconsistent, LowSample };

struct FrobeniusReport {
  u64 ell = 2;
  unsigned level = 1;
  u64 bound = 0;
  u64 samples = 0;
  double tv_distance = 1.0;
  FrobVerdict verdict = FrobVerdict::LowSample;
  // empirical and reference counts per (trace, det) class mod ell^n
  std::map<std::pair<u64, u64>, u64> empirical;
  std::map<std::pair<u64, u64>, Int> reference;
};

// tally (a_p mod ell^n, p mod ell^n) over good primes p <= bound and compare
// with the exact (trace, det) distribution of GL2(Z/ell^n) in total
// variation; verdict cut at 0.05, low-sample below bound 100
FrobeniusReport frobenius_statistics(const WeierstrassQ& E, u64 ell, unsigned n, u64 bound);

}  // namespace ordscan
