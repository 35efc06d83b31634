#pragma once

// the acceptance battery: every criterion with its pinned tolerances, shared
// between the cli verify-all subcommand and the acceptance test drivers

#include <string>
#include <vector>

#include "ordscan/bigint.hpp"

namespace ordscan {

struct CheckResult {
  std::string id;      // e.g. "1.gl2-density-2"
  std::string detail;  // human-readable value summary
  bool pass = false;
};

struct VerifyOptions {
  u64 mc_samples = 1'000'000;  // per monte carlo criterion
  u64 mc_seed = 20240813;
  u64 scan_bound = 10'000;     // fast tier; the slow tier uses 100000
  u64 frob_bound = 100'000;
  int workers = 1;
};

// criteria 1..8, fast tier (scan rows at 1e3 and 1e4)
std::vector<CheckResult> run_verification(const VerifyOptions& opt);

// the slow tier: the 1e5 scan rows for all eight examples
std::vector<CheckResult> run_verification_slow(int workers = 1);

}  // namespace ordscan
