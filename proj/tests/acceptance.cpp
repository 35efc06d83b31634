// acceptance driver: runs every criterion at its stated tolerance and prints
// one pass/fail line per check; exit code reflects the outcome

#include <cstdio>

#include "ordscan/redscan.hpp"
#include "ordscan/verify.hpp"

int main() {
  ordscan::VerifyOptions opt;
  opt.mc_samples = 1'000'000;
  opt.scan_bound = 10'000;
  opt.frob_bound = 100'000;
  auto results = ordscan::run_verification(opt);
  bool all = true;
  for (const auto& r : results) {
    all = all && r.pass;
    std::printf("[%s] %-34s %s\n", r.pass ? "PASS" : "FAIL", r.id.c_str(), r.detail.c_str());
  }
  std::printf("reference tables: %s\n", ordscan::reference_checksum().c_str());
  std::printf("%s\n", all ? "ACCEPTANCE: ALL CRITERIA PASSED" : "ACCEPTANCE: FAILURES PRESENT");
  return all ? 0 : 1;
}
