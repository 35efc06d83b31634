#pragma once

// prime-scan verification engine: apply the coprime-order predicate over all
// primes up to a bound, tally good/total counts, and compare against the
// embedded reference tables

#include <optional>
#include <set>
#include <string>

#include "ordscan/algebraic_groups.hpp"

namespace ordscan {

struct ScanConfig {
  AlgebraicGroupConfig config;
  RationalPoint alpha;
  u64 ell = 2;
  std::vector<u64> bounds;             // increasing
  std::optional<std::set<u64>> exclusions;  // explicit override; defaults otherwise
  std::optional<Rat> predicted;
  std::string name = "custom";

  std::set<u64> effective_exclusions() const;
};

struct ScanRow {
  u64 x = 0;
  u64 good = 0;
  u64 total = 0;
};

struct ScanReport {
  std::string name;
  std::string config_echo;
  std::string alpha_echo;
  u64 ell = 2;
  std::vector<ScanRow> rows;
  std::optional<Rat> predicted;
  std::string version;

  static std::string ratio_str(const ScanRow& r) {
    return r.total ? rat_to_decimal(make_rat(Int(r.good), Int(r.total)), 5) : "0.00000";
  }
};

constexpr u64 kScanBoundGuard = 10'000'000;

// the per-prime predicate shared by the scan engine and the somos
// equivalence check: nullopt when p is excluded or has bad reduction
std::optional<bool> coprime_order_at(const ScanConfig& cfg, u64 p);

ScanReport run_scan(const ScanConfig& cfg, int workers = 1);

// the eight reference examples with their shipped configurations
std::vector<std::string> reference_example_names();
ScanConfig example_scan_config(const std::string& name, u64 max_bound);

// embedded reference rows for one example (all five bounds 1e3..1e7)
const std::vector<ScanRow>& reference_rows(const std::string& name);

// fnv-1a checksum of the embedded reference csv, printed as provenance
std::string reference_checksum();
const std::string& reference_csv();

struct DiffCell {
  u64 bound;
  std::string field;
  std::string got, expected;
};

struct UnknownReference : std::runtime_error {
  explicit UnknownReference(const std::string& m) : std::runtime_error(m) {}
};

// exact per-cell comparison on shared bounds; empty result means a clean match
std::vector<DiffCell> compare_reference(const ScanReport& report, const std::string& reference_id);

// |ratio at the largest bound - predicted| as a decimal
double density_gap(const ScanReport& report, const Rat& predicted);

}  // namespace ordscan
