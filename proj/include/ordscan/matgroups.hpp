#pragma once

// level-n realizations of the torsion image: enumeration, exact haar
// sampling, the fixed-point density interval from the image-index formula,
// and the brute-force affine oracle

#include <functional>
#include <optional>
#include <vector>

#include "ordscan/groupspec.hpp"
#include "ordscan/rng.hpp"

namespace ordscan {

struct CardinalityGuardExceeded : std::runtime_error {
  explicit CardinalityGuardExceeded(const std::string& m) : std::runtime_error(m) {}
};
struct UnsupportedSpec : std::runtime_error {
  explicit UnsupportedSpec(const std::string& m) : std::runtime_error(m) {}
};

constexpr u64 kEnumerationGuard = 10'000'000;

// exact lower/upper bounds for F(G) derived from level n
struct DensityInterval {
  Rat lower, upper;
  unsigned level = 1;
};

struct AffineElement {
  std::array<u64, 4> translation{};  // first d entries used
  ResidueMatrix linear;
};

// every element of the level-n reduction, each exactly once
std::vector<ResidueMatrix> enumerate_group(const GroupSpec& spec, unsigned n);

// exactly uniform sample of the level-n group (named specs only)
class HaarSampler {
 public:
  HaarSampler(const GroupSpec& spec, unsigned n);
  ResidueMatrix sample(Rng& rng) const;

 private:
  GroupSpec spec_;
  unsigned n_;
  std::vector<ResidueMatrix> level1_;                 // cached level-1 enumeration
  std::vector<ResidueMatrix> level1_lifts_;           // hensel lifts to level n (gsp)
  std::vector<std::vector<ResidueMatrix>> ker_lift_;  // per sub-level lifted kernel reps (gsp)
  std::vector<std::array<u64, 16>> lie_basis_;        // basis of the lie algebra mod ell
};

ResidueMatrix haar_sample(const GroupSpec& spec, unsigned n, u64 seed);

// exact level-n density interval from the image-index formula:
//   upper = sum_M #im(M-I) / (|T_n| ell^{dn})
//   lower = (1/|T_n|) sum over det(M-I) != 0 mod ell^n of ell^{-ord det(M-I)}
DensityInterval density_level(const GroupSpec& spec, unsigned n);

// exact fraction of (a, M) in the group generated by the given affine
// elements with a in im(M - I); brute-force oracle for density_level
Rat affine_fixed_fraction(const std::vector<AffineElement>& generators, unsigned n);

// same closure, but returns the full element list (for the cmramified bracket)
std::vector<AffineElement> affine_closure(const std::vector<AffineElement>& generators);

// fixed-point interval of a finite affine group given at level n: lower
// counts only elements with det(M-I) != 0 mod ell^n (these persist to every
// higher level), upper is the exact level-n fixed fraction
DensityInterval affine_fixed_interval(const std::vector<AffineElement>& generators, unsigned n);

struct McEstimate {
  double mean = 0;
  double half_width_99 = 0;  // 99% confidence half-width
  u64 samples = 0;
};

// monte carlo mean of ell^{-min(ord det(M-I), n)} over haar samples
McEstimate density_mc(const GroupSpec& spec, unsigned n, u64 samples, u64 seed, int workers = 1);

// helpers shared with other modules
std::vector<ResidueMatrix> gsp_level1(u64 ell, unsigned g);  // cached enumeration
u64 gsp_multiplier(const ResidueMatrix& m);                  // m with M^T J M = m J
bool is_gsp_member(const ResidueMatrix& m);
// F_ell basis of the lie algebra {Z : Z^T J + J Z = c J}
std::vector<std::array<u64, 16>> gsp_lie_basis(unsigned g, u64 ell);
// hensel-correct a level-m.n member to a genuine member mod ell^target
ResidueMatrix gsp_hensel_lift(const ResidueMatrix& m, unsigned target);

}  // namespace ordscan
