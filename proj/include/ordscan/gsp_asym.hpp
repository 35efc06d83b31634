#pragma once

// symplectic-group asymptotics: exact group-order products, decomposition
// counts, the a/b coefficient families, series inversion B = C/(1-T), limit
// partial sums with convergence reporting, and brute-force verification in
// the small groups

#include <optional>
#include <vector>

#include "ordscan/bigint.hpp"
#include "ordscan/densities.hpp"

namespace ordscan {

struct DivergenceDetected : std::runtime_error {
  explicit DivergenceDetected(const std::string& m) : std::runtime_error(m) {}
};

struct RationalSeries {
  std::vector<Rat> coeffs;  // index g = 0 .. order
  unsigned order = 0;
};

// |Sp_2g(Z/l^n)| = l^{(n-1)(2g^2+g)} prod_{j<=g} l^{2j-1}(l^{2j}-1); g=0 -> 1
Int sp_order(unsigned g, unsigned n, u64 ell);

// |GL_g(Z/l^n)|
Int gl_order(unsigned g, unsigned n, u64 ell);

// number of splittings V_{g,n} = E + W with E symplectic of rank 2r
Rat decomposition_count_S(unsigned g, unsigned r, unsigned n, u64 ell);

// number of lagrangian pair decompositions by the order-quotient formula
Rat lagrangian_count_L(unsigned g, unsigned n, u64 ell);

// closed-form a_{g,1}: l^{g^2}/prod(l^{2j}-1) for the multiplier-1 slice,
// 1/prod(l^j-1)^2 otherwise; a_0 = 1
Rat a_coeff(unsigned g, bool m_is_one, u64 ell);

// brute-force slice counts from the level-1 enumeration (g <= 2, small ell):
// a = #{x : char_x = (T-1)^g (T-m)^g}/#Sp, b = #{x : det(x-1) != 0}/#Sp
struct SliceCoeffs {
  Rat a, b;
};
std::optional<SliceCoeffs> brute_slice_coeffs(unsigned g, bool m_is_one, u64 ell);

// the a-series used downstream: brute-force-corrected values where the
// validator has flagged a discrepancy and the group is enumerable (g <= 1),
// closed forms otherwise
Rat a_effective(unsigned g, bool m_is_one, u64 ell);

// b_0..b_G by exact inversion of the a-series followed by partial summation
RationalSeries b_coeffs(bool m_is_one, u64 ell, unsigned G);

struct LimitReport {
  Rat value;                  // partial sum sum_{g<=G} c_g
  std::vector<Rat> increments;  // c_0..c_G
  Rat last_increment_abs;
  bool geometric_decay = false;  // |c_{g+1}| <= |c_g|/ell beyond small g
};

// C(1) partial sums; throws DivergenceDetected if |c_G| fails to decrease
// three times in a row
LimitReport b_limit(bool m_is_one, u64 ell, unsigned G);

struct ConvolutionRow {
  unsigned g;
  u64 m_rep;  // representative multiplier (1 or a non-residue class rep)
  Rat sum;    // sum_r a_r b_{g-r}
  bool brute; // brute-force arm or closed-form arm
  bool pass;  // sum == 1
};

struct DiscrepancyRow {
  unsigned g;
  u64 m_rep;
  Rat closed_form;
  Rat brute_force;
};

struct ConvolutionReport {
  std::vector<ConvolutionRow> rows;
  std::vector<DiscrepancyRow> discrepancies;  // closed vs brute mismatches
  bool all_pass = false;
};

ConvolutionReport convolution_check(unsigned g_max, u64 ell);

struct GapRow {
  unsigned n;
  Rat gap;     // |gl2_density - density_level(GL2Full, n).upper|
  Rat bound;   // ell^-n
  bool pass;
};
std::vector<GapRow> finite_level_gap_check(u64 ell, unsigned n_max);

// epsilon(x) = min over Z_l-lifts of ord(det(lift - I)), closed form for d=2
unsigned eps_gl2(const ResidueMatrix& m);

// d_{1,n}^{(m)} exactly, from the level-n enumeration of GL2
Rat d_coefficient_g1(bool m_is_one, u64 ell, unsigned n);

// d_{2,1} at ell=2: exact epsilon in {0,1}, elements with eps >= 2 bracketed
DensityInterval d_coefficient_g2_l2();

}  // namespace ordscan
