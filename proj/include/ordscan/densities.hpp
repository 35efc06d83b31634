#pragma once

// closed-form density values and the matrix-counting quantities behind them,
// all exact rationals

#include "ordscan/bigint.hpp"
#include "ordscan/matgroups.hpp"

namespace ordscan {

// density for the d=1 torus with full image: (l^2 - l - 1)/(l^2 - 1)
Rat gm_density(u64 ell);

// density for a surjective GL2 image:
// (l^5 - l^4 - l^3 + l + 1)/(l^5 - l^3 - l^2 + 1)
Rat gl2_density(u64 ell);

// number of M in GL2(Z/l^n) with ord(det(M - I)) exactly n-1
Int gl2_cn(u64 ell, unsigned n);

// number of pairs (alpha, beta) mod l^n with alpha*beta = c, alpha = a (l),
// beta = b (l); the four-case count (n >= 2)
Int pair_count(u64 a, u64 b, u64 c, u64 ell, unsigned n);

enum class CartanShape { Split, Inert };
enum class CartanScope { Cartan, Normalizer };

// h(x) = (x^2 - x - 1)/(x^2 - 1); split h(l)^2, inert h(l^2), normalizers
// average the cartan value with h(l)
Rat cm_density(u64 ell, CartanShape shape, CartanScope scope);

Rat h_of(const Rat& x);

// density for the xyz = 1 product torus: (l^3 - l^2 - l - 1)/(l^3 - 1)
Rat split_torus_pair_density(u64 ell);

// general-l bounds for the GSp4 density, from the count of M in GSp4(F_l)
// with det(M - I) nonzero
DensityInterval gsp4_bounds(u64 ell);

// sharper reference intervals from conjugacy-class data (reference values,
// not recomputed): available for ell = 2 (level 4) and ell = 3 (level 2)
std::optional<DensityInterval> gsp4_table_interval(u64 ell);

}  // namespace ordscan
