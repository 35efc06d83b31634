#include <doctest.h>

#include <set>
#include <tuple>

#include "ordscan/matgroups.hpp"

using namespace ordscan;

namespace {

GroupSpec mk(SpecKind k, u64 ell, unsigned g = 2) {
  GroupSpec s;
  s.kind = k;
  s.ell = ell;
  s.gsp_g = g;
  if (k == SpecKind::CartanNonsplit || k == SpecKind::CartanNormalizerNonsplit) {
    // x^2 + x + 1 for ell = 2, x^2 + 1 for ell = 3 (both irreducible)
    if (ell == 2) s.cns_c = 1, s.cns_d = 1;
    else if (ell == 3) s.cns_c = 0, s.cns_d = 1;
    else s.cns_c = 0, s.cns_d = ell - (ell == 5 ? 2 : 1);
  }
  return s;
}

// generators of the full affine group A[l^n]^d x| T_n: coordinate translations
// plus every matrix
std::vector<AffineElement> full_affine_generators(const GroupSpec& spec, unsigned n) {
  auto mats = enumerate_group(spec, n);
  std::vector<AffineElement> gens;
  int d = spec.dim();
  for (int i = 0; i < d; ++i) {
    AffineElement t;
    t.linear = ResidueMatrix::identity(d, spec.ell, n);
    t.translation[(size_t)i] = 1;
    gens.push_back(t);
  }
  for (const auto& m : mats) {
    AffineElement e;
    e.linear = m;
    gens.push_back(e);
  }
  return gens;
}

}  // namespace

TEST_CASE("enumeration cardinalities") {
  CHECK(enumerate_group(mk(SpecKind::GL2Full, 2), 1).size() == 6);
  CHECK(enumerate_group(mk(SpecKind::GL2Full, 3), 1).size() == 48);
  CHECK(enumerate_group(mk(SpecKind::GL2Full, 2), 2).size() == 96);
  CHECK(enumerate_group(mk(SpecKind::GSp, 2, 2), 1).size() == 720);
  CHECK(enumerate_group(mk(SpecKind::GSp, 3, 2), 1).size() == 103680);
  CHECK(enumerate_group(mk(SpecKind::CartanSplit, 3), 1).size() == 4);
  CHECK(enumerate_group(mk(SpecKind::CartanNormalizerSplit, 3), 1).size() == 8);
  CHECK(enumerate_group(mk(SpecKind::CartanNonsplit, 2), 1).size() == 3);
  CHECK(enumerate_group(mk(SpecKind::CartanNormalizerNonsplit, 2), 3).size() ==
        2 * 16 * 3);  // 2 * l^(2(n-1)) * (l^2-1)
  CHECK(enumerate_group(mk(SpecKind::BigTorusS3, 2), 3).size() == 24);
  // every enumerated gsp element satisfies the similitude condition
  for (const auto& m : enumerate_group(mk(SpecKind::GSp, 2, 2), 1)) CHECK(is_gsp_member(m));
}

TEST_CASE("gsp level-2 enumeration matches kernel size") {
  auto v = enumerate_group(mk(SpecKind::GSp, 2, 2), 2);
  CHECK(v.size() == 720u << 11);  // kernel is the 11-dim lie algebra over F_2
  // spot-check membership of a few elements
  for (size_t i = 0; i < v.size(); i += 100003) CHECK(is_gsp_member(v[i]));
}

TEST_CASE("cartan normalizer cosets normalize the cartan") {
  for (u64 ell : {2ull, 3ull}) {
    for (auto kind : {SpecKind::CartanNormalizerSplit, SpecKind::CartanNormalizerNonsplit}) {
      GroupSpec ns = mk(kind, ell);
      auto N = enumerate_group(ns, 2);
      std::set<u64> nkeys;
      for (const auto& m : N) nkeys.insert(m.key());
      CHECK(nkeys.size() == N.size());
      // closed under products
      for (size_t i = 0; i < N.size(); i += 7)
        for (size_t j = 0; j < N.size(); j += 11)
          CHECK(nkeys.count(mat_mul(N[i], N[j]).key()) == 1);
    }
  }
}

TEST_CASE("density_level GL2 examples") {
  auto d1 = density_level(mk(SpecKind::GL2Full, 2), 1);
  CHECK(d1.lower == make_rat(1, 3));
  CHECK(d1.upper == make_rat(5, 8));

  auto ds = density_level(mk(SpecKind::ScalarUnits, 2), 1);
  CHECK(ds.lower == 0);
  CHECK(ds.upper == make_rat(1, 2));

  // nested intervals containing 11/21 with width <= 2^-n
  Rat target = make_rat(11, 21);
  Rat prev_lower(0), prev_upper(1);
  for (unsigned n = 1; n <= 3; ++n) {
    auto d = density_level(mk(SpecKind::GL2Full, 2), n);
    CHECK(d.lower >= prev_lower);
    CHECK(d.upper <= prev_upper);
    CHECK(d.lower <= target);
    CHECK(target <= d.upper);
    CHECK(d.upper - d.lower <= make_rat(1, (long)(1u << n)));
    prev_lower = d.lower;
    prev_upper = d.upper;
  }
}

TEST_CASE("density_level GSp4 at F_2 matches the closed-form lower bound") {
  auto d = density_level(mk(SpecKind::GSp, 2, 2), 1);
  CHECK(d.lower == make_rat(19, 45));  // 304 of 720 elements have det(M-I) odd
}

TEST_CASE("oracle equivalence: affine brute force equals density_level upper") {
  for (auto [kind, ell, n] : std::vector<std::tuple<SpecKind, u64, unsigned>>{
           {SpecKind::GL2Full, 2, 1},
           {SpecKind::GL2Full, 2, 2},
           {SpecKind::GL2Full, 3, 1},
           {SpecKind::ScalarUnits, 2, 2},
           {SpecKind::ScalarUnits, 3, 2},
           {SpecKind::CartanSplit, 3, 1},
           {SpecKind::CartanNormalizerSplit, 3, 1},
           {SpecKind::CartanNonsplit, 2, 2},
           {SpecKind::CartanNormalizerNonsplit, 2, 2},
           {SpecKind::SplitTorusPair, 2, 2},
           {SpecKind::BigTorusS3, 2, 2},
       }) {
    GroupSpec spec = mk(kind, ell);
    auto gens = full_affine_generators(spec, n);
    Rat oracle = affine_fixed_fraction(gens, n);
    auto d = density_level(spec, n);
    CAPTURE((int)kind);
    CHECK(oracle == d.upper);
  }
}

TEST_CASE("affine_fixed_fraction basics") {
  // trivial group: identity fixes everything
  AffineElement id;
  id.linear = ResidueMatrix::identity(2, 2, 1);
  CHECK(affine_fixed_fraction({id}, 1) == 1);
  // full (Z/2)^2 x| GL2(F_2): 5/8
  CHECK(affine_fixed_fraction(full_affine_generators(mk(SpecKind::GL2Full, 2), 1), 1) ==
        make_rat(5, 8));
}

TEST_CASE("monotonicity of density intervals in n") {
  for (auto kind : {SpecKind::ScalarUnits, SpecKind::SplitTorusPair, SpecKind::CartanSplit,
                    SpecKind::CartanNonsplit, SpecKind::BigTorusS3}) {
    GroupSpec spec = mk(kind, 2);
    Rat lo(0), hi(1);
    for (unsigned n = 1; n <= 5; ++n) {
      auto d = density_level(spec, n);
      CHECK(d.lower >= lo);
      CHECK(d.upper <= hi);
      CHECK(d.lower <= d.upper);
      Int elln = pow_int(2, n);
      CHECK(d.upper - d.lower <= make_rat(Int(1), elln));
      lo = d.lower;
      hi = d.upper;
    }
  }
}

TEST_CASE("big torus interval brackets 67/168") {
  Rat target = make_rat(67, 168);
  auto d = density_level(mk(SpecKind::BigTorusS3, 2), 6);
  CHECK(d.lower <= target);
  CHECK(target <= d.upper);
  CHECK(d.upper - d.lower <= make_rat(1, 64));
}

TEST_CASE("split torus pair interval brackets (l^3-l^2-l-1)/(l^3-1)") {
  auto d2 = density_level(mk(SpecKind::SplitTorusPair, 2), 3);
  CHECK(d2.lower <= make_rat(1, 7));
  CHECK(make_rat(1, 7) <= d2.upper);
  auto d3 = density_level(mk(SpecKind::SplitTorusPair, 3), 2);
  CHECK(d3.lower <= make_rat(7, 13));
  CHECK(make_rat(7, 13) <= d3.upper);
}

TEST_CASE("cmramified generated affine group brackets 17/32") {
  // the omega_2 image generators mod 4
  auto mk_aff = [](std::array<u64, 2> t, std::array<i64, 4> m) {
    AffineElement e;
    e.linear = ResidueMatrix(2, 2, 2);
    for (int i = 0; i < 4; ++i) {
      i64 v = m[(size_t)i] % 4;
      if (v < 0) v += 4;
      e.linear.a[(size_t)i] = (u64)v;
    }
    e.translation = {t[0] % 4, t[1] % 4, 0, 0};
    return e;
  };
  std::vector<AffineElement> gens = {
      mk_aff({1, 1}, {1, 0, 0, -1}),
      mk_aff({0, 0}, {0, -1, 1, 0}),
      mk_aff({1, 1}, {2, -1, 1, 2}),
  };
  auto closure = affine_closure(gens);
  auto di = affine_fixed_interval(gens, 2);
  Rat target = make_rat(17, 32);
  CAPTURE(closure.size());
  CHECK(di.lower <= target);
  CHECK(target <= di.upper);
}

TEST_CASE("cardinality guard throws") {
  CHECK_THROWS_AS(enumerate_group(mk(SpecKind::GSp, 2, 2), 3), CardinalityGuardExceeded);
  CHECK_THROWS_AS(enumerate_group(mk(SpecKind::GL2Full, 5), 3), CardinalityGuardExceeded);
}

TEST_CASE("density_mc agrees with density_level where both are computable") {
  GroupSpec spec = mk(SpecKind::GL2Full, 2);
  auto d = density_level(spec, 2);
  auto mc = density_mc(spec, 2, 200000, 42);
  // the mc estimand is the capped mean: between the level-2 bounds plus the
  // theoretical 2^-2 truncation slack on the upper side
  CHECK(mc.mean - mc.half_width_99 <= d.upper.get_d() + 0.25);
  CHECK(mc.mean + mc.half_width_99 >= d.lower.get_d());
  CHECK(mc.half_width_99 < 0.01);
}

TEST_CASE("density_mc at GL2 level 4 brackets 11/21 within the truncation slack") {
  GroupSpec spec = mk(SpecKind::GL2Full, 2);
  auto mc = density_mc(spec, 4, 150000, 11, 2);
  double target = 11.0 / 21.0;
  // the estimand exceeds the limit by at most 2^-4
  CHECK(mc.mean + mc.half_width_99 >= target);
  CHECK(mc.mean - mc.half_width_99 <= target + 1.0 / 16.0);
}

TEST_CASE("GSp4 level-2 interval contains the level-4 reference interval") {
  // full enumeration of the 720 * 2^11 elements of GSp4(Z/4)
  auto d = density_level(mk(SpecKind::GSp, 2), 2);
  CHECK(d.lower == make_rat(379, 720));
  CHECK(d.lower >= make_rat(19, 45));
  CHECK(Rat(d.upper - d.lower) <= make_rat(1, 4));
  CHECK(d.lower <= make_rat(26701, 46080));
  CHECK(make_rat(1201, 2048) <= d.upper);
}
