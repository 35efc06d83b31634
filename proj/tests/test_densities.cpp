#include <doctest.h>

#include "ordscan/densities.hpp"

using namespace ordscan;

namespace {

GroupSpec mk(SpecKind k, u64 ell) {
  GroupSpec s;
  s.kind = k;
  s.ell = ell;
  if (k == SpecKind::CartanNonsplit || k == SpecKind::CartanNormalizerNonsplit) {
    if (ell == 2) s.cns_c = 1, s.cns_d = 1;
    else s.cns_c = 0, s.cns_d = 1;
  }
  return s;
}

bool inside(const Rat& x, const DensityInterval& d) { return d.lower <= x && x <= d.upper; }

}  // namespace

TEST_CASE("gm density values") {
  CHECK(gm_density(2) == make_rat(1, 3));
  CHECK(gm_density(5) == make_rat(19, 24));
  CHECK(gm_density(3) == make_rat(5, 8));
  // exact series: (l-2)/(l-1) + sum_k l^{-2k} = gm_density(l)
  for (u64 ell : {2ull, 3ull, 5ull, 7ull}) {
    Rat series = make_rat(Int((long)ell - 2), Int((long)ell - 1)) +
                 make_rat(Int(1), Int((long)(ell * ell - 1)));
    CHECK(series == gm_density(ell));
  }
}

TEST_CASE("gl2 density values") {
  CHECK(gl2_density(2) == make_rat(11, 21));
  CHECK(gl2_density(5) == make_rat(2381, 2976));
  CHECK(gl2_density(3) == make_rat(139, 208));
}

TEST_CASE("cm density values") {
  CHECK(cm_density(2, CartanShape::Split, CartanScope::Cartan) == make_rat(1, 9));
  CHECK(cm_density(2, CartanShape::Inert, CartanScope::Cartan) == make_rat(11, 15));
  CHECK(cm_density(2, CartanShape::Split, CartanScope::Normalizer) == make_rat(2, 9));
  CHECK(cm_density(2, CartanShape::Inert, CartanScope::Normalizer) == make_rat(8, 15));
  CHECK(cm_density(5, CartanShape::Split, CartanScope::Normalizer) == make_rat(817, 1152));
}

TEST_CASE("split torus pair density values") {
  CHECK(split_torus_pair_density(2) == make_rat(1, 7));
  CHECK(split_torus_pair_density(3) == make_rat(7, 13));
  CHECK(split_torus_pair_density(5) == make_rat(47, 62));
}

TEST_CASE("gsp4 bounds") {
  auto b2 = gsp4_bounds(2);
  CHECK(b2.lower == make_rat(19, 45));
  CHECK(b2.upper == make_rat(32, 45));
  auto t2 = gsp4_table_interval(2).value();
  CHECK(b2.lower <= t2.lower);
  CHECK(t2.upper <= b2.upper);
  auto b3 = gsp4_bounds(3);
  auto t3 = gsp4_table_interval(3).value();
  CHECK(b3.lower <= t3.lower);
  CHECK(t3.upper <= b3.upper);
  CHECK(!gsp4_table_interval(5).has_value());
}

TEST_CASE("gl2_cn matches enumeration") {
  CHECK(gl2_cn(2, 1) == 2);
  CHECK(gl2_cn(3, 1) == 27);
  CHECK(gl2_cn(2, 2) == 24);
  for (u64 ell : {2ull, 3ull}) {
    for (unsigned n : {1u, 2u}) {
      auto elems = enumerate_group(mk(SpecKind::GL2Full, ell), n);
      ResidueMatrix id = ResidueMatrix::identity(2, ell, n);
      Int count = 0;
      for (const auto& M : elems) {
        u64 det = mat_det(mat_sub(M, id));
        unsigned v = det == 0 ? n : (unsigned)ord_ell_u64(det, ell).v;
        if (v == n - 1 && (det != 0 || n == 1)) ++count;
        // for n = 1 the condition is det != 0; handled by v == 0 above
      }
      CAPTURE(ell);
      CAPTURE(n);
      CHECK(count == gl2_cn(ell, n));
    }
  }
}

TEST_CASE("cn telescopes to the gl2 density") {
  for (u64 ell : {2ull, 3ull, 5ull}) {
    Rat sum(0);
    for (unsigned n = 1; n <= 40; ++n) {
      Int l((unsigned long)ell);
      Int gl2_order = pow_int(l, 4 * (n - 1)) * (l * l - 1) * (l * l - l);
      sum += make_rat(gl2_cn(ell, n), pow_int(l, n - 1) * gl2_order);
    }
    Rat diff = gl2_density(ell) - sum;
    if (diff < 0) diff = -diff;
    CHECK(diff <= make_rat(Int(1), pow_int(ell, 40)));
  }
}

TEST_CASE("pair_count matches brute force exhaustively") {
  for (u64 ell : {2ull, 3ull, 5ull}) {
    for (unsigned n : {2u, 3u}) {
      u64 modn = 1;
      for (unsigned i = 0; i < n; ++i) modn *= ell;
      for (u64 a = 0; a < ell; ++a)
        for (u64 b = 0; b < ell; ++b)
          for (u64 c = 0; c < modn; ++c) {
            u64 brute = 0;
            for (u64 al = a; al < modn; al += ell)
              for (u64 be = b; be < modn; be += ell)
                if (mulmod(al, be, modn) == c) ++brute;
            CAPTURE(ell);
            CAPTURE(n);
            CAPTURE(a);
            CAPTURE(b);
            CAPTURE(c);
            REQUIRE(pair_count(a, b, c, ell, n) == (long)brute);
          }
    }
  }
}

TEST_CASE("pair_count spec examples") {
  CHECK(pair_count(1, 1, 2, 3, 2) == 0);
  CHECK(pair_count(1, 1, 4, 3, 2) == 3);
  CHECK(pair_count(0, 0, 0, 3, 2) == 9);
}

TEST_CASE("cross-validation against enumeration intervals") {
  // gm vs scalar units
  CHECK(inside(gm_density(2), density_level(mk(SpecKind::ScalarUnits, 2), 4)));
  CHECK(inside(gm_density(3), density_level(mk(SpecKind::ScalarUnits, 3), 4)));
  // gl2
  CHECK(inside(gl2_density(2), density_level(mk(SpecKind::GL2Full, 2), 3)));
  CHECK(inside(gl2_density(3), density_level(mk(SpecKind::GL2Full, 3), 2)));
  // cm split/inert, cartan and normalizer
  CHECK(inside(cm_density(2, CartanShape::Split, CartanScope::Cartan),
               density_level(mk(SpecKind::CartanSplit, 2), 4)));
  CHECK(inside(cm_density(2, CartanShape::Inert, CartanScope::Cartan),
               density_level(mk(SpecKind::CartanNonsplit, 2), 4)));
  CHECK(inside(cm_density(2, CartanShape::Split, CartanScope::Normalizer),
               density_level(mk(SpecKind::CartanNormalizerSplit, 2), 4)));
  CHECK(inside(cm_density(2, CartanShape::Inert, CartanScope::Normalizer),
               density_level(mk(SpecKind::CartanNormalizerNonsplit, 2), 4)));
  CHECK(inside(cm_density(3, CartanShape::Split, CartanScope::Normalizer),
               density_level(mk(SpecKind::CartanNormalizerSplit, 3), 3)));
  CHECK(inside(cm_density(3, CartanShape::Inert, CartanScope::Normalizer),
               density_level(mk(SpecKind::CartanNormalizerNonsplit, 3), 3)));
  // split torus pair
  CHECK(inside(split_torus_pair_density(2), density_level(mk(SpecKind::SplitTorusPair, 2), 3)));
  CHECK(inside(split_torus_pair_density(3), density_level(mk(SpecKind::SplitTorusPair, 3), 2)));
  // gsp4: enumeration interval at level 1 contains the table interval
  auto d1 = density_level(mk(SpecKind::GSp, 2), 1);
  auto t2 = gsp4_table_interval(2).value();
  CHECK(d1.lower <= t2.lower);
  CHECK(t2.upper <= d1.upper);
}

TEST_CASE("gl2 level-4 interval has width <= 1/16 and contains 11/21") {
  auto d = density_level(mk(SpecKind::GL2Full, 2), 4);
  CHECK(Rat(d.upper - d.lower) <= make_rat(1, 16));
  CHECK(d.lower <= make_rat(11, 21));
  CHECK(make_rat(11, 21) <= d.upper);
}
