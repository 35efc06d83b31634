#include <doctest.h>
#include <set>

#include "ordscan/bigint.hpp"
#include "ordscan/polyp.hpp"
#include "ordscan/polyq.hpp"
#include "ordscan/primes.hpp"
#include "ordscan/qring.hpp"
#include "ordscan/resmatrix.hpp"
#include "ordscan/rng.hpp"

using namespace ordscan;

TEST_CASE("ord_ell basics") {
  CHECK(ord_ell(Int(0), 2).is_infinity());
  CHECK(ord_ell(Int(1), 5) == Valuation::finite(0));
  CHECK(ord_ell(Int(24), 2) == Valuation::finite(3));
  // additivity with infinity absorbing
  Rng rng(7);
  for (int i = 0; i < 200; ++i) {
    u64 ell = (i % 2) ? 2 : 3;
    Int a = Int((unsigned long)rng.below(1000));
    Int b = Int((unsigned long)rng.below(1000));
    CHECK(ord_ell(a * b, ell) == ord_ell(a, ell) + ord_ell(b, ell));
  }
}

TEST_CASE("ell_free_part") {
  CHECK(ell_free_part(Int(8), Int(2)) == 1);
  CHECK(ell_free_part(Int(40), Int(2)) == 5);
  CHECK(ell_free_part(Int(63), Int(3)) == 7);
}

TEST_CASE("sieve_primes counts") {
  auto p10 = sieve_primes(10);
  CHECK(p10 == std::vector<u64>{2, 3, 5, 7});
  CHECK(sieve_primes(1000).size() == 168);
  CHECK(sieve_primes(100000).size() == 9592);
}

TEST_CASE("factorize") {
  CHECK(factorize(Int(1)).empty());
  auto f24 = factorize(Int(24));
  CHECK(f24[Int(2)] == 3);
  CHECK(f24[Int(3)] == 1);
  auto f = factorize(Int(9591));
  CHECK(f[Int(3)] == 1);
  CHECK(f[Int(23)] == 1);
  CHECK(f[Int(139)] == 1);
  // a product of two largish primes exercises the rho path
  Int big = Int("1000003") * Int("10000019");
  auto fb = factorize(big);
  CHECK(fb[Int("1000003")] == 1);
  CHECK(fb[Int("10000019")] == 1);
}

TEST_CASE("rational arithmetic is exact") {
  Rng rng(11);
  for (int i = 0; i < 500; ++i) {
    long a = (long)rng.below(2000) - 1000;
    long b = (long)rng.below(999) + 1;
    long c = (long)rng.below(2000) - 1000;
    long d = (long)rng.below(999) + 1;
    Rat q = make_rat(a, b) + make_rat(c, d);
    Rat lhs = q * Rat(b) * Rat(d);
    CHECK(lhs == Rat((long)(a * d + c * b)));
  }
}

TEST_CASE("smith valuations examples") {
  ResidueMatrix z(2, 2, 3);  // zero matrix mod 8
  CHECK(smith_valuations(z) == std::vector<unsigned>{3, 3});

  ResidueMatrix m(2, 2, 2);  // diag(1, 0) mod 4
  m.at(0, 0) = 1;
  CHECK(smith_valuations(m) == std::vector<unsigned>{0, 2});
  CHECK(image_cardinality(m) == 4);

  ResidueMatrix d22(2, 2, 3);  // diag(2, 2) mod 8
  d22.at(0, 0) = 2;
  d22.at(1, 1) = 2;
  CHECK(smith_valuations(d22) == std::vector<unsigned>{1, 1});
  CHECK(image_cardinality(d22) == 16);
}

TEST_CASE("smith image cardinality vs brute force, d=2") {
  for (u64 ell : {2ull, 3ull}) {
    for (unsigned n : {1u, 2u}) {
      u64 mod = 1;
      for (unsigned i = 0; i < n; ++i) mod *= ell;
      Rng rng(ell * 100 + n);
      for (int trial = 0; trial < 60; ++trial) {
        ResidueMatrix m(2, ell, n);
        for (int i = 0; i < 4; ++i) m.a[(size_t)i] = rng.below(mod);
        // brute-force image size
        std::set<std::pair<u64, u64>> img;
        for (u64 x = 0; x < mod; ++x)
          for (u64 y = 0; y < mod; ++y)
            img.insert({addmod(mulmod(m.at(0, 0), x, mod), mulmod(m.at(0, 1), y, mod), mod),
                        addmod(mulmod(m.at(1, 0), x, mod), mulmod(m.at(1, 1), y, mod), mod)});
        CHECK(image_cardinality(m) == (long)img.size());
        // image/kernel duality
        u64 ker = 0;
        for (u64 x = 0; x < mod; ++x)
          for (u64 y = 0; y < mod; ++y) {
            u64 u = addmod(mulmod(m.at(0, 0), x, mod), mulmod(m.at(0, 1), y, mod), mod);
            u64 v = addmod(mulmod(m.at(1, 0), x, mod), mulmod(m.at(1, 1), y, mod), mod);
            if (u == 0 && v == 0) ++ker;
          }
        CHECK(image_cardinality(m) * Int(ker) == Int(mod) * Int(mod));
        // membership agrees with brute force on a few vectors
        for (int t = 0; t < 5; ++t) {
          std::array<u64, 4> b{rng.below(mod), rng.below(mod), 0, 0};
          bool brute = img.count({b[0], b[1]}) > 0;
          CHECK(in_image(m, b) == brute);
        }
      }
    }
  }
}

TEST_CASE("quotient ring arithmetic and finite fields") {
  // F_25 = F_5[t]/(t^2 - 2): t^2 - 2 irreducible mod 5
  FiniteField F(5, {3, 0});  // t^2 + 3 = t^2 - 2
  const QRing& R = F.R;
  Rng rng(3);
  for (int i = 0; i < 200; ++i) {
    QRingElem a = qr_from(R, rng.below(5), rng.below(5));
    QRingElem b = qr_from(R, rng.below(5), rng.below(5));
    QRingElem c = qr_from(R, rng.below(5), rng.below(5));
    CHECK(qr_mul(R, a, qr_mul(R, b, c)) == qr_mul(R, qr_mul(R, a, b), c));
    CHECK(qr_mul(R, a, qr_add(R, b, c)) == qr_add(R, qr_mul(R, a, b), qr_mul(R, a, c)));
  }
  // unit group of F_25 is annihilated by 24
  QRingElem g = qr_from(R, 2, 1);
  CHECK(qr_pow(R, g, Int(24)) == qr_one(R));
  CHECK(qr_unit_annihilator(R) == 24);

  // cubic field F_343 = F_7[t]/(t^3 - 2)
  FiniteField F3(7, {5, 0, 0});
  CHECK(qr_unit_annihilator(F3.R) == 342);
  QRingElem h = qr_from(F3.R, 1, 1, 0);
  CHECK(qr_pow(F3.R, h, Int(342)) == qr_one(F3.R));

  // reducible defining polynomial must be rejected for fields
  CHECK_THROWS(FiniteField(5, {4, 0}));  // t^2 + 4 = t^2 - 1 = (t-1)(t+1)

  // associativity/distributivity across k = 1,2,3 with random rings
  for (int k = 1; k <= 3; ++k) {
    std::vector<u64> coeffs((size_t)k, 1);
    QRing Rk(11, coeffs);
    for (int i = 0; i < 100; ++i) {
      QRingElem a = qr_from(Rk, rng.below(11), rng.below(11), rng.below(11));
      QRingElem b = qr_from(Rk, rng.below(11), rng.below(11), rng.below(11));
      QRingElem c = qr_from(Rk, rng.below(11), rng.below(11), rng.below(11));
      CHECK(qr_mul(Rk, a, qr_mul(Rk, b, c)) == qr_mul(Rk, qr_mul(Rk, a, b), c));
      CHECK(qr_mul(Rk, a, qr_add(Rk, b, c)) == qr_add(Rk, qr_mul(Rk, a, b), qr_mul(Rk, a, c)));
    }
  }
}

TEST_CASE("qring annihilator for non-etale quotients") {
  // t^2 mod 2: local ring, unit group of order 2
  QRing R2(2, {0, 0});
  CHECK(qr_unit_annihilator(R2) == 2);
  // (t+1)^3 mod 3: t^3 + 1
  QRing R3(3, {1, 0, 0});
  CHECK(qr_unit_annihilator(R3) == 6);
  // x^3 - 2 mod 2 = t^3
  QRing R4(2, {0, 0, 0});
  CHECK(qr_unit_annihilator(R4) == 4);
  // exhaustive: annihilator kills every unit of F_3[t]/(t^3+1)
  for (u64 c0 = 0; c0 < 3; ++c0)
    for (u64 c1 = 0; c1 < 3; ++c1)
      for (u64 c2 = 0; c2 < 3; ++c2) {
        QRingElem a = qr_from(R3, c0, c1, c2);
        if (qr_norm(R3, a) == 0) continue;
        CHECK(qr_pow(R3, a, qr_unit_annihilator(R3)) == qr_one(R3));
      }
}

TEST_CASE("polynomial arithmetic over F_p and Q") {
  PolyP f(7, {5, 0, 0, 1});  // x^3 - 2 mod 7, irreducible (2 has no cube root mod 7)
  CHECK(count_roots(f, 7) == 0);
  PolyP g(7, {6, 1});  // x + 6 = x - 1
  auto [q, r] = divmod(f, g);
  CHECK((q * g + r) == f);

  PolyQ h({Rat(1), Rat(-4), Rat(0), Rat(4)});  // 4x^3 - 4x + 1
  CHECK(discriminant(h) == Rat(592));
  PolyQ cube({Rat(-1), Rat(0), Rat(0), Rat(1)});
  CHECK(eval(cube, Rat(2)) == Rat(7));
}

TEST_CASE("decimal rendering") {
  CHECK(rat_to_decimal(make_rat(11, 21), 10) == "0.5238095238");
  CHECK(rat_to_decimal(make_rat(654, 1228), 5) == "0.53257");
  CHECK(rat_to_decimal(make_rat(57, 167), 5) == "0.34132");
  CHECK(rat_to_decimal(make_rat(1, 3), 5) == "0.33333");
}

TEST_CASE("smith image cardinality vs brute force, d = 3 and 4") {
  Rng rng(31);
  for (int d : {3, 4}) {
    for (int trial = 0; trial < 25; ++trial) {
      unsigned n = 2;
      u64 mod = 4;
      ResidueMatrix m(d, 2, n);
      for (int i = 0; i < d * d; ++i) m.a[(size_t)i] = rng.below(mod);
      // brute-force image size over (Z/4)^d
      std::set<std::array<u64, 4>> img;
      u64 count = 1;
      for (int i = 0; i < d; ++i) count *= mod;
      for (u64 idx = 0; idx < count; ++idx) {
        std::array<u64, 4> x{}, y{};
        u64 t = idx;
        for (int i = 0; i < d; ++i) {
          x[(size_t)i] = t % mod;
          t /= mod;
        }
        for (int i = 0; i < d; ++i) {
          u64 s = 0;
          for (int j = 0; j < d; ++j) s = addmod(s, mulmod(m.at(i, j), x[(size_t)j], mod), mod);
          y[(size_t)i] = s;
        }
        img.insert(y);
      }
      CAPTURE(d);
      CHECK(image_cardinality(m) == (long)img.size());
      // membership matches on random targets
      for (int t2 = 0; t2 < 6; ++t2) {
        std::array<u64, 4> b{};
        for (int i = 0; i < d; ++i) b[(size_t)i] = rng.below(mod);
        CHECK(in_image(m, b) == (img.count(b) > 0));
      }
    }
  }
}
