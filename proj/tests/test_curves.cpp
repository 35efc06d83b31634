#include <doctest.h>

#include "ordscan/curves.hpp"
#include "ordscan/polyp.hpp"
#include "ordscan/primes.hpp"
#include "ordscan/rng.hpp"

using namespace ordscan;

namespace {

WeierstrassQ noncm() { return {Rat(0), Rat(0), Rat(1), Rat(-1), Rat(0)}; }  // y^2+y = x^3-x

}  // namespace

TEST_CASE("discriminants and reduction") {
  CHECK(noncm().discriminant() == Rat(37));
  WeierstrassQ cm3{Rat(0), Rat(0), Rat(0), Rat(0), Rat(3)};  // y^2 = x^3+3
  CHECK(cm3.discriminant() == Rat(-3888));
  CHECK(!reduce_curve(noncm(), 37).has_value());
  CHECK(reduce_curve(noncm(), 2).has_value());
  CHECK(!reduce_curve(cm3, 2).has_value());
  CHECK(!reduce_curve(cm3, 3).has_value());
}

TEST_CASE("exact group law over Q on the somos curve") {
  WeierstrassQ E = noncm();
  EcPointQ a = EcPointQ::affine(Rat(0), Rat(0));
  CHECK(E.on_curve(a));
  EcPointQ two = E.mul(2, a);
  CHECK(two == EcPointQ::affine(Rat(1), Rat(0)));
  EcPointQ three = E.mul(3, a);
  CHECK(three == EcPointQ::affine(Rat(-1), Rat(-1)));
  // group law sanity: (m+n)P = mP + nP for random m, n
  Rng rng(5);
  for (int t = 0; t < 15; ++t) {
    long m = (long)rng.below(30) - 15;
    long n = (long)rng.below(30) - 15;
    CHECK(E.add(E.mul(m, a), E.mul(n, a)) == E.mul(m + n, a));
  }
  for (int k = 1; k <= 12; ++k) CHECK(E.on_curve(E.mul(k, a)));
}

TEST_CASE("curve arithmetic mod p: commutative, associative, identity") {
  WeierstrassQ E = noncm();
  Rng rng(17);
  for (u64 p : sieve_primes(200)) {
    auto Ered = reduce_curve(E, p);
    if (!Ered) continue;
    // collect a few points
    std::vector<EcPointP> pts{EcPointP::O()};
    for (u64 x = 0; x < p && pts.size() < 6; ++x)
      for (u64 y = 0; y < p && pts.size() < 6; ++y)
        if (Ered->on_curve(EcPointP::affine(x, y))) pts.push_back(EcPointP::affine(x, y));
    for (int t = 0; t < 30; ++t) {
      const auto& A = pts[rng.below(pts.size())];
      const auto& B = pts[rng.below(pts.size())];
      const auto& C = pts[rng.below(pts.size())];
      CHECK(Ered->add(A, B) == Ered->add(B, A));
      CHECK(Ered->add(Ered->add(A, B), C) == Ered->add(A, Ered->add(B, C)));
      CHECK(Ered->add(A, EcPointP::O()) == A);
      CHECK(Ered->add(A, Ered->neg(A)).infinity);
      CHECK(Ered->on_curve(Ered->add(A, B)));
    }
  }
}

TEST_CASE("point counts") {
  WeierstrassQ E = noncm();
  auto E5 = reduce_curve(E, 5).value();
  CHECK(ec_count_points(E5) == 8);
  WeierstrassQ cm3{Rat(0), Rat(0), Rat(0), Rat(0), Rat(3)};
  auto C5 = reduce_curve(cm3, 5).value();
  CHECK(ec_count_points(C5) == 6);
  // brute-force comparison across small primes
  for (u64 p : sieve_primes(60)) {
    auto Er = reduce_curve(E, p);
    if (!Er) continue;
    u64 brute = 1;
    for (u64 x = 0; x < p; ++x)
      for (u64 y = 0; y < p; ++y)
        if (Er->on_curve(EcPointP::affine(x, y))) ++brute;
    CHECK(ec_count_points(*Er) == brute);
    CHECK(std::llabs(ec_trace(*Er)) * std::llabs(ec_trace(*Er)) <= (long long)(4 * p));
  }
}

TEST_CASE("reduction commutes with multiplication") {
  WeierstrassQ E = noncm();
  EcPointQ a = EcPointQ::affine(Rat(0), Rat(0));
  for (u64 p : {5ull, 11ull, 13ull, 101ull}) {
    auto Er = reduce_curve(E, p).value();
    for (int n = 1; n <= 20; ++n) {
      EcPointQ nq = E.mul(n, a);
      EcPointP direct = Er.mul(n, EcPointP::affine(0, 0));
      if (nq.infinity) {
        CHECK(direct.infinity);
        continue;
      }
      // reduce the rational coordinates (good p keeps denominators units)
      bool ok = true;
      auto red = [&](const Rat& q) -> u64 {
        if (mpz_divisible_ui_p(q.get_den().get_mpz_t(), (unsigned long)p)) {
          ok = false;
          return 0;
        }
        Int num = q.get_num() % (long)p;
        if (num < 0) num += (long)p;
        return mulmod(num.get_ui(),
                      invmod(mpz_fdiv_ui(q.get_den().get_mpz_t(), (unsigned long)p), p), p);
      };
      u64 rx = red(nq.x), ry = red(nq.y);
      if (ok) {
        CHECK(direct == EcPointP::affine(rx, ry));
      } else {
        CHECK(direct.infinity);  // denominators divisible by p mean nP = O mod p
      }
    }
  }
}

TEST_CASE("bsgs annihilator") {
  WeierstrassQ E = noncm();
  auto E5 = reduce_curve(E, 5).value();
  EcPointP a = EcPointP::affine(0, 0);
  CHECK(ec_bsgs_annihilator(E5, a, Int(2), Int(10)) == 8);
  CHECK(ec_bsgs_annihilator(E5, EcPointP::O(), Int(1), Int(10)) == 1);
  // annihilator against the hasse interval for many primes, rechecked by
  // direct multiplication and by feeding the doubled annihilator
  for (u64 p : sieve_primes(500)) {
    auto Er = reduce_curve(E, p);
    if (!Er) continue;
    EcPointP pt = EcPointP::affine(0, 0);
    Int s = isqrt_int(Int(4 * (long)p));
    Int A = Int((long)p) + 1 - s, B = Int((long)p) + 1 + s + 1;
    if (A < 1) A = 1;
    Int e = ec_bsgs_annihilator(*Er, pt, A, B);
    CHECK(Er->mul(e, pt).infinity);
    CHECK(Er->mul(2 * e, pt).infinity);
  }
  // an interval with no annihilator throws
  CHECK_THROWS_AS(ec_bsgs_annihilator(E5, a, Int(2), Int(7)), NotFound);
}

TEST_CASE("division and torsion polynomials") {
  // y^2 = x^3 + 3: 4-torsion primitive part is x^6 + 60x^3 - 72
  WeierstrassQ cm3{Rat(0), Rat(0), Rat(0), Rat(0), Rat(3)};
  PolyQ t4 = torsion_polynomial(cm3, 4);
  CHECK(t4 == PolyQ({Rat(-72), Rat(0), Rat(0), Rat(60), Rat(0), Rat(0), Rat(1)}));
  // short-model 2-torsion
  WeierstrassQ shortc{Rat(0), Rat(0), Rat(0), Rat(-1), Rat(0)};
  CHECK(torsion_polynomial(shortc, 2) == PolyQ({Rat(0), Rat(-1), Rat(0), Rat(1)}));
  // general-model 2-torsion: b-model cubic with discriminant 592
  PolyQ t2 = torsion_polynomial(noncm(), 2);
  CHECK(t2 == PolyQ({Rat(1), Rat(-4), Rat(0), Rat(4)}));
  CHECK(discriminant(t2) == Rat(592));
  // degree checks: psi_9 primitive part has degree 36
  PolyQ t9 = torsion_polynomial(cm3, 9);
  CHECK(t9.deg() == 36);
  PolyQ t3 = torsion_polynomial(cm3, 3);
  CHECK(t3.deg() == 4);
}

TEST_CASE("torsion polynomial vanishes on true torsion points") {
  // y^2 = x^3 - x has full rational 2-torsion: x = 0, 1, -1
  WeierstrassQ E{Rat(0), Rat(0), Rat(0), Rat(-1), Rat(0)};
  PolyQ t2 = torsion_polynomial(E, 2);
  for (long r : {0L, 1L, -1L}) CHECK(eval(t2, Rat(r)) == 0);
  // order-4 points on y^2 = x^3 + 3 satisfy the primitive quartic part:
  // verify numerically mod a prime by matching roots with 4-torsion
  WeierstrassQ cm3{Rat(0), Rat(0), Rat(0), Rat(0), Rat(3)};
  PolyQ t4 = torsion_polynomial(cm3, 4);
  u64 p = 31;
  auto Er = reduce_curve(cm3, p).value();
  for (u64 x = 0; x < p; ++x)
    for (u64 y = 0; y < p; ++y) {
      EcPointP pt = EcPointP::affine(x, y);
      if (!Er.on_curve(pt)) continue;
      bool ord4 = Er.mul(4, pt).infinity && !Er.mul(2, pt).infinity;
      bool ok = true;
      auto coeffs = reduce_coeffs_mod_p(t4, p, &ok);
      REQUIRE(ok);
      PolyP t4p(p, coeffs);
      if (ord4) CHECK(eval(t4p, x) == 0);
    }
}
