#include <doctest.h>

#include "ordscan/somos.hpp"

using namespace ordscan;

TEST_CASE("somos terms") {
  auto a = somos_terms(11);
  std::vector<Int> expect{1, 1, 1, 1, 2, 3, 7, 23, 59, 314, 1529, 8209};
  CHECK(a == expect);
}

TEST_CASE("quartic invariant on windows of four consecutive terms") {
  CHECK(quartic_invariant(1, 1, 1, 1) == 0);
  CHECK(quartic_invariant(1, 1, 1, 2) == 0);
  CHECK(quartic_invariant(2, 3, 7, 23) == 0);
  auto a = somos_terms(103);
  for (unsigned n = 0; n + 3 <= 100 + 3 - 1 + 1 && n + 3 < a.size(); ++n)
    CHECK(quartic_invariant(a[n], a[n + 1], a[n + 2], a[n + 3]) == 0);
}

TEST_CASE("scaling identity") {
  // F(a_{n-1},..,a_{n+2}) = (a_{n+2}/a_{n-2}) F(a_{n-2},..,a_{n+1}); both
  // sides vanish, so verify the identity itself on shifted windows with the
  // exact rational quotient
  auto a = somos_terms(102);
  for (unsigned n = 4; n + 2 <= 100; ++n) {
    Rat lhs(quartic_invariant(a[n - 1], a[n], a[n + 1], a[n + 2]));
    Rat rhs = make_rat(a[n + 2], a[n - 2]) *
              Rat(quartic_invariant(a[n - 2], a[n - 1], a[n], a[n + 1]));
    CHECK(lhs == rhs);
  }
}

TEST_CASE("growth is monotone from a_4 on") {
  auto a = somos_terms(60);
  for (unsigned n = 5; n <= 60; ++n) CHECK(a[n] > a[n - 1]);
}

TEST_CASE("ec identity for n = 2..12") {
  auto rows = somos_ec_identity_check(12);
  for (const auto& r : rows) {
    CAPTURE(r.n);
    CHECK(r.pass);
  }
}

TEST_CASE("somos_divides small primes") {
  CHECK(somos_divides(2).value());
  CHECK(somos_divides(3).value());
  CHECK(somos_divides(7).value());
  CHECK(somos_divides(23).value());
  // exact-divisibility double check for p <= 100 against the integer terms
  auto a = somos_terms(50);
  for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull,
                37ull, 41ull, 43ull, 47ull, 53ull, 59ull, 61ull, 67ull, 71ull, 73ull,
                79ull, 83ull, 89ull, 97ull}) {
    bool divides_prefix = false;
    for (const auto& t : a)
      if (mpz_divisible_ui_p(t.get_mpz_t(), (unsigned long)p)) divides_prefix = true;
    auto got = somos_divides(p);
    REQUIRE(got.has_value());
    if (divides_prefix) CHECK(*got);
    // when no prefix term is divisible the scan may still find a later one,
    // so only the positive direction is asserted here
  }
}

TEST_CASE("odd-order equivalence to 1e3") {
  auto rep = somos_oddorder_equivalence(1000);
  CHECK(rep.counterexamples.empty());
  CHECK(rep.undetermined == 0);
  CHECK(rep.total == 167);
  CHECK(rep.good == 93);
}
