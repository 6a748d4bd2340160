#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>

#include "trigbeta/prng.hpp"
#include "trigbeta/rational.hpp"

using namespace trigbeta;

TEST_CASE("construction reduces and normalizes sign") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(-2, 4) == Rational(-1, 2));
  CHECK(Rational(2, -4) == Rational(-1, 2));
  CHECK(Rational(-2, -4) == Rational(1, 2));
  CHECK(Rational(0, 7) == Rational(0));
  CHECK(Rational(6, 3).is_integer());
  CHECK(Rational(6, 3).num() == 2);
  CHECK(Rational(5, 1).den() == 1);
}

TEST_CASE("zero denominator is rejected") {
  CHECK_THROWS_AS(Rational(1, 0), DomainError);
}

TEST_CASE("arithmetic is exact") {
  CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
  CHECK(Rational(1, 2) - Rational(1, 3) == Rational(1, 6));
  CHECK(Rational(2, 3) * Rational(9, 4) == Rational(3, 2));
  CHECK(Rational(1, 2) / Rational(1, 4) == Rational(2));
  CHECK(-Rational(3, 7) == Rational(-3, 7));
  CHECK_THROWS_AS(Rational(1) / Rational(0), PoleError);
}

TEST_CASE("comparison is exact under cross multiplication") {
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(-1, 2) < Rational(-1, 3));
  CHECK(Rational(7, 8) <= Rational(7, 8));
  CHECK(Rational(1000000007, 1000000006) > Rational(1));
  // values too close for doubles to separate
  const Rational a(4503599627370495LL, 4503599627370496LL);
  const Rational b(4503599627370494LL, 4503599627370495LL);
  CHECK(b < a);
  CHECK(a.cmp(b) == 1);
}

TEST_CASE("overflow is an error, never wraparound") {
  const Rational big(INT64_MAX, 1);
  CHECK_THROWS_AS(big + big, OverflowError);
  CHECK_THROWS_AS(big * Rational(2), OverflowError);
  CHECK_THROWS_AS(Rational(INT64_MAX, 2) * Rational(3, 1), OverflowError);
}

TEST_CASE("string forms") {
  CHECK(Rational(1, 2).str() == "1/2");
  CHECK(Rational(-1, 2).str() == "-1/2");
  CHECK(Rational(5).str() == "5");
  CHECK(Rational(0).str() == "0");
}

TEST_CASE("field axioms hold on random small rationals") {
  SplitMix64 rng(2024);
  auto small = [&] {
    return Rational(rng.uniform_int(-40, 40), rng.uniform_int(1, 24));
  };
  for (int i = 0; i < 300; ++i) {
    const Rational a = small(), b = small(), c = small();
    CHECK((a + b) + c == a + (b + c));
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a - a == Rational(0));
    if (!b.is_zero()) CHECK((a / b) * b == a);
  }
}

TEST_CASE("to_double on representable values") {
  CHECK(Rational(1, 2).to_double() == 0.5);
  CHECK(Rational(-3, 4).to_double() == -0.75);
  CHECK(Rational(1, 3).to_double() == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
}
