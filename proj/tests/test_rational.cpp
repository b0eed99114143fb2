#include "doctest.h"

#include "cca/rational.hpp"

using cca::InputError;
using cca::Money;
using cca::OverflowError;
using cca::Rational;

TEST_CASE("rational arithmetic is exact and normalized") {
  CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
  CHECK(Rational(1, 2) - Rational(1, 2) == Rational(0));
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(3, -6) == Rational(-1, 2));
  CHECK(Rational(7, 3) * Rational(3, 7) == Rational(1));
  CHECK(Rational(5) / Rational(2) == Rational(5, 2));
  CHECK(-Rational(3, 4) == Rational(-3, 4));
  CHECK(Rational(0, 5).den() == 1);
}

TEST_CASE("rational comparisons cross-multiply exactly") {
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(-1, 2) < Rational(0));
  CHECK(Rational(10, 3) > Rational(3));
  CHECK(Rational(2, 3) <= Rational(2, 3));
  CHECK(Rational(1'000'000'007, 2) < Rational(1'000'000'009, 2));
}

TEST_CASE("rational guards") {
  CHECK_THROWS_AS(Rational(1, 0), InputError);
  CHECK_THROWS_AS(Rational(1) / Rational(0), InputError);
  CHECK_THROWS_AS(Rational(INT64_MAX) + Rational(INT64_MAX), OverflowError);
  CHECK_THROWS_AS(Rational(INT64_MAX, 3) * Rational(7), OverflowError);
}

TEST_CASE("rational string round trip") {
  CHECK(Rational(5).str() == "5");
  CHECK(Rational(-5).str() == "-5");
  CHECK(Rational(1, 2).str() == "1/2");
  CHECK(Rational(-3, 4).str() == "-3/4");
  CHECK(Money::parse("17") == Rational(17));
  CHECK(Money::parse("-9/6") == Rational(-3, 2));
  for (const Rational& r : {Rational(0), Rational(7, 3), Rational(-22, 7), Rational(123456, 789)}) {
    CHECK(Money::parse(r.str()) == r);
  }
  CHECK_THROWS_AS(Money::parse(""), InputError);
  CHECK_THROWS_AS(Money::parse("1/2/3"), InputError);
  CHECK_THROWS_AS(Money::parse("abc"), InputError);
  CHECK_THROWS_AS(Money::parse("1.5"), InputError);
}
