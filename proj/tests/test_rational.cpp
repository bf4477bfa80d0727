#include "doctest.h"

#include <random>
#include <stdexcept>

#include "condlogic/rational.hpp"

using condlogic::Rational;

TEST_CASE("rational is stored reduced with a positive denominator") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(2, 4).str() == "1/2");
  CHECK(Rational(1, -2).str() == "-1/2");
  CHECK(Rational(-3, -9).str() == "1/3");
  CHECK(Rational(6, 3).str() == "2");
  CHECK(Rational(0, 5).is_zero());
  CHECK(Rational(0, 5).denominator() == 1);
  CHECK(Rational(10, 4).numerator() == 5);
  CHECK(Rational(10, 4).denominator() == 2);
}

TEST_CASE("zero denominators are rejected") {
  CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
  Rational r(1, 2);
  CHECK_THROWS_AS(r /= Rational(0), std::domain_error);
}

TEST_CASE("parse accepts integers, fractions and exact decimals") {
  CHECK(*Rational::parse("0.95") == Rational(19, 20));
  CHECK(*Rational::parse("0.9") == Rational(9, 10));
  CHECK(*Rational::parse("3") == Rational(3));
  CHECK(*Rational::parse("-7/14") == Rational(-1, 2));
  CHECK(*Rational::parse("1.0") == Rational(1));
  CHECK_FALSE(Rational::parse("abc"));
  CHECK_FALSE(Rational::parse("1/0"));
  CHECK_FALSE(Rational::parse(""));
  CHECK_FALSE(Rational::parse("1/"));
}

TEST_CASE("ordering and display") {
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(-1, 2) < Rational(0));
  CHECK(Rational(7, 10) >= Rational(7, 10));
  CHECK(Rational(19, 20).decimal(2) == "0.95");
  CHECK(Rational(1, 3).to_double() == doctest::Approx(1.0 / 3.0));
  CHECK(condlogic::max(Rational(1, 3), Rational(1, 4)) == Rational(1, 3));
}

TEST_CASE("field axioms on random small rationals") {
  std::mt19937_64 rng(11);
  auto draw = [&] {
    std::int64_t n = static_cast<std::int64_t>(rng() % 41) - 20;
    std::int64_t d = 1 + static_cast<std::int64_t>(rng() % 12);
    return std::pair{Rational(n, d), std::pair{n, d}};
  };
  for (int i = 0; i < 3000; ++i) {
    auto [a, ra] = draw();
    auto [b, rb] = draw();
    auto [c, rc] = draw();
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a + Rational(0) == a);
    CHECK(a * Rational(1) == a);
    CHECK(a + (-a) == Rational(0));
    if (!a.is_zero()) CHECK(a * (Rational(1) / a) == Rational(1));
    // Cross-multiplication oracle for the ordering.
    auto [an, ad] = ra;
    auto [bn, bd] = rb;
    CHECK((a < b) == (an * bd < bn * ad));
    CHECK((a == b) == (an * bd == bn * ad));
    // The sum agrees with integer arithmetic over a common denominator.
    CHECK(a + b == Rational(an * bd + bn * ad, ad * bd));
  }
}
