#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "aperiodica/errors.hpp"
#include "aperiodica/quadratic_field.hpp"

using namespace aperiodica;

TEST(Rational, Parsing) {
  EXPECT_EQ(parse_rational("1/3"), Rational(1, 3));
  EXPECT_EQ(parse_rational("-4/6"), Rational(-2, 3));
  EXPECT_EQ(parse_rational("500"), Rational(500));
  EXPECT_EQ(parse_rational("-0.125"), Rational(-1, 8));
  EXPECT_EQ(parse_rational(" 2.5 "), Rational(5, 2));
  EXPECT_THROW(parse_rational("1/0"), InputError);
  EXPECT_THROW(parse_rational("abc"), InputError);
  EXPECT_THROW(parse_rational("1e3"), InputError);
  EXPECT_THROW(parse_rational(""), InputError);
  EXPECT_EQ(to_string(Rational(-3, 4)), "-3/4");
}

TEST(Rational, Floor) {
  EXPECT_EQ(floor(Rational(7, 2)), 3);
  EXPECT_EQ(floor(Rational(-7, 2)), -4);
  EXPECT_EQ(floor(Rational(-4)), -4);
}

TEST(QuadField, Validation) {
  EXPECT_NO_THROW(QuadField(5, Omega::golden));
  EXPECT_NO_THROW(QuadField(2, Omega::sqrt_d));
  EXPECT_THROW(QuadField(4, Omega::sqrt_d), InputError);
  EXPECT_THROW(QuadField(12, Omega::sqrt_d), InputError);
  EXPECT_THROW(QuadField(1, Omega::sqrt_d), InputError);
  EXPECT_THROW(QuadField(3, Omega::golden), InputError);
}

TEST(FieldElement, ExactSign) {
  // 3 − 4/3·√5 ≈ 0.019 and 2 − 9/10·√5 ≈ −0.012.
  EXPECT_EQ(FieldElement(5, 3, Rational(-4, 3)).sign(), 1);
  EXPECT_EQ(FieldElement(5, 2, Rational(-9, 10)).sign(), -1);
  EXPECT_EQ(FieldElement(5, -2, 1).sign(), 1);
  EXPECT_EQ(FieldElement(5, 0, 0).sign(), 0);
  EXPECT_EQ(FieldElement(2, 0, -1).sign(), -1);
  std::mt19937 rng(11);
  for (int i = 0; i < 2000; ++i) {
    const auto p = static_cast<long>(rng() % 2001) - 1000;
    const auto q = static_cast<long>(rng() % 2001) - 1000;
    const FieldElement z(7, p, q);
    const double v = static_cast<double>(p) + static_cast<double>(q) * std::sqrt(7.0);
    if (std::abs(v) > 1e-9) {
      EXPECT_EQ(z.sign(), v > 0 ? 1 : -1) << p << " " << q;
    }
  }
}

TEST(FieldElement, Arithmetic) {
  const FieldElement tau(5, Rational(1, 2), Rational(1, 2));
  EXPECT_EQ(tau * tau, tau + FieldElement(5, 1));  // τ² = τ + 1
  EXPECT_EQ(tau * tau.conjugate(), FieldElement(5, -1));
  EXPECT_EQ((tau * tau) / tau, tau);
  EXPECT_THROW(tau / FieldElement(5, 0), InputError);
  EXPECT_THROW(tau + FieldElement(2, 1), InputError);
  EXPECT_EQ(to_string(tau), "1/2 + 1/2*sqrt(5)");
  EXPECT_EQ(to_string(tau.conjugate()), "1/2 - 1/2*sqrt(5)");
  EXPECT_EQ(decimal(tau.to_double()), "1.61803398874989");
}

TEST(FieldElement, FloorCeil) {
  const FieldElement tau(5, Rational(1, 2), Rational(1, 2));
  EXPECT_EQ(tau.floor(), 1);
  EXPECT_EQ(tau.ceil(), 2);
  EXPECT_EQ((-tau).floor(), -2);
  EXPECT_EQ(FieldElement(5, 3).floor(), 3);
  EXPECT_EQ(FieldElement(5, 3).ceil(), 3);
  // τ^40 = L_40 − τ'^40 sits just below the Lucas number L_40 = 228826127.
  FieldElement power(5, 1);
  for (int i = 0; i < 40; ++i) {
    power = power * tau;
  }
  EXPECT_EQ(power.floor(), 228826126);
  EXPECT_EQ(power.ceil(), 228826127);
  EXPECT_THROW(FieldElement(5, 0, Rational(BigInt(1) << 60)).floor(), LimitError);
}

TEST(FieldElement, Ordering) {
  const FieldElement a(5, 1, Rational(1, 3));
  const FieldElement b(5, Rational(7, 4));
  EXPECT_EQ(a < b, a.to_double() < b.to_double());
  EXPECT_TRUE(a <= a);
  EXPECT_EQ(compare(a, a), 0);
}
