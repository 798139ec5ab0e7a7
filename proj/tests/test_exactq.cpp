#include <doctest.h>

#include <cmath>
#include <random>

#include "equiaudit/exactq.hpp"

using equiaudit::BigInt;
using equiaudit::Rational;

TEST_CASE("bigint arithmetic basics") {
  BigInt a(123456789), b(-987654321);
  CHECK((a + b).to_string() == "-864197532");
  CHECK((a * b).to_string() == "-121932631112635269");
  BigInt q, r;
  BigInt::divmod(b, a, q, r);
  CHECK((q * a + r) == b);
  CHECK(BigInt::gcd(BigInt(48), BigInt(36)) == BigInt(12));
  CHECK(BigInt(1).shifted_left(100).bit_length() == 101);
  CHECK(BigInt(0).to_string() == "0");
}

TEST_CASE("bigint large multiplication and division invert") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    BigInt a = BigInt::from_uint64(rng());
    BigInt b = BigInt::from_uint64(rng() | 1);
    for (int i = 0; i < trial % 4; ++i) a = a * BigInt::from_uint64(rng());
    BigInt q, r;
    BigInt::divmod(a, b, q, r);
    CHECK(q * b + r == a);
    CHECK(r.abs() < b.abs());
  }
}

TEST_CASE("division by powers of two: quotient, remainder, and signs") {
  for (int k : {1, 5, 31, 40, 64}) {
    const BigInt pow2 = BigInt(1).shifted_left(static_cast<std::size_t>(k));
    for (std::int64_t base : {0ll, 1ll, 7ll, 123456789ll}) {
      const BigInt a = pow2 * BigInt(3) + BigInt(base);
      for (const BigInt& dividend : {a, -a}) {
        for (const BigInt& divisor : {pow2, -pow2}) {
          BigInt q, r;
          BigInt::divmod(dividend, divisor, q, r);
          CHECK(q * divisor + r == dividend);
          CHECK(r.abs() < divisor.abs());
          // truncation: remainder carries the dividend's sign
          CHECK((r.is_zero() || r.signum() == dividend.signum()));
        }
      }
    }
  }
}

TEST_CASE("trailing zeros and power-of-two detection") {
  CHECK(BigInt(1).is_power_of_two());
  CHECK(BigInt(1024).is_power_of_two());
  CHECK(BigInt(1).shifted_left(97).is_power_of_two());
  CHECK_FALSE(BigInt(3).is_power_of_two());
  CHECK_FALSE(BigInt(0).is_power_of_two());
  CHECK(BigInt(1024).trailing_zeros() == 10);
  CHECK(BigInt(96).trailing_zeros() == 5);
  CHECK(BigInt(1).shifted_left(97).trailing_zeros() == 97);
}

TEST_CASE("rational round-trips every double exactly") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> dist(-10.0, 10.0);
  for (int trial = 0; trial < 500; ++trial) {
    const double v = dist(rng);
    CHECK(Rational::from_double(v).to_double() == v);
  }
  for (double v : {0.3, 0.1, 1.0 / 3.0, -0.25, 2.5e-5, 0.0, 1e300, -1e-300})
    CHECK(Rational::from_double(v).to_double() == v);
}

TEST_CASE("rational rounding picks the nearest double") {
  const Rational third(1, 3);
  CHECK(third.to_double() == 1.0 / 3.0);
  const Rational tenth(1, 10);
  CHECK(tenth.to_double() == 0.1);
  CHECK(Rational(2, 3).to_double() == 2.0 / 3.0);
  CHECK((Rational(1, 3) + Rational(1, 3) + Rational(1, 3)).to_double() == 1.0);
}

TEST_CASE("rational arithmetic stays exact") {
  Rational sum;
  for (int i = 0; i < 10; ++i) sum += Rational::from_double(0.1);
  // sum of ten exact copies of double(0.1) is NOT 1: the rational tracks it
  CHECK(sum != Rational(1));
  CHECK(sum.to_double() == doctest::Approx(1.0));

  Rational dyadic;
  for (int i = 0; i < 1024; ++i) dyadic += Rational(1, 1024);
  CHECK(dyadic == Rational(1));

  CHECK((Rational(3, 4) * Rational(2, 3)) == Rational(1, 2));
  CHECK((Rational(1, 2) / Rational(1, 8)) == Rational(4));
  CHECK(Rational(7, -14).to_string() == "-1/2");
  CHECK(Rational(31, 32).to_string() == "31/32");
}

TEST_CASE("rational comparisons") {
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(-1, 3) > Rational(-1, 2));
  CHECK(Rational::from_double(0.3) < Rational(3, 10) + Rational(1, 1000000));
}
