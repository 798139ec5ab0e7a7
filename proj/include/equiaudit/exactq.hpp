#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace equiaudit {

/// Arbitrary-precision signed integer, sign-magnitude with 32-bit limbs.
/// Sized for this project's needs (exact sums of densities, simplex pivots
/// on small tableaus), not for cryptographic workloads.
class BigInt {
 public:
  BigInt() = default;
  BigInt(std::int64_t v);  // NOLINT(google-explicit-constructor)

  static BigInt from_uint64(std::uint64_t v);

  bool is_zero() const { return mag_.empty(); }
  bool is_negative() const { return sign_ < 0; }
  int signum() const { return sign_; }

  BigInt operator-() const;
  BigInt abs() const;

  BigInt operator+(const BigInt& o) const;
  BigInt operator-(const BigInt& o) const;
  BigInt operator*(const BigInt& o) const;

  /// Truncated quotient and remainder: q = trunc(a/b), r = a - q*b.
  /// Throws std::domain_error on division by zero.
  static void divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r);
  BigInt operator/(const BigInt& o) const;
  BigInt operator%(const BigInt& o) const;

  BigInt shifted_left(std::size_t bits) const;
  BigInt shifted_right(std::size_t bits) const;

  /// Number of bits in the magnitude; 0 for zero.
  std::size_t bit_length() const;
  bool bit(std::size_t i) const;

  int compare(const BigInt& o) const;
  bool operator==(const BigInt& o) const { return compare(o) == 0; }
  bool operator!=(const BigInt& o) const { return compare(o) != 0; }
  bool operator<(const BigInt& o) const { return compare(o) < 0; }
  bool operator<=(const BigInt& o) const { return compare(o) <= 0; }
  bool operator>(const BigInt& o) const { return compare(o) > 0; }
  bool operator>=(const BigInt& o) const { return compare(o) >= 0; }

  static BigInt gcd(BigInt a, BigInt b);

  /// Number of low zero bits; 0 for the zero value.
  std::size_t trailing_zeros() const;
  /// True iff the magnitude is exactly 2^k for some k >= 0.
  bool is_power_of_two() const;

  /// Exact value when it fits in 64 bits unsigned (magnitude only).
  /// Precondition: bit_length() <= 64.
  std::uint64_t magnitude_u64() const;

  std::string to_string() const;  // decimal

 private:
  int sign_ = 0;                    // -1, 0, +1
  std::vector<std::uint32_t> mag_;  // little-endian, no leading zero limbs

  void trim();
  static int compare_mag(const std::vector<std::uint32_t>& a,
                         const std::vector<std::uint32_t>& b);
  static std::vector<std::uint32_t> add_mag(const std::vector<std::uint32_t>& a,
                                            const std::vector<std::uint32_t>& b);
  // a >= b required
  static std::vector<std::uint32_t> sub_mag(const std::vector<std::uint32_t>& a,
                                            const std::vector<std::uint32_t>& b);
  static std::vector<std::uint32_t> mul_mag(const std::vector<std::uint32_t>& a,
                                            const std::vector<std::uint32_t>& b);
};

/// Exact rational number. Always normalized: den > 0, gcd(num, den) = 1.
///
/// Every finite IEEE double converts exactly (from_double) and every
/// rational rounds back to the nearest double (to_double, ties to even),
/// so chains of exact sums/products of input doubles can be compared for
/// true mathematical equality before a single final rounding.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(std::int64_t v) : num_(v), den_(1) {}  // NOLINT
  Rational(std::int64_t num, std::int64_t den);
  Rational(BigInt num, BigInt den);

  /// Exact conversion; throws std::domain_error for NaN/inf.
  static Rational from_double(double v);

  const BigInt& num() const { return num_; }
  const BigInt& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  int signum() const { return num_.signum(); }

  Rational operator-() const;
  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;
  Rational operator*(const Rational& o) const;
  Rational operator/(const Rational& o) const;  // throws on zero divisor
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  int compare(const Rational& o) const;
  bool operator==(const Rational& o) const { return compare(o) == 0; }
  bool operator!=(const Rational& o) const { return compare(o) != 0; }
  bool operator<(const Rational& o) const { return compare(o) < 0; }
  bool operator<=(const Rational& o) const { return compare(o) <= 0; }
  bool operator>(const Rational& o) const { return compare(o) > 0; }
  bool operator>=(const Rational& o) const { return compare(o) >= 0; }

  /// Nearest double, round-to-nearest-even.
  double to_double() const;

  /// "p/q" (or "p" when q = 1), lowest terms.
  std::string to_string() const;

 private:
  BigInt num_;
  BigInt den_;

  void normalize();
};

}  // namespace equiaudit
