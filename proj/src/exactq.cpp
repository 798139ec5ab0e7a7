#include "equiaudit/exactq.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace equiaudit {

namespace {
constexpr std::uint64_t kBase = 1ull << 32;
}

BigInt::BigInt(std::int64_t v) {
  if (v == 0) return;
  sign_ = v < 0 ? -1 : 1;
  // avoid overflow on INT64_MIN
  std::uint64_t m = v < 0 ? ~static_cast<std::uint64_t>(v) + 1 : static_cast<std::uint64_t>(v);
  mag_.push_back(static_cast<std::uint32_t>(m & 0xffffffffu));
  if (m >> 32) mag_.push_back(static_cast<std::uint32_t>(m >> 32));
}

BigInt BigInt::from_uint64(std::uint64_t v) {
  BigInt r;
  if (v == 0) return r;
  r.sign_ = 1;
  r.mag_.push_back(static_cast<std::uint32_t>(v & 0xffffffffu));
  if (v >> 32) r.mag_.push_back(static_cast<std::uint32_t>(v >> 32));
  return r;
}

void BigInt::trim() {
  while (!mag_.empty() && mag_.back() == 0) mag_.pop_back();
  if (mag_.empty()) sign_ = 0;
}

int BigInt::compare_mag(const std::vector<std::uint32_t>& a,
                        const std::vector<std::uint32_t>& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  }
  return 0;
}

std::vector<std::uint32_t> BigInt::add_mag(const std::vector<std::uint32_t>& a,
                                           const std::vector<std::uint32_t>& b) {
  const auto& big = a.size() >= b.size() ? a : b;
  const auto& small = a.size() >= b.size() ? b : a;
  std::vector<std::uint32_t> out(big.size() + 1, 0);
  std::uint64_t carry = 0;
  for (std::size_t i = 0; i < big.size(); ++i) {
    std::uint64_t s = carry + big[i] + (i < small.size() ? small[i] : 0u);
    out[i] = static_cast<std::uint32_t>(s & 0xffffffffu);
    carry = s >> 32;
  }
  out[big.size()] = static_cast<std::uint32_t>(carry);
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

std::vector<std::uint32_t> BigInt::sub_mag(const std::vector<std::uint32_t>& a,
                                           const std::vector<std::uint32_t>& b) {
  std::vector<std::uint32_t> out(a.size(), 0);
  std::int64_t borrow = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::int64_t d = static_cast<std::int64_t>(a[i]) - borrow -
                     (i < b.size() ? static_cast<std::int64_t>(b[i]) : 0);
    if (d < 0) {
      d += static_cast<std::int64_t>(kBase);
      borrow = 1;
    } else {
      borrow = 0;
    }
    out[i] = static_cast<std::uint32_t>(d);
  }
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

std::vector<std::uint32_t> BigInt::mul_mag(const std::vector<std::uint32_t>& a,
                                           const std::vector<std::uint32_t>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<std::uint32_t> out(a.size() + b.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::uint64_t carry = 0;
    for (std::size_t j = 0; j < b.size(); ++j) {
      std::uint64_t cur = out[i + j] +
                          static_cast<std::uint64_t>(a[i]) * b[j] + carry;
      out[i + j] = static_cast<std::uint32_t>(cur & 0xffffffffu);
      carry = cur >> 32;
    }
    std::size_t k = i + b.size();
    while (carry) {
      std::uint64_t cur = out[k] + carry;
      out[k] = static_cast<std::uint32_t>(cur & 0xffffffffu);
      carry = cur >> 32;
      ++k;
    }
  }
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

BigInt BigInt::operator-() const {
  BigInt r = *this;
  r.sign_ = -r.sign_;
  return r;
}

BigInt BigInt::abs() const {
  BigInt r = *this;
  if (r.sign_ < 0) r.sign_ = 1;
  return r;
}

BigInt BigInt::operator+(const BigInt& o) const {
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  BigInt r;
  if (sign_ == o.sign_) {
    r.sign_ = sign_;
    r.mag_ = add_mag(mag_, o.mag_);
  } else {
    int c = compare_mag(mag_, o.mag_);
    if (c == 0) return BigInt();
    if (c > 0) {
      r.sign_ = sign_;
      r.mag_ = sub_mag(mag_, o.mag_);
    } else {
      r.sign_ = o.sign_;
      r.mag_ = sub_mag(o.mag_, mag_);
    }
  }
  r.trim();
  return r;
}

BigInt BigInt::operator-(const BigInt& o) const { return *this + (-o); }

BigInt BigInt::operator*(const BigInt& o) const {
  BigInt r;
  if (is_zero() || o.is_zero()) return r;
  r.sign_ = sign_ * o.sign_;
  r.mag_ = mul_mag(mag_, o.mag_);
  r.trim();
  return r;
}

std::size_t BigInt::bit_length() const {
  if (mag_.empty()) return 0;
  std::uint32_t top = mag_.back();
  std::size_t bits = (mag_.size() - 1) * 32;
  while (top) {
    ++bits;
    top >>= 1;
  }
  return bits;
}

bool BigInt::bit(std::size_t i) const {
  std::size_t limb = i / 32;
  if (limb >= mag_.size()) return false;
  return (mag_[limb] >> (i % 32)) & 1u;
}

BigInt BigInt::shifted_left(std::size_t bits) const {
  if (is_zero() || bits == 0) return *this;
  std::size_t limbs = bits / 32, rem = bits % 32;
  BigInt r;
  r.sign_ = sign_;
  r.mag_.assign(limbs, 0);
  if (rem == 0) {
    r.mag_.insert(r.mag_.end(), mag_.begin(), mag_.end());
  } else {
    std::uint32_t carry = 0;
    for (std::uint32_t limb : mag_) {
      r.mag_.push_back((limb << rem) | carry);
      carry = static_cast<std::uint32_t>(static_cast<std::uint64_t>(limb) >> (32 - rem));
    }
    if (carry) r.mag_.push_back(carry);
  }
  r.trim();
  return r;
}

BigInt BigInt::shifted_right(std::size_t bits) const {
  if (is_zero()) return *this;
  if (bits >= bit_length()) return BigInt();
  std::size_t limbs = bits / 32, rem = bits % 32;
  BigInt r;
  r.sign_ = sign_;
  r.mag_.assign(mag_.begin() + static_cast<std::ptrdiff_t>(limbs), mag_.end());
  if (rem != 0) {
    for (std::size_t i = 0; i < r.mag_.size(); ++i) {
      std::uint32_t hi = (i + 1 < r.mag_.size()) ? r.mag_[i + 1] : 0u;
      r.mag_[i] = (r.mag_[i] >> rem) |
                  static_cast<std::uint32_t>(static_cast<std::uint64_t>(hi) << (32 - rem));
    }
  }
  r.trim();
  return r;
}

void BigInt::divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r) {
  if (b.is_zero()) throw std::domain_error("BigInt: division by zero");
  int cmp = compare_mag(a.mag_, b.mag_);
  if (cmp < 0) {
    q = BigInt();
    r = a;
    return;
  }
  if (b.is_power_of_two()) {
    // truncated division by 2^k is a magnitude shift plus a low-bit mask
    const std::size_t k = b.bit_length() - 1;
    q = a.shifted_right(k);
    q.sign_ = q.is_zero() ? 0 : a.sign_ * b.sign_;
    r = a - (q * b);
    return;
  }
  // shift-subtract long division on magnitudes
  std::size_t shift = a.bit_length() - b.bit_length();
  BigInt rem = a.abs();
  BigInt div = b.abs().shifted_left(shift);
  BigInt quot;
  quot.mag_.assign(shift / 32 + 1, 0);
  quot.sign_ = 1;
  for (std::size_t i = shift + 1; i-- > 0;) {
    if (compare_mag(rem.mag_, div.mag_) >= 0) {
      rem.mag_ = sub_mag(rem.mag_, div.mag_);
      rem.trim();
      quot.mag_[i / 32] |= (1u << (i % 32));
    }
    div = div.shifted_right(1);
  }
  quot.trim();
  quot.sign_ = quot.is_zero() ? 0 : a.sign_ * b.sign_;
  rem.sign_ = rem.is_zero() ? 0 : a.sign_;
  q = std::move(quot);
  r = std::move(rem);
}

BigInt BigInt::operator/(const BigInt& o) const {
  BigInt q, r;
  divmod(*this, o, q, r);
  return q;
}

BigInt BigInt::operator%(const BigInt& o) const {
  BigInt q, r;
  divmod(*this, o, q, r);
  return r;
}

int BigInt::compare(const BigInt& o) const {
  if (sign_ != o.sign_) return sign_ < o.sign_ ? -1 : 1;
  int c = compare_mag(mag_, o.mag_);
  return sign_ >= 0 ? c : -c;
}

std::size_t BigInt::trailing_zeros() const {
  if (mag_.empty()) return 0;
  std::size_t tz = 0;
  for (std::uint32_t limb : mag_) {
    if (limb == 0) {
      tz += 32;
      continue;
    }
    while ((limb & 1u) == 0) {
      ++tz;
      limb >>= 1;
    }
    break;
  }
  return tz;
}

bool BigInt::is_power_of_two() const {
  return !mag_.empty() && trailing_zeros() + 1 == bit_length();
}

BigInt BigInt::gcd(BigInt a, BigInt b) {
  a = a.abs();
  b = b.abs();
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  // gcd with a power of two is a pure trailing-zero question; this is the
  // dominant case here (densities are dyadic or sums of dyadics)
  if (a.is_power_of_two())
    return BigInt(1).shifted_left(std::min(a.trailing_zeros(), b.trailing_zeros()));
  if (b.is_power_of_two())
    return BigInt(1).shifted_left(std::min(a.trailing_zeros(), b.trailing_zeros()));
  const std::size_t shift = std::min(a.trailing_zeros(), b.trailing_zeros());
  a = a.shifted_right(a.trailing_zeros());
  b = b.shifted_right(b.trailing_zeros());
  while (!b.is_zero()) {
    b = b.shifted_right(b.trailing_zeros());
    if (a.compare(b) > 0) std::swap(a, b);
    b = b - a;
  }
  return a.shifted_left(shift);
}

std::uint64_t BigInt::magnitude_u64() const {
  std::uint64_t v = 0;
  if (!mag_.empty()) v = mag_[0];
  if (mag_.size() > 1) v |= static_cast<std::uint64_t>(mag_[1]) << 32;
  return v;
}

std::string BigInt::to_string() const {
  if (is_zero()) return "0";
  std::string digits;
  BigInt cur = abs();
  const BigInt ten(10);
  while (!cur.is_zero()) {
    BigInt q, r;
    divmod(cur, ten, q, r);
    digits.push_back(static_cast<char>('0' + r.magnitude_u64()));
    cur = std::move(q);
  }
  if (sign_ < 0) digits.push_back('-');
  return {digits.rbegin(), digits.rend()};
}

// ---------------------------------------------------------------------------

Rational::Rational(std::int64_t num, std::int64_t den) : num_(num), den_(den) {
  normalize();
}

Rational::Rational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
  normalize();
}

void Rational::normalize() {
  if (den_.is_zero()) throw std::domain_error("Rational: zero denominator");
  if (den_.is_negative()) {
    den_ = -den_;
    num_ = -num_;
  }
  if (num_.is_zero()) {
    den_ = BigInt(1);
    return;
  }
  BigInt g = BigInt::gcd(num_, den_);
  if (g != BigInt(1)) {
    num_ = num_ / g;
    den_ = den_ / g;
  }
}

Rational Rational::from_double(double v) {
  if (!std::isfinite(v)) throw std::domain_error("Rational: non-finite double");
  if (v == 0.0) return Rational();
  int exp = 0;
  double m = std::frexp(v, &exp);  // v = m * 2^exp, |m| in [0.5, 1)
  // scale mantissa to an exact 53-bit integer
  std::int64_t mant = static_cast<std::int64_t>(std::ldexp(m, 53));
  exp -= 53;
  BigInt num(mant);
  BigInt den(1);
  if (exp >= 0) {
    num = num.shifted_left(static_cast<std::size_t>(exp));
  } else {
    den = den.shifted_left(static_cast<std::size_t>(-exp));
  }
  return Rational(std::move(num), std::move(den));
}

Rational Rational::operator-() const {
  Rational r = *this;
  r.num_ = -r.num_;
  return r;
}

Rational Rational::operator+(const Rational& o) const {
  if (den_ == o.den_) return Rational(num_ + o.num_, den_);
  return Rational(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

Rational Rational::operator-(const Rational& o) const {
  if (den_ == o.den_) return Rational(num_ - o.num_, den_);
  return Rational(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

Rational Rational::operator*(const Rational& o) const {
  return Rational(num_ * o.num_, den_ * o.den_);
}

Rational Rational::operator/(const Rational& o) const {
  if (o.num_.is_zero()) throw std::domain_error("Rational: division by zero");
  return Rational(num_ * o.den_, den_ * o.num_);
}

int Rational::compare(const Rational& o) const {
  return (num_ * o.den_).compare(o.num_ * den_);
}

double Rational::to_double() const {
  if (num_.is_zero()) return 0.0;
  const bool neg = num_.is_negative();
  BigInt p = num_.abs();
  const BigInt& q = den_;

  // Compute an integer quotient with ~56 significant bits plus a sticky
  // remainder, then round to nearest-even.
  const std::ptrdiff_t lp = static_cast<std::ptrdiff_t>(p.bit_length());
  const std::ptrdiff_t lq = static_cast<std::ptrdiff_t>(q.bit_length());
  const std::ptrdiff_t target = 56;
  std::ptrdiff_t scale = target - (lp - lq);  // shift applied to numerator
  BigInt pn = scale >= 0 ? p.shifted_left(static_cast<std::size_t>(scale)) : p;
  BigInt qn = scale >= 0 ? q : q.shifted_left(static_cast<std::size_t>(-scale));
  BigInt quot, rem;
  BigInt::divmod(pn, qn, quot, rem);
  // quot has between 55 and 57 bits
  std::size_t bl = quot.bit_length();
  std::size_t drop = bl > 53 ? bl - 53 : 0;
  std::uint64_t top;
  bool round_bit = false, sticky = !rem.is_zero();
  if (drop == 0) {
    top = quot.magnitude_u64();
  } else {
    top = quot.shifted_right(drop).magnitude_u64();
    round_bit = quot.bit(drop - 1);
    for (std::size_t i = 0; i + 1 < drop && !sticky; ++i) sticky = quot.bit(i);
  }
  if (round_bit && (sticky || (top & 1u))) ++top;
  double result = std::ldexp(static_cast<double>(top),
                             static_cast<int>(drop) - static_cast<int>(scale));
  return neg ? -result : result;
}

std::string Rational::to_string() const {
  if (den_ == BigInt(1)) return num_.to_string();
  return num_.to_string() + "/" + den_.to_string();
}

}  // namespace equiaudit
