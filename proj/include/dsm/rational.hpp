#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>

namespace dsm {

/// Exact rational number. Always stored reduced with a positive
/// denominator; construction from unreduced input normalizes. All
/// arithmetic is exact, with arbitrary-precision integers underneath.
class Rational {
 public:
  Rational() : v_(0) {}
  Rational(long value) : v_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(int value) : v_(value) {}   // NOLINT(google-explicit-constructor)
  Rational(long num, long den);
  Rational(const mpz_class& num, const mpz_class& den);
  explicit Rational(mpq_class value);

  const mpz_class& num() const { return v_.get_num(); }
  const mpz_class& den() const { return v_.get_den(); }

  /// -1, 0 or +1.
  int sign() const { return sgn(v_); }
  bool is_integer() const { return v_.get_den() == 1; }

  /// Largest integer not exceeding the value.
  mpz_class floor() const;
  /// Fractional part, in [0, 1): *this - floor().
  Rational frac() const;

  /// Decimal digit count of the larger of |num| and den. Used by the
  /// iteration guard against runaway operand growth.
  std::size_t digits() const;

  /// Nearest double (exact division when both parts fit in 53 bits).
  double to_double() const;

  /// "num/den", or just "num" for integers.
  std::string str() const { return v_.get_str(); }

  Rational operator-() const { return Rational(mpq_class(-v_)); }
  friend Rational operator+(const Rational& a, const Rational& b) {
    return Rational(mpq_class(a.v_ + b.v_));
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return Rational(mpq_class(a.v_ - b.v_));
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return Rational(mpq_class(a.v_ * b.v_));
  }
  friend Rational operator/(const Rational& a, const Rational& b);

  friend bool operator==(const Rational& a, const Rational& b) {
    return mpq_equal(a.v_.get_mpq_t(), b.v_.get_mpq_t()) != 0;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.v_, b.v_);
    return c <=> 0;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r);

 private:
  mpq_class v_;  // canonical: reduced, den > 0
};

}  // namespace dsm
