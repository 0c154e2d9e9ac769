#include "dsm/rational.hpp"

#include <algorithm>
#include <ostream>

#include "dsm/errors.hpp"

namespace dsm {

Rational::Rational(long num, long den) : Rational(mpz_class(num), mpz_class(den)) {}

Rational::Rational(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw InvalidArgument("rational with zero denominator");
  v_.get_num() = num;
  v_.get_den() = den;
  v_.canonicalize();  // reduces and makes the denominator positive
}

Rational::Rational(mpq_class value) : v_(std::move(value)) {
  v_.canonicalize();
}

mpz_class Rational::floor() const {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), v_.get_num().get_mpz_t(), v_.get_den().get_mpz_t());
  return q;
}

Rational Rational::frac() const {
  mpz_class rem;
  mpz_fdiv_r(rem.get_mpz_t(), v_.get_num().get_mpz_t(), v_.get_den().get_mpz_t());
  return Rational(rem, v_.get_den());
}

std::size_t Rational::digits() const {
  return std::max(mpz_sizeinbase(v_.get_num().get_mpz_t(), 10),
                  mpz_sizeinbase(v_.get_den().get_mpz_t(), 10));
}

double Rational::to_double() const {
  // Division of two exactly representable integers is correctly rounded;
  // fall back to GMP's conversion for operands beyond 53 bits.
  if (mpz_sizeinbase(v_.get_num().get_mpz_t(), 2) <= 53 &&
      mpz_sizeinbase(v_.get_den().get_mpz_t(), 2) <= 53) {
    return v_.get_num().get_d() / v_.get_den().get_d();
  }
  return v_.get_d();
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.v_ == 0) throw InvalidArgument("rational division by zero");
  return Rational(mpq_class(a.v_ / b.v_));
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
  return os << r.v_;
}

}  // namespace dsm
