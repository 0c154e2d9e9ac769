#include "dsm/exact_map.hpp"

#include "dsm/errors.hpp"

namespace dsm {

std::strong_ordering operator<=>(const CylinderPoint& a, const CylinderPoint& b) {
  if (auto c = a.x <=> b.x; c != 0) return c;
  return a.y <=> b.y;
}

int sign_against_half(const Rational& x) {
  if (x.sign() < 0 || x >= Rational(1)) {
    throw InvalidArgument("sign_against_half: x must lie in [0,1)");
  }
  if (x.sign() == 0) return 0;
  return (x - Rational(1, 2)).sign();
}

CylinderPoint step_exact(const CylinderPoint& pt, const Rational& alpha) {
  const Rational x_next = (pt.x + alpha * pt.y).frac();
  return CylinderPoint(x_next, pt.y + Rational(sign_against_half(x_next)));
}

std::vector<CylinderPoint> iterate_exact(const CylinderPoint& pt, const Rational& alpha,
                                         std::int64_t n, std::size_t digit_bound) {
  if (n < 0) throw InvalidArgument("iterate_exact: negative step count");
  std::vector<CylinderPoint> seq;
  seq.reserve(static_cast<std::size_t>(n) + 1);
  seq.push_back(pt);
  for (std::int64_t i = 0; i < n; ++i) {
    CylinderPoint next = step_exact(seq.back(), alpha);
    if (next.x.digits() > digit_bound || next.y.digits() > digit_bound) {
      throw ResourceLimit("iterate_exact: operand exceeded digit bound");
    }
    seq.push_back(std::move(next));
  }
  return seq;
}

}  // namespace dsm
