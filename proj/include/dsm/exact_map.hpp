#pragma once

#include <cstdint>
#include <vector>

#include "dsm/rational.hpp"

namespace dsm {

/// A point of the cylinder [0,1) x Q. The horizontal coordinate is kept
/// normalized into [0,1); the vertical coordinate is unrestricted.
struct CylinderPoint {
  Rational x;
  Rational y;

  CylinderPoint() = default;
  CylinderPoint(Rational x_in, Rational y_in) : x(x_in.frac()), y(std::move(y_in)) {}

  friend bool operator==(const CylinderPoint& a, const CylinderPoint& b) {
    return a.x == b.x && a.y == b.y;
  }
  friend std::strong_ordering operator<=>(const CylinderPoint& a, const CylinderPoint& b);
};

/// Sign of x - 1/2 with the singular-line convention: returns 0 exactly
/// when x = 1/2 or x = 0, so points on the discontinuity lines keep their
/// height. Requires 0 <= x < 1.
int sign_against_half(const Rational& x);

/// One step of the cylinder map: x' = frac(x + alpha*y), y' = y + sgn(x'-1/2).
/// Exact; no rounding anywhere.
CylinderPoint step_exact(const CylinderPoint& pt, const Rational& alpha);

inline constexpr std::size_t kDefaultDigitBound = 1'000'000;

/// The first n+1 points of the trajectory, starting with pt itself.
/// Throws ResourceLimit if operand digit counts ever exceed digit_bound
/// (cannot happen for rational alpha and y0, whose denominators are
/// step-invariant, but guarded regardless).
std::vector<CylinderPoint> iterate_exact(const CylinderPoint& pt, const Rational& alpha,
                                         std::int64_t n,
                                         std::size_t digit_bound = kDefaultDigitBound);

}  // namespace dsm
