#pragma once

#include <cstdint>
#include <vector>

#include "dsm/exact_map.hpp"
#include "dsm/rational.hpp"

namespace dsm {

/// Validated parameter pair: twist alpha = p/q and start level y0 = a/b,
/// both in lowest terms, together with the derived lattice constants.
/// delta = bq mod 2 selects the even or the odd midpoint lattice.
struct ReducedParams {
  std::int64_t p = 1;
  std::int64_t q = 1;
  std::int64_t a = 0;
  std::int64_t b = 1;
  std::int64_t bq = 1;
  int delta = 1;

  friend bool operator==(const ReducedParams&, const ReducedParams&) = default;
};

/// Validates and normalizes (p/q, a/b). p/q must already be in lowest
/// terms; a/b is reduced and a is folded into [0, b) (integer parts of y0
/// are absorbed by the vertical lattice coordinate). Throws
/// InvalidArgument for q < 1, b < 1, p < 1 or gcd(p, q) != 1.
ReducedParams make_params(std::int64_t p, std::int64_t q, std::int64_t a, std::int64_t b);

/// A point (r, j) of the finite torus Z_bq x Z_q.
struct LatticeState {
  std::int64_t r = 0;
  std::int64_t j = 0;

  friend bool operator==(const LatticeState&, const LatticeState&) = default;
};

/// Orders states by (j, r); used for canonical orbit representatives.
inline bool level_major_less(const LatticeState& a, const LatticeState& b) {
  return a.j != b.j ? a.j < b.j : a.r < b.r;
}

/// Lattice state plus its unreduced cumulative vertical displacement.
/// The lift changes by exactly +-1 per step and satisfies
/// lift == (j - j0) mod q along any trajectory.
struct LiftedState {
  LatticeState state;
  std::int64_t lift = 0;
};

struct LatticeStep {
  LatticeState state;
  int dj = 0;  // always -1 or +1; the lattice never meets a singular line
};

/// Midpoint embedding of a lattice state into the cylinder:
/// x = (2 + delta + 4r) / (4bq), y = a/b + j, as exact rationals.
CylinderPoint embed(const LatticeState& s, const ReducedParams& params);

/// Band projection: r = floor(bq*x), j = (y - a/b) mod q. The vertical
/// coordinate must lie on the a/b + Z grid and x must not sit on a band
/// boundary k/bq; otherwise InvalidArgument.
LatticeState project(const CylinderPoint& pt, const ReducedParams& params);

/// One step of the reduced map:
///   r' = r + p(a + bj)            (mod bq)
///   j' = j + sgn(2r' - bq + 1 + delta)  (mod q)
LatticeStep step_lattice(const LatticeState& s, const ReducedParams& params);

/// step_lattice plus lift bookkeeping.
LiftedState step_lifted(const LiftedState& s, const ReducedParams& params);

/// Precomputed per-level increments for the tight iteration loops. The
/// update reduces to one table lookup, one conditional subtraction and a
/// threshold comparison; no allocation, no multiplication.
class StepTable {
 public:
  explicit StepTable(const ReducedParams& params);

  /// Advances (r, j) in place; returns the height increment (-1 or +1).
  int step(std::int64_t& r, std::int64_t& j) const {
    r += inc_[static_cast<std::size_t>(j)];
    if (r >= bq_) r -= bq_;
    if (r >= threshold_) {
      if (++j == q_) j = 0;
      return +1;
    }
    if (--j < 0) j = q_ - 1;
    return -1;
  }

  std::int64_t bq() const { return bq_; }
  std::int64_t q() const { return q_; }

 private:
  std::int64_t bq_;
  std::int64_t q_;
  std::int64_t threshold_;  // r' >= threshold  <=>  2r' - bq + 1 + delta > 0
  std::vector<std::int64_t> inc_;  // inc[j] = p(a + bj) mod bq
};

}  // namespace dsm
