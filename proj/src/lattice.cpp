#include "dsm/lattice.hpp"

#include <numeric>

#include "dsm/errors.hpp"

namespace dsm {

namespace {

// Largest bq for which r + inc stays clear of signed overflow.
constexpr std::int64_t kMaxLatticeSpan = std::int64_t{1} << 62;

void check_state(const LatticeState& s, const ReducedParams& params) {
  if (s.r < 0 || s.r >= params.bq || s.j < 0 || s.j >= params.q) {
    throw InvalidArgument("lattice state outside Z_bq x Z_q");
  }
}

std::int64_t increment_for_level(std::int64_t j, const ReducedParams& params) {
  const auto raw = static_cast<__int128>(params.p) * (params.a + params.b * j);
  return static_cast<std::int64_t>(raw % params.bq);
}

}  // namespace

ReducedParams make_params(std::int64_t p, std::int64_t q, std::int64_t a, std::int64_t b) {
  if (q < 1) throw InvalidArgument("make_params: q must be positive");
  if (b < 1) throw InvalidArgument("make_params: b must be positive");
  if (p < 1) throw InvalidArgument("make_params: p must be positive");
  if (std::gcd(p, q) != 1) {
    throw InvalidArgument("make_params: p/q must be in lowest terms");
  }
  // Fold the integer part of y0 = a/b into the vertical coordinate, then
  // reduce the remaining fraction.
  a = ((a % b) + b) % b;
  const std::int64_t g = std::gcd(a, b);
  if (g > 1) {
    a /= g;
    b /= g;
  }
  if (a == 0) b = 1;
  if (b > kMaxLatticeSpan / q) {
    throw ResourceLimit("make_params: b*q exceeds the supported machine range");
  }
  ReducedParams params;
  params.p = p;
  params.q = q;
  params.a = a;
  params.b = b;
  params.bq = b * q;
  params.delta = static_cast<int>(params.bq % 2);
  return params;
}

CylinderPoint embed(const LatticeState& s, const ReducedParams& params) {
  check_state(s, params);
  const Rational x(mpz_class(2 + params.delta) + 4 * mpz_class(s.r),
                   4 * mpz_class(params.bq));
  const Rational y = Rational(params.a, params.b) + Rational(s.j);
  return CylinderPoint(x, y);
}

LatticeState project(const CylinderPoint& pt, const ReducedParams& params) {
  const Rational level = pt.y - Rational(params.a, params.b);
  if (!level.is_integer()) {
    throw InvalidArgument("project: y is not on the a/b + Z grid");
  }
  const Rational scaled = pt.x * Rational(params.bq);
  if (scaled.is_integer()) {
    throw InvalidArgument("project: x lies on a band boundary");
  }
  mpz_class j_mod = level.floor() % params.q;
  if (j_mod < 0) j_mod += params.q;
  return LatticeState{scaled.floor().get_si(), j_mod.get_si()};
}

LatticeStep step_lattice(const LatticeState& s, const ReducedParams& params) {
  check_state(s, params);
  std::int64_t r = s.r + increment_for_level(s.j, params);
  if (r >= params.bq) r -= params.bq;
  // 2r' - bq + 1 + delta is odd by the lattice choice, so never zero.
  const std::int64_t threshold = (params.bq - params.delta) / 2;
  if (r >= threshold) {
    std::int64_t j = s.j + 1;
    if (j == params.q) j = 0;
    return {{r, j}, +1};
  }
  std::int64_t j = s.j - 1;
  if (j < 0) j = params.q - 1;
  return {{r, j}, -1};
}

LiftedState step_lifted(const LiftedState& s, const ReducedParams& params) {
  const LatticeStep next = step_lattice(s.state, params);
  return {next.state, s.lift + next.dj};
}

StepTable::StepTable(const ReducedParams& params)
    : bq_(params.bq), q_(params.q), threshold_((params.bq - params.delta) / 2) {
  if (params.q > (std::int64_t{1} << 31)) {
    throw ResourceLimit("StepTable: q too large for table-driven stepping");
  }
  inc_.resize(static_cast<std::size_t>(params.q));
  for (std::int64_t j = 0; j < params.q; ++j) {
    inc_[static_cast<std::size_t>(j)] = increment_for_level(j, params);
  }
}

}  // namespace dsm
