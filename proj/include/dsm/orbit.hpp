#pragma once

#include <cstdint>
#include <vector>

#include "dsm/lattice.hpp"
#include "dsm/rational.hpp"

namespace dsm {

enum class OrbitClass { Bounded, Escaping };

/// One periodic orbit of the reduced map. The representative is the
/// lexicographically smallest (j, r) on the cycle. The winding number is
/// the total lift change over one period divided by q; it is nonzero
/// exactly for escaping orbits.
struct Orbit {
  LatticeState representative;
  std::int64_t period = 0;
  std::int64_t winding = 0;
  OrbitClass cls = OrbitClass::Bounded;
};

/// Full partition of Z_bq x Z_q into orbits, sorted by representative
/// in (j, r) order. Periods always sum to total_points = bq*q.
struct Decomposition {
  ReducedParams params;
  std::vector<Orbit> orbits;
  std::int64_t total_points = 0;
};

/// One row of an escape-length sweep: the ratio is the exact rational
/// ell/q^2.
struct EscapeRecord {
  std::int64_t q = 0;
  std::int64_t ell = 0;
  Rational ratio;
};

inline constexpr std::int64_t kDefaultStateBudget = 200'000'000;

/// Follows the orbit of `start` to its first return and classifies it.
/// Deterministic; allocation-free inner loop.
Orbit trace_orbit(const LatticeState& start, const ReducedParams& params);

/// Visits every state exactly once (level-major scan with a visited
/// bitmap) and emits one Orbit per cycle. Throws ResourceLimit when
/// bq*q exceeds budget_states. When state_orbit_ids is given it is
/// resized to bq*q and filled with the orbit index of every state,
/// indexed by j*bq + r.
Decomposition decompose(const ReducedParams& params,
                        std::int64_t budget_states = kDefaultStateBudget,
                        std::vector<std::uint32_t>* state_orbit_ids = nullptr);

/// Escape length l(q) for twist 1/q, start level 0, odd q: the period of
/// the unique escaping orbit, traced from the bottleneck crossing point
/// (r, j) = ((q-1)/2, (q-1)/2) without a full decomposition. Throws
/// InvariantViolation if the traced orbit is bounded or of even length,
/// which would falsify the boundedness theorem.
EscapeRecord escape_length(std::int64_t q);

/// Multiset of orbit periods in descending order; with bounded_only set,
/// escaping orbits are excluded.
std::vector<std::int64_t> period_partition(const Decomposition& d, bool bounded_only);

}  // namespace dsm
