#include "dsm/orbit.hpp"

#include <algorithm>

#include "dsm/errors.hpp"

namespace dsm {

namespace {

std::int64_t winding_of(std::int64_t lift, std::int64_t q) {
  if (lift % q != 0) {
    throw InvariantViolation("orbit lift not proportional to q");
  }
  return lift / q;
}

}  // namespace

Orbit trace_orbit(const LatticeState& start, const ReducedParams& params) {
  if (start.r < 0 || start.r >= params.bq || start.j < 0 || start.j >= params.q) {
    throw InvalidArgument("trace_orbit: start outside Z_bq x Z_q");
  }
  const StepTable table(params);
  const unsigned __int128 watchdog =
      static_cast<unsigned __int128>(params.bq) * static_cast<unsigned __int128>(params.q);

  std::int64_t r = start.r;
  std::int64_t j = start.j;
  std::int64_t lift = 0;
  LatticeState rep = start;
  unsigned __int128 steps = 0;
  do {
    lift += table.step(r, j);
    if (++steps > watchdog) {
      throw ResourceLimit("trace_orbit: no return within bq*q steps");
    }
    if (j < rep.j || (j == rep.j && r < rep.r)) rep = {r, j};
  } while (r != start.r || j != start.j);

  Orbit orbit;
  orbit.representative = rep;
  orbit.period = static_cast<std::int64_t>(steps);
  orbit.winding = winding_of(lift, params.q);
  orbit.cls = orbit.winding != 0 ? OrbitClass::Escaping : OrbitClass::Bounded;
  return orbit;
}

Decomposition decompose(const ReducedParams& params, std::int64_t budget_states,
                        std::vector<std::uint32_t>* state_orbit_ids) {
  const auto total = static_cast<__int128>(params.bq) * params.q;
  if (total > budget_states) {
    throw ResourceLimit("decompose: bq*q exceeds the state budget");
  }
  const auto n = static_cast<std::size_t>(total);
  const StepTable table(params);

  std::vector<std::uint64_t> visited((n + 63) / 64, 0);
  const auto mark = [&](std::size_t idx) { visited[idx >> 6] |= std::uint64_t{1} << (idx & 63); };
  const auto seen = [&](std::size_t idx) {
    return (visited[idx >> 6] >> (idx & 63)) & 1;
  };
  if (state_orbit_ids != nullptr) state_orbit_ids->assign(n, 0);

  Decomposition d;
  d.params = params;
  d.total_points = static_cast<std::int64_t>(total);

  std::int64_t covered = 0;
  for (std::size_t idx = 0; idx < n; ++idx) {
    if (seen(idx)) continue;
    // Level-major scan order means idx is the lexicographic minimum of
    // (j, r) over its cycle: it is the canonical representative.
    const std::int64_t j0 = static_cast<std::int64_t>(idx) / params.bq;
    const std::int64_t r0 = static_cast<std::int64_t>(idx) % params.bq;
    const auto orbit_id = static_cast<std::uint32_t>(d.orbits.size());

    std::int64_t r = r0;
    std::int64_t j = j0;
    std::int64_t lift = 0;
    std::int64_t period = 0;
    do {
      const auto here = static_cast<std::size_t>(j * params.bq + r);
      mark(here);
      if (state_orbit_ids != nullptr) (*state_orbit_ids)[here] = orbit_id;
      lift += table.step(r, j);
      ++period;
    } while (r != r0 || j != j0);

    Orbit orbit;
    orbit.representative = {r0, j0};
    orbit.period = period;
    orbit.winding = winding_of(lift, params.q);
    orbit.cls = orbit.winding != 0 ? OrbitClass::Escaping : OrbitClass::Bounded;
    d.orbits.push_back(orbit);
    covered += period;
  }

  if (covered != d.total_points) {
    throw InvariantViolation("decompose: orbit periods do not partition the torus");
  }
  return d;
}

EscapeRecord escape_length(std::int64_t q) {
  if (q < 3 || q % 2 == 0) {
    throw InvalidArgument("escape_length: q must be odd and at least 3");
  }
  const ReducedParams params = make_params(1, q, 0, 1);
  const StepTable table(params);
  // The unique upward crossing of the bottleneck level sits at
  // r = (bq-1)/2 on level j* = (q-1)/2; the escaping orbit passes
  // through it, so tracing from there avoids O(q^2) memory.
  const std::int64_t r0 = (q - 1) / 2;
  const std::int64_t j0 = (q - 1) / 2;

  std::int64_t r = r0;
  std::int64_t j = j0;
  std::int64_t lift = 0;
  std::int64_t period = 0;
  const std::int64_t watchdog = q * q + 1;
  do {
    lift += table.step(r, j);
    if (++period > watchdog) {
      throw ResourceLimit("escape_length: no return within q^2 steps");
    }
  } while (r != r0 || j != j0);

  if (lift == 0 || period % 2 == 0) {
    throw InvariantViolation("escape_length: traced orbit is not the odd escaping one");
  }
  return EscapeRecord{q, period, Rational(period, q * q)};
}

std::vector<std::int64_t> period_partition(const Decomposition& d, bool bounded_only) {
  std::vector<std::int64_t> parts;
  parts.reserve(d.orbits.size());
  for (const Orbit& orbit : d.orbits) {
    if (bounded_only && orbit.cls == OrbitClass::Escaping) continue;
    parts.push_back(orbit.period);
  }
  std::sort(parts.begin(), parts.end(), std::greater<>());
  return parts;
}

}  // namespace dsm
