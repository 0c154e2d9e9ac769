#pragma once

#include <cstdint>
#include <vector>

#include "dsm/orbit.hpp"

namespace dsm {

/// Escape lengths for every odd q in a range, with ratio statistics.
struct SweepResult {
  std::vector<EscapeRecord> records;  // strictly increasing in q
  double mean_ratio = 0.0;
  double min_ratio = 0.0;
  double max_ratio = 0.0;
};

/// Runs escape_length for every odd q in [q_from, q_to]. Record order and
/// aggregate values do not depend on the thread count. Any per-q failure
/// aborts the sweep.
SweepResult sweep_escape_lengths(std::int64_t q_from, std::int64_t q_to, int threads = 1);

/// Recomputes mean/min/max from the records, in record order. Shared by
/// the sweep itself and the CSV reader so round-trips are bit-exact.
void compute_ratio_stats(SweepResult& result);

/// Partition of bq*q by orbit periods, parts scaled by 1/q and sorted in
/// descending order. With bounded_only set, escaping orbits are dropped.
struct YoungDiagram {
  std::int64_t q = 0;
  std::vector<Rational> parts;
  bool bounded_only = false;
};

YoungDiagram young_diagram(const ReducedParams& params, bool bounded_only,
                           std::int64_t budget_states = kDefaultStateBudget);

/// L-infinity distance between the diagrams' scaled step functions (part
/// index scaled by 1/q horizontally, scaled parts vertically), evaluated
/// on the union of breakpoints. Zero iff the step functions coincide.
double diagram_distance(const YoungDiagram& d1, const YoungDiagram& d2);

enum class PortraitMode { PeriodShade, EscapeMask };

/// 16-bit grayscale phase portrait, bq wide and q tall; pixel (col=r,
/// row=q-1-j) so larger j renders higher. PeriodShade maps shorter
/// periods to lighter values via dense period ranks; EscapeMask lights
/// exactly the cells of escaping orbits.
struct PortraitRaster {
  std::int64_t width = 0;
  std::int64_t height = 0;
  PortraitMode mode = PortraitMode::PeriodShade;
  std::vector<std::uint16_t> pixels;  // row-major
};

PortraitRaster render_portrait(const ReducedParams& params, PortraitMode mode,
                               std::int64_t budget_states = kDefaultStateBudget);

/// One sampled orbit of an island scan.
struct IslandSample {
  LatticeState start;
  std::int64_t period = 0;
};

/// Samples lattice points on the levels nearest q/(2n+1) (the island
/// belts of the escaping-orbit portrait) and reports their periods.
/// Exploratory: emits data, asserts nothing.
std::vector<IslandSample> island_scan(std::int64_t q, std::int64_t n, std::int64_t sample);

}  // namespace dsm
