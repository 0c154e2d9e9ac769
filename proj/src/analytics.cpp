#include "dsm/analytics.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "dsm/errors.hpp"
#include "parallel.hpp"

namespace dsm {

SweepResult sweep_escape_lengths(std::int64_t q_from, std::int64_t q_to, int threads) {
  if (q_from < 3 || q_from > q_to) {
    throw InvalidArgument("sweep_escape_lengths: need 3 <= q_from <= q_to");
  }
  std::vector<std::int64_t> qs;
  for (std::int64_t q = q_from % 2 == 0 ? q_from + 1 : q_from; q <= q_to; q += 2) {
    qs.push_back(q);
  }

  SweepResult result;
  result.records.resize(qs.size());
  detail::parallel_for(qs.size(), threads,
                       [&](std::size_t i) { result.records[i] = escape_length(qs[i]); });
  compute_ratio_stats(result);
  return result;
}

void compute_ratio_stats(SweepResult& result) {
  result.mean_ratio = result.min_ratio = result.max_ratio = 0.0;
  bool first = true;
  double sum = 0.0;
  for (const EscapeRecord& rec : result.records) {
    const double ratio = rec.ratio.to_double();
    sum += ratio;
    if (first || ratio < result.min_ratio) result.min_ratio = ratio;
    if (first || ratio > result.max_ratio) result.max_ratio = ratio;
    first = false;
  }
  if (!result.records.empty()) {
    result.mean_ratio = sum / static_cast<double>(result.records.size());
  }
}

YoungDiagram young_diagram(const ReducedParams& params, bool bounded_only,
                           std::int64_t budget_states) {
  const Decomposition d = decompose(params, budget_states);
  YoungDiagram diagram;
  diagram.q = params.q;
  diagram.bounded_only = bounded_only;
  for (const std::int64_t period : period_partition(d, bounded_only)) {
    diagram.parts.emplace_back(period, params.q);
  }
  return diagram;
}

double diagram_distance(const YoungDiagram& d1, const YoungDiagram& d2) {
  if (d1.parts.empty() || d2.parts.empty()) {
    throw InvalidArgument("diagram_distance: diagrams must be non-empty");
  }
  // Right-continuous step functions: F(t) = parts[floor(t*q)], zero past
  // the last part. The sup of |F1 - F2| is attained on breakpoints.
  const auto value_at = [](const YoungDiagram& d, const Rational& t) {
    const mpz_class idx = (t * Rational(d.q)).floor();
    if (idx < 0 || idx >= static_cast<long>(d.parts.size())) return Rational(0);
    return d.parts[idx.get_ui()];
  };
  std::set<Rational> breakpoints;
  for (std::size_t i = 0; i <= d1.parts.size(); ++i) {
    breakpoints.insert(Rational(static_cast<long>(i), d1.q));
  }
  for (std::size_t i = 0; i <= d2.parts.size(); ++i) {
    breakpoints.insert(Rational(static_cast<long>(i), d2.q));
  }
  Rational sup(0);
  for (const Rational& t : breakpoints) {
    Rational diff = value_at(d1, t) - value_at(d2, t);
    if (diff.sign() < 0) diff = -diff;
    if (diff > sup) sup = diff;
  }
  return sup.to_double();
}

PortraitRaster render_portrait(const ReducedParams& params, PortraitMode mode,
                               std::int64_t budget_states) {
  std::vector<std::uint32_t> orbit_ids;
  const Decomposition d = decompose(params, budget_states, &orbit_ids);

  PortraitRaster raster;
  raster.width = params.bq;
  raster.height = params.q;
  raster.mode = mode;
  raster.pixels.assign(orbit_ids.size(), 0);

  std::vector<std::uint16_t> shade(d.orbits.size(), 0);
  if (mode == PortraitMode::EscapeMask) {
    for (std::size_t i = 0; i < d.orbits.size(); ++i) {
      shade[i] = d.orbits[i].cls == OrbitClass::Escaping ? 65535 : 0;
    }
  } else {
    // Dense rank of each orbit's period among the distinct periods;
    // shorter periods map to lighter pixels.
    std::map<std::int64_t, std::size_t> rank;
    for (const Orbit& o : d.orbits) rank.emplace(o.period, 0);
    std::size_t next = 0;
    for (auto& [period, r] : rank) r = next++;
    const std::size_t max_rank = next - 1;
    for (std::size_t i = 0; i < d.orbits.size(); ++i) {
      const std::size_t r = rank[d.orbits[i].period];
      const std::uint64_t drop = max_rank == 0 ? 0 : 65535ULL * r / max_rank;
      shade[i] = static_cast<std::uint16_t>(65535ULL - drop);
    }
  }

  for (std::size_t idx = 0; idx < orbit_ids.size(); ++idx) {
    const std::int64_t j = static_cast<std::int64_t>(idx) / params.bq;
    const std::int64_t r = static_cast<std::int64_t>(idx) % params.bq;
    const std::size_t pixel =
        static_cast<std::size_t>((params.q - 1 - j) * params.bq + r);
    raster.pixels[pixel] = shade[orbit_ids[idx]];
  }
  return raster;
}

std::vector<IslandSample> island_scan(std::int64_t q, std::int64_t n, std::int64_t sample) {
  if (q < 3) throw InvalidArgument("island_scan: q must be at least 3");
  if (n < 0) throw InvalidArgument("island_scan: n must be nonnegative");
  if (sample < 1) throw InvalidArgument("island_scan: sample count must be positive");
  const ReducedParams params = make_params(1, q, 0, 1);

  // Integer levels nearest q/(2n+1), reduced mod q.
  const std::int64_t denom = 2 * n + 1;
  std::vector<std::int64_t> levels{(q / denom) % q};
  if (q % denom != 0) {
    const std::int64_t upper = (q / denom + 1) % q;
    if (upper != levels.front()) levels.push_back(upper);
  }

  std::vector<IslandSample> samples;
  samples.reserve(static_cast<std::size_t>(sample));
  const auto level_count = static_cast<std::int64_t>(levels.size());
  for (std::int64_t i = 0; i < sample; ++i) {
    const std::int64_t r = static_cast<std::int64_t>(
        static_cast<__int128>(i) * params.bq / sample);
    const LatticeState start{r, levels[static_cast<std::size_t>(i % level_count)]};
    samples.push_back({start, trace_orbit(start, params).period});
  }
  return samples;
}

}  // namespace dsm
