#include "dsm/theory.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <random>

#include "dsm/errors.hpp"
#include "parallel.hpp"

namespace dsm {

namespace {

std::string i2s(std::int64_t v) { return std::to_string(v); }

// Bounded uniform integers straight off the engine; keeps verdicts
// reproducible across standard libraries.
struct Rng {
  std::mt19937_64 engine;
  explicit Rng(std::uint64_t seed) : engine(seed) {}
  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(engine() %
                                          static_cast<std::uint64_t>(hi - lo + 1));
  }
};

std::int64_t mod_inverse(std::int64_t a, std::int64_t m) {
  std::int64_t r0 = m, r1 = a % m, s0 = 0, s1 = 1;
  while (r1 != 0) {
    const std::int64_t k = r0 / r1;
    r0 -= k * r1;
    std::swap(r0, r1);
    s0 -= k * s1;
    std::swap(s0, s1);
  }
  return ((s0 % m) + m) % m;
}

/// Collapses a sub-verdict into one case line of a campaign report.
CaseOutcome summarize(const VerdictReport& v, std::string id) {
  std::size_t failed = 0;
  std::string first;
  for (const CaseOutcome& c : v.cases) {
    if (!c.pass) {
      ++failed;
      if (first.empty()) first = c.id;
    }
  }
  std::string observed = i2s(static_cast<std::int64_t>(v.cases.size())) + " checks, " +
                         i2s(static_cast<std::int64_t>(failed)) + " failed";
  if (failed != 0) observed += " (first: " + first + ")";
  return {std::move(id), "all checks pass", std::move(observed), v.passed};
}

}  // namespace

void VerdictReport::add(std::string id, std::string expected, std::string observed,
                        bool pass) {
  passed = passed && pass;
  cases.push_back({std::move(id), std::move(expected), std::move(observed), pass});
}

BottleneckSolution solve_bottleneck(const ReducedParams& params) {
  const std::int64_t target = params.bq / 2;
  const __int128 rhs = static_cast<__int128>(target) -
                       static_cast<__int128>(params.p) * params.a;
  if ((rhs % params.b + params.b) % params.b != 0) {
    return {};
  }
  // p*b*j = target - p*a (mod bq) reduces to p*j = rhs/b (mod q).
  const __int128 reduced = rhs / params.b;
  const auto c =
      static_cast<std::int64_t>(((reduced % params.q) + params.q) % params.q);
  const std::int64_t inv = mod_inverse(params.p % params.q, params.q);
  const auto j_star = static_cast<std::int64_t>(
      static_cast<__int128>(c) * inv % params.q);

  BottleneckSolution sol;
  sol.exists = true;
  sol.j_star = j_star;
  sol.solutions_mod_bq.reserve(static_cast<std::size_t>(params.b));
  for (std::int64_t k = 0; k < params.b; ++k) {
    const std::int64_t j = j_star + k * params.q;
    const auto check = static_cast<std::int64_t>(
        static_cast<__int128>(params.p) * (params.a + params.b * j) % params.bq);
    if (check != target) {
      throw InvariantViolation("solve_bottleneck: solution fails its congruence");
    }
    sol.solutions_mod_bq.push_back(j);
  }
  return sol;
}

VerdictReport verify_symmetry(std::int64_t samples, std::uint64_t seed) {
  VerdictReport v;
  v.suite = "symmetry";
  v.params = "samples=" + i2s(samples);

  const auto symmetric_under_step = [](const CylinderPoint& pt, const Rational& alpha) {
    const CylinderPoint mirror(Rational(1) - pt.x, -pt.y);
    const CylinderPoint s1 = step_exact(pt, alpha);
    const CylinderPoint s2 = step_exact(mirror, alpha);
    return (s1.x + s2.x).frac() == Rational(0) && s1.y + s2.y == Rational(0);
  };

  Rng rng(seed);
  std::int64_t failures = 0;
  std::string first;
  for (std::int64_t i = 0; i < samples; ++i) {
    const std::int64_t xd = rng.uniform(2, 997);
    const Rational x(rng.uniform(0, xd - 1), xd);
    const std::int64_t yd = rng.uniform(1, 97);
    const Rational y(rng.uniform(-50 * yd, 50 * yd), yd);
    const std::int64_t ad = rng.uniform(1, 60);
    const Rational alpha(rng.uniform(-60, 60), ad);
    if (!symmetric_under_step(CylinderPoint(x, y), alpha)) {
      ++failures;
      if (first.empty()) {
        first = "x=" + x.str() + " y=" + y.str() + " alpha=" + alpha.str();
      }
    }
  }
  v.add("random-points", "0 failures",
        failures == 0 ? "0 failures" : i2s(failures) + " failures, first at " + first,
        failures == 0);

  // The convention sgn(0) = 0 on both singular lines must preserve the
  // symmetry as well.
  bool singular_ok =
      symmetric_under_step(CylinderPoint(Rational(1, 2), Rational(3)), Rational(1, 2)) &&
      symmetric_under_step(CylinderPoint(Rational(1, 4), Rational(1)), Rational(1, 4)) &&
      symmetric_under_step(CylinderPoint(Rational(0), Rational(0)), Rational(1, 3));
  v.add("singular-lines", "symmetry holds with sgn(0)=0",
        singular_ok ? "holds" : "violated", singular_ok);
  return v;
}

VerdictReport verify_bands(std::int64_t samples, std::uint64_t seed) {
  VerdictReport v;
  v.suite = "bands";
  v.params = "samples=" + i2s(samples);

  Rng rng(seed);
  std::int64_t failures = 0;
  std::string first;
  for (std::int64_t i = 0; i < samples; ++i) {
    const std::int64_t q = rng.uniform(1, 12);
    std::int64_t p = 1;
    do {
      p = rng.uniform(1, 30);
    } while (std::gcd(p, q) != 1);
    const std::int64_t b = rng.uniform(1, 5);
    std::int64_t a = 0;
    if (b > 1) {
      do {
        a = rng.uniform(1, b - 1);
      } while (std::gcd(a, b) != 1);
    }
    const ReducedParams params = make_params(p, q, a, b);
    const std::int64_t j = rng.uniform(0, q - 1);
    const std::int64_t band = rng.uniform(0, params.bq - 1);

    const auto in_band = [&]() {
      const std::int64_t d = rng.uniform(2, 50);
      const std::int64_t n = rng.uniform(1, d - 1);
      return Rational(band * d + n, d * params.bq);
    };
    const Rational y = Rational(params.a, params.b) + Rational(j);
    const Rational alpha(params.p, params.q);
    const CylinderPoint s1 = step_exact(CylinderPoint(in_band(), y), alpha);
    const CylinderPoint s2 = step_exact(CylinderPoint(in_band(), y), alpha);
    const mpz_class band1 = (s1.x * Rational(params.bq)).floor();
    const mpz_class band2 = (s2.x * Rational(params.bq)).floor();
    if (band1 != band2) {
      ++failures;
      if (first.empty()) {
        first = "p=" + i2s(p) + " q=" + i2s(q) + " a=" + i2s(a) + " b=" + i2s(b) +
                " j=" + i2s(j) + " band=" + i2s(band);
      }
    }
  }
  v.add("random-pairs", "0 failures",
        failures == 0 ? "0 failures" : i2s(failures) + " failures, first at " + first,
        failures == 0);
  return v;
}

namespace {

struct CrossingCensus {
  std::int64_t upward = 0;
  std::int64_t downward = 0;
  std::int64_t upward_r = -1;  // r of the last upward-crossing state on level j*
};

// A trajectory crosses the bottleneck level when it enters it from one
// side and leaves through the other on the very next step.
CrossingCensus census_crossings(const ReducedParams& params, std::int64_t j_star) {
  CrossingCensus census;
  const std::int64_t below = (j_star - 1 + params.q) % params.q;
  const std::int64_t above = (j_star + 1) % params.q;
  for (std::int64_t r = 0; r < params.bq; ++r) {
    const LatticeStep in_up = step_lattice({r, below}, params);
    if (in_up.dj == +1 && step_lattice(in_up.state, params).dj == +1) {
      ++census.upward;
      census.upward_r = in_up.state.r;
    }
    const LatticeStep in_down = step_lattice({r, above}, params);
    if (in_down.dj == -1 && step_lattice(in_down.state, params).dj == -1) {
      ++census.downward;
    }
  }
  return census;
}

}  // namespace

VerdictReport verify_boundedness_theorem(const ReducedParams& params,
                                         std::int64_t budget_states) {
  const BottleneckSolution sol = solve_bottleneck(params);
  if (!sol.exists) {
    throw HypothesisViolation(
        "verify_boundedness_theorem: bottleneck congruence unsolvable for these "
        "parameters");
  }
  VerdictReport v;
  v.suite = "boundedness";
  v.params = "p=" + i2s(params.p) + " q=" + i2s(params.q) + " a=" + i2s(params.a) +
             " b=" + i2s(params.b);

  const Decomposition d = decompose(params, budget_states);
  std::vector<const Orbit*> escaping;
  for (const Orbit& o : d.orbits) {
    if (o.cls == OrbitClass::Escaping) escaping.push_back(&o);
  }

  const bool even_span = params.bq % 2 == 0;
  const std::int64_t expected_escaping = even_span ? 0 : 1;
  v.add("escaping-count", i2s(expected_escaping),
        i2s(static_cast<std::int64_t>(escaping.size())),
        static_cast<std::int64_t>(escaping.size()) == expected_escaping);

  const CrossingCensus census = census_crossings(params, sol.j_star);
  v.add("upward-crossings", i2s(expected_escaping), i2s(census.upward),
        census.upward == expected_escaping);
  v.add("downward-crossings", "0", i2s(census.downward), census.downward == 0);
  if (!even_span) {
    const std::int64_t expected_r = (params.bq - 1) / 2;
    v.add("crossing-position", "r=" + i2s(expected_r), "r=" + i2s(census.upward_r),
          census.upward_r == expected_r);
    if (params.b == 1 && escaping.size() == 1) {
      v.add("escaping-period-odd", "odd", i2s(escaping.front()->period),
            escaping.front()->period % 2 == 1);
      v.add("escaping-winding", "nonzero", i2s(escaping.front()->winding),
            escaping.front()->winding != 0);
    }
  }
  return v;
}

VerdictReport verify_q4k2(std::int64_t k, std::int64_t max_check) {
  if (k < 1) throw InvalidArgument("verify_q4k2: k must be positive");
  if (max_check < 0) throw InvalidArgument("verify_q4k2: negative max_check");
  const std::int64_t q = 4 * k + 2;
  const ReducedParams params = make_params(1, q, 1, 2);
  const LatticeState start{4 * k - 1, 2 * k + 1};

  VerdictReport v;
  v.suite = "q4k2";
  v.params = "k=" + i2s(k) + " q=" + i2s(q) + " y0=1/2 start=(" + i2s(start.r) + "," +
             i2s(start.j) + ")";

  const Orbit orbit = trace_orbit(start, params);
  v.add("winding", "nonzero", i2s(orbit.winding), orbit.winding != 0);

  const LatticeStep s1 = step_lattice(start, params);
  const LatticeStep s2 = step_lattice(s1.state, params);
  v.add("first-rise", "j1=" + i2s(start.j + 1), "j1=" + i2s(s1.state.j),
        s1.state.j == start.j + 1);
  v.add("second-rise", "j2=" + i2s(start.j + 2), "j2=" + i2s(s2.state.j),
        s2.state.j == start.j + 2);

  // r_m + (m mod 2) = 3 (mod 4) along the orbit.
  const std::int64_t scan = std::min(orbit.period, max_check);
  std::int64_t violations = 0;
  std::int64_t first_violation = -1;
  LatticeState s = start;
  for (std::int64_t m = 0; m <= scan; ++m) {
    if ((s.r + m % 2) % 4 != 3) {
      ++violations;
      if (first_violation < 0) first_violation = m;
    }
    s = step_lattice(s, params).state;
  }
  std::string observed = i2s(violations) + " violations in " + i2s(scan + 1) + " iterates";
  if (violations != 0) observed += " (first at m=" + i2s(first_violation) + ")";
  v.add("mod4-invariant", "r_m + (m mod 2) = 3 (mod 4)", observed, violations == 0);
  return v;
}

std::optional<SeedResult> search_escape_seed(std::int64_t k, std::int64_t b_max,
                                             std::optional<std::int64_t> fixed_a,
                                             std::int64_t budget_states) {
  if (k < 1) throw InvalidArgument("search_escape_seed: k must be positive");
  if (b_max < 1) throw InvalidArgument("search_escape_seed: b_max must be positive");
  const std::int64_t q = 4 * k;
  for (std::int64_t b = 1; b <= b_max; ++b) {
    for (std::int64_t a = (b == 1 ? 0 : 1); a < std::max<std::int64_t>(b, 1); ++a) {
      if (b > 1 && std::gcd(a, b) != 1) continue;
      if (fixed_a && a != *fixed_a) continue;
      const Decomposition d = decompose(make_params(1, q, a, b), budget_states);
      const bool escapes = std::any_of(d.orbits.begin(), d.orbits.end(), [](const Orbit& o) {
        return o.cls == OrbitClass::Escaping;
      });
      if (escapes) return SeedResult{b, a};
    }
  }
  return std::nullopt;
}

std::int64_t lower_bound_sum(std::int64_t q) {
  if (q < 3 || q % 2 == 0) {
    throw InvalidArgument("lower_bound_sum: q must be odd and at least 3");
  }
  std::int64_t sum = 0;
  for (std::int64_t k = 1; k <= q / 9; ++k) {
    sum += (q - 1) / (2 * k) - 1;
  }
  return sum;
}

DwellReport measure_dwell(std::int64_t q, std::int64_t m, std::int64_t s) {
  if (q < 9 || q % 2 == 0) {
    throw InvalidArgument("measure_dwell: q must be odd and at least 9");
  }
  if (m < 1 || m > q / 9) throw InvalidArgument("measure_dwell: m out of range");
  if (s < 0 || s > m - 1) throw InvalidArgument("measure_dwell: s out of range");

  const ReducedParams params = make_params(1, q, 0, 1);
  const StepTable table(params);
  const std::int64_t top = (q + 1) / 2 + m;
  const std::int64_t r0 = (q + 1) / 2 + s;

  std::int64_t r = r0;
  std::int64_t j = top;
  std::int64_t count = 1;  // the start point itself dwells
  const std::int64_t cap = q * q;
  for (std::int64_t n = 1; n <= cap; ++n) {
    table.step(r, j);
    if (j != top && j != top - 1) break;
    ++count;
    if (r == r0 && j == top) {
      count = cap;  // the whole orbit dwells; saturate
      break;
    }
  }
  return DwellReport{m, r0, count, (q - 1) / (2 * m) - 1};
}

VerdictReport verify_two_rise_confinement(std::int64_t q, std::int64_t m) {
  if (q < 3 || q % 2 == 0) {
    throw InvalidArgument("verify_two_rise_confinement: q must be odd and at least 3");
  }
  if (m < 1 || m > (q - 1) / 2) {
    throw InvalidArgument("verify_two_rise_confinement: m out of range");
  }
  const ReducedParams params = make_params(1, q, 0, 1);
  const std::int64_t j0 = (q + 1) / 2 + m - 2;
  const std::int64_t lo = (q - 1) / 2;
  const std::int64_t hi = (q - 1) / 2 + m - 1;

  VerdictReport v;
  v.suite = "two-rise";
  v.params = "q=" + i2s(q) + " m=" + i2s(m);
  for (std::int64_t r0 = 0; r0 < q; ++r0) {
    const LatticeStep s1 = step_lattice({r0, j0}, params);
    if (s1.dj != +1) continue;
    const LatticeStep s2 = step_lattice(s1.state, params);
    if (s2.dj != +1) continue;
    const std::int64_t r2 = s2.state.r;
    v.add("r0=" + i2s(r0), "r2 in [" + i2s(lo) + "," + i2s(hi) + "]", "r2=" + i2s(r2),
          lo <= r2 && r2 <= hi);
  }
  return v;
}

VerdictReport verify_window_bound(std::int64_t q) {
  const EscapeRecord rec = escape_length(q);
  const std::int64_t ell = rec.ell;
  const auto window = static_cast<std::int64_t>(
      std::floor(static_cast<double>(q) * std::log(static_cast<double>(q))));

  const ReducedParams params = make_params(1, q, 0, 1);
  const StepTable table(params);
  std::vector<std::int64_t> lifts;
  lifts.reserve(static_cast<std::size_t>(ell + window + 1));
  std::int64_t r = (q - 1) / 2;
  std::int64_t j = (q - 1) / 2;
  std::int64_t lift = 0;
  lifts.push_back(0);
  for (std::int64_t n = 0; n < ell + window; ++n) {
    lift += table.step(r, j);
    lifts.push_back(lift);
  }

  // Sliding min/max over every window of `window` consecutive lift values
  // whose start lies within one period.
  std::int64_t max_osc = 0;
  std::deque<std::size_t> lo, hi;
  for (std::size_t i = 0; i < lifts.size(); ++i) {
    while (!lo.empty() && lifts[lo.back()] >= lifts[i]) lo.pop_back();
    while (!hi.empty() && lifts[hi.back()] <= lifts[i]) hi.pop_back();
    lo.push_back(i);
    hi.push_back(i);
    if (i + 1 < static_cast<std::size_t>(window)) continue;
    const std::size_t start = i + 1 - static_cast<std::size_t>(window);
    while (lo.front() < start) lo.pop_front();
    while (hi.front() < start) hi.pop_front();
    if (start < static_cast<std::size_t>(ell)) {
      max_osc = std::max(max_osc, lifts[hi.front()] - lifts[lo.front()]);
    }
  }

  VerdictReport v;
  v.suite = "window";
  v.params = "q=" + i2s(q) + " ell=" + i2s(ell);
  v.add("window-width", "floor(q ln q)", i2s(window), true);
  v.add("max-oscillation", "< " + i2s(q), i2s(max_osc), max_osc < q);
  return v;
}

std::int64_t count_period4(std::int64_t k, std::int64_t budget_states) {
  if (k < 1) throw InvalidArgument("count_period4: k must be positive");
  const ReducedParams params = make_params(1, 4 * k, 0, 1);
  // Constructive family: every (r, k) with 2k <= r < 3k-1 is 4-periodic.
  for (std::int64_t r = 2 * k; r < 3 * k - 1; ++r) {
    if (trace_orbit({r, k}, params).period != 4) {
      throw InvariantViolation("count_period4: constructive family point not 4-periodic");
    }
  }
  const Decomposition d = decompose(params, budget_states);
  return std::count_if(d.orbits.begin(), d.orbits.end(),
                       [](const Orbit& o) { return o.period == 4; });
}

namespace {

// Runs fn(i) -> VerdictReport for each index and splices the summaries,
// in index order, into one campaign report.
template <typename Fn>
VerdictReport campaign(std::string suite, std::string params, std::size_t n, int threads,
                       Fn&& fn) {
  std::vector<CaseOutcome> slots(n);
  detail::parallel_for(n, threads, [&](std::size_t i) { slots[i] = fn(i); });
  VerdictReport merged;
  merged.suite = std::move(suite);
  merged.params = std::move(params);
  for (CaseOutcome& c : slots) {
    merged.passed = merged.passed && c.pass;
    merged.cases.push_back(std::move(c));
  }
  return merged;
}

std::vector<std::int64_t> odd_range(std::int64_t lo, std::int64_t hi) {
  std::vector<std::int64_t> qs;
  for (std::int64_t q = lo % 2 == 0 ? lo + 1 : lo; q <= hi; q += 2) qs.push_back(q);
  return qs;
}

}  // namespace

VerdictReport run_verify_suite(const std::string& suite, std::int64_t q_max,
                               std::int64_t k_max, int threads,
                               std::int64_t budget_states) {
  if (suite == "symmetry") {
    return verify_symmetry(q_max > 0 ? q_max : 10000);
  }
  if (suite == "bands") {
    return verify_bands(q_max > 0 ? q_max : 10000);
  }
  if (suite == "bottleneck") {
    const std::int64_t hi = q_max > 0 ? q_max : 200;
    return campaign("bottleneck", "p=1 y0=0 q=1.." + i2s(hi),
                    static_cast<std::size_t>(hi), threads, [&](std::size_t i) {
                      const std::int64_t q = static_cast<std::int64_t>(i) + 1;
                      return summarize(
                          verify_boundedness_theorem(make_params(1, q, 0, 1), budget_states),
                          "q=" + i2s(q));
                    });
  }
  if (suite == "q4k2") {
    const std::int64_t hi = k_max > 0 ? k_max : 50;
    return campaign("q4k2", "k=1.." + i2s(hi) + " y0=1/2", static_cast<std::size_t>(hi),
                    threads, [&](std::size_t i) {
                      const std::int64_t k = static_cast<std::int64_t>(i) + 1;
                      return summarize(verify_q4k2(k, 100000), "k=" + i2s(k));
                    });
  }
  if (suite == "dwell") {
    const std::int64_t hi = q_max > 0 ? q_max : 99;
    struct Item {
      std::int64_t q, m, s;
    };
    std::vector<Item> items;
    for (std::int64_t q : odd_range(9, hi)) {
      for (std::int64_t m = 1; m <= q / 9; ++m) {
        for (std::int64_t s = 0; s < m; ++s) items.push_back({q, m, s});
      }
    }
    return campaign("dwell", "odd q in [9," + i2s(hi) + "], all m, all s", items.size(),
                    threads, [&](std::size_t i) {
                      const auto [q, m, s] = items[i];
                      const DwellReport rep = measure_dwell(q, m, s);
                      return CaseOutcome{
                          "q=" + i2s(q) + " m=" + i2s(m) + " s=" + i2s(s),
                          "N >= " + i2s(rep.bound), "N=" + i2s(rep.n_m),
                          rep.n_m >= rep.bound};
                    });
  }
  if (suite == "two-rise") {
    const std::int64_t hi = q_max > 0 ? q_max : 99;
    struct Item {
      std::int64_t q, m;
    };
    std::vector<Item> items;
    for (std::int64_t q : odd_range(3, hi)) {
      for (std::int64_t m = 1; m <= (q - 1) / 2; ++m) items.push_back({q, m});
    }
    return campaign("two-rise", "odd q in [3," + i2s(hi) + "], all m", items.size(),
                    threads, [&](std::size_t i) {
                      const auto [q, m] = items[i];
                      return summarize(verify_two_rise_confinement(q, m),
                                       "q=" + i2s(q) + " m=" + i2s(m));
                    });
  }
  if (suite == "window") {
    std::vector<std::int64_t> qs =
        q_max > 0 ? odd_range(3, q_max) : std::vector<std::int64_t>{101, 331, 991};
    return campaign("window", q_max > 0 ? "odd q in [3," + i2s(q_max) + "]" : "q in {101,331,991}",
                    qs.size(), threads, [&](std::size_t i) {
                      return summarize(verify_window_bound(qs[i]), "q=" + i2s(qs[i]));
                    });
  }
  if (suite == "period4") {
    const std::int64_t hi = k_max > 0 ? k_max : 25;
    return campaign("period4", "k=1.." + i2s(hi) + " q=4k y0=0",
                    static_cast<std::size_t>(hi), threads, [&](std::size_t i) {
                      const std::int64_t k = static_cast<std::int64_t>(i) + 1;
                      const std::int64_t expected = 2 * k - 1;
                      std::int64_t got = -1;
                      std::string observed;
                      try {
                        got = count_period4(k, budget_states);
                        observed = i2s(got);
                      } catch (const Error& e) {
                        observed = e.what();
                      }
                      return CaseOutcome{"k=" + i2s(k), i2s(expected), observed,
                                         got == expected};
                    });
  }
  if (suite == "lower-bound") {
    const std::int64_t hi = q_max > 0 ? q_max : 2001;
    const std::vector<std::int64_t> qs = odd_range(3, hi);
    return campaign("lower-bound", "odd q in [3," + i2s(hi) + "]", qs.size(), threads,
                    [&](std::size_t i) {
                      const std::int64_t q = qs[i];
                      const std::int64_t bound = lower_bound_sum(q);
                      const std::int64_t ell = escape_length(q).ell;
                      return CaseOutcome{"q=" + i2s(q), "sum <= l(q)",
                                         "sum=" + i2s(bound) + " l=" + i2s(ell),
                                         bound <= ell};
                    });
  }
  throw InvalidArgument("unknown verify suite: " + suite);
}

const std::vector<std::string>& verify_suite_names() {
  static const std::vector<std::string> names = {
      "symmetry", "bands",  "bottleneck", "q4k2",        "dwell",
      "two-rise", "window", "period4",    "lower-bound"};
  return names;
}

}  // namespace dsm
