#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dsm/lattice.hpp"
#include "dsm/orbit.hpp"

namespace dsm {

/// Solution set of the bottleneck congruence p(a + b*j) = floor(bq/2)
/// (mod bq). When solvable it has exactly b solutions j* + k*q in
/// [0, bq), all congruent mod q; j_star is the class representative in
/// [0, q).
struct BottleneckSolution {
  bool exists = false;
  std::int64_t j_star = 0;
  std::vector<std::int64_t> solutions_mod_bq;
};

/// Solves the bottleneck congruence by the extended Euclidean algorithm.
/// Non-existence is reported, not thrown: the congruence is solvable iff
/// b divides floor(bq/2) - p*a.
BottleneckSolution solve_bottleneck(const ReducedParams& params);

struct CaseOutcome {
  std::string id;
  std::string expected;
  std::string observed;
  bool pass = false;
};

/// Outcome of one verification suite. passed is the conjunction of the
/// per-case outcomes.
struct VerdictReport {
  std::string suite;
  std::string params;
  bool passed = true;
  std::vector<CaseOutcome> cases;

  void add(std::string id, std::string expected, std::string observed, bool pass);
};

/// Dwell measurement near the bottleneck: starting from
/// (r0, j0) = ((q+1)/2 + s, (q+1)/2 + m), n_m counts the initial iterates
/// (the start point included) whose level stays within
/// {(q+1)/2 + m, (q+1)/2 + m - 1}. bound is floor((q-1)/(2m)) - 1.
struct DwellReport {
  std::int64_t m = 0;
  std::int64_t start_r = 0;
  std::int64_t n_m = 0;
  std::int64_t bound = 0;
};

inline constexpr std::uint64_t kPropertySeed = 0x9e3779b97f4a7c15ULL;

/// Point symmetry through (1/2, 0): f(pt) + f((1,0) - pt) = (1, 0), the
/// x component read mod 1. Checked on `samples` random rational points.
VerdictReport verify_symmetry(std::int64_t samples, std::uint64_t seed = kPropertySeed);

/// Band organization: two points with equal floor(bq*x) and the same
/// on-grid y keep equal floor(bq*x') after one exact step. Checked on
/// `samples` random pairs.
VerdictReport verify_bands(std::int64_t samples, std::uint64_t seed = kPropertySeed);

/// Boundedness theorem for one parameter set (hypothesis: the bottleneck
/// congruence is solvable, else HypothesisViolation). Decomposes the full
/// torus and checks: even bq has zero escaping orbits and no trajectory
/// crosses the bottleneck level; odd bq has exactly one escaping orbit
/// whose unique upward crossing sits at r = (bq-1)/2.
VerdictReport verify_boundedness_theorem(const ReducedParams& params,
                                         std::int64_t budget_states = kDefaultStateBudget);

/// q = 4k+2 with y0 = 1/2: the orbit of (4k-1, 2k+1) escapes, rises twice
/// immediately, and satisfies r_m + (m mod 2) = 3 (mod 4) for the first
/// min(period, max_check) iterates.
VerdictReport verify_q4k2(std::int64_t k, std::int64_t max_check);

struct SeedResult {
  std::int64_t b = 0;
  std::int64_t a = 0;
};

/// Smallest y0 = a/b (b ascending, then a ascending, gcd(a,b) = 1) whose
/// lattice for q = 4k contains an escaping orbit. fixed_a restricts the
/// numerator, mirroring the restricted searches.
std::optional<SeedResult> search_escape_seed(std::int64_t k, std::int64_t b_max,
                                             std::optional<std::int64_t> fixed_a = std::nullopt,
                                             std::int64_t budget_states = kDefaultStateBudget);

/// Sum_{k=1..floor(q/9)} (floor((q-1)/(2k)) - 1); a lower bound for l(q).
std::int64_t lower_bound_sum(std::int64_t q);

/// Direct dwell measurement; see DwellReport. Requires odd q >= 9,
/// 1 <= m <= floor(q/9), 0 <= s <= m-1.
DwellReport measure_dwell(std::int64_t q, std::int64_t m, std::int64_t s);

/// Enumerates every r0 whose orbit from level (q+1)/2 + m - 2 rises twice
/// in a row and checks that the second landing satisfies
/// r2 in [(q-1)/2, (q-1)/2 + m - 1]. Vacuously passes when no r0 rises
/// twice.
VerdictReport verify_two_rise_confinement(std::int64_t q, std::int64_t m);

/// Sliding-window oscillation along the escaping orbit: every window of
/// W = floor(q ln q) consecutive lift values spans less than q.
VerdictReport verify_window_bound(std::int64_t q);

/// Number of orbits of exact period 4 for q = 4k, y0 = 0. Also checks the
/// constructive family: every (r, k) with 2k <= r < 3k-1 is 4-periodic
/// (InvariantViolation otherwise).
std::int64_t count_period4(std::int64_t k, std::int64_t budget_states = kDefaultStateBudget);

/// Campaign driver used by the CLI and the acceptance suite. Suite names:
/// symmetry, bands, bottleneck, q4k2, dwell, two-rise, window, period4,
/// lower-bound. Zero q_max / k_max selects the per-suite default. Cases
/// may run on `threads` workers; the merged report is identical for any
/// thread count.
VerdictReport run_verify_suite(const std::string& suite, std::int64_t q_max,
                               std::int64_t k_max, int threads = 1,
                               std::int64_t budget_states = kDefaultStateBudget);

/// All suite names accepted by run_verify_suite, in canonical order.
const std::vector<std::string>& verify_suite_names();

}  // namespace dsm
