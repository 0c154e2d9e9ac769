#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "dsm/errors.hpp"
#include "dsm/theory.hpp"

using dsm::BottleneckSolution;
using dsm::ReducedParams;
using dsm::VerdictReport;

TEST_CASE("solve_bottleneck examples") {
  const BottleneckSolution s1 = dsm::solve_bottleneck(dsm::make_params(1, 3, 0, 1));
  CHECK(s1.exists);
  CHECK(s1.j_star == 1);
  CHECK(s1.solutions_mod_bq == std::vector<std::int64_t>{1});

  const BottleneckSolution s2 = dsm::solve_bottleneck(dsm::make_params(1, 2, 1, 2));
  CHECK_FALSE(s2.exists);

  const BottleneckSolution s3 = dsm::solve_bottleneck(dsm::make_params(1, 991, 0, 1));
  CHECK(s3.exists);
  CHECK(s3.j_star == 495);

  const BottleneckSolution s4 = dsm::solve_bottleneck(dsm::make_params(1, 3, 1, 3));
  CHECK(s4.exists);
  CHECK(s4.j_star == 1);
  CHECK(s4.solutions_mod_bq == std::vector<std::int64_t>{1, 4, 7});
}

TEST_CASE("solve_bottleneck solutions satisfy the congruence") {
  std::mt19937_64 rng(4242);
  const auto uniform = [&](std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
  };
  int solvable = 0;
  for (int i = 0; i < 400; ++i) {
    const std::int64_t q = uniform(1, 60);
    std::int64_t p = 0;
    do {
      p = uniform(1, 60);
    } while (std::gcd(p, q) != 1);
    const std::int64_t b = uniform(1, 12);
    const ReducedParams params = dsm::make_params(p, q, uniform(0, b - 1), b);

    const BottleneckSolution sol = dsm::solve_bottleneck(params);
    const std::int64_t target = params.bq / 2;
    const std::int64_t rem =
        (((target - params.p * params.a) % params.b) + params.b) % params.b;
    CHECK(sol.exists == (rem == 0));
    if (!sol.exists) continue;
    ++solvable;
    CHECK(sol.solutions_mod_bq.size() == static_cast<std::size_t>(params.b));
    CHECK(sol.j_star == sol.solutions_mod_bq.front() % params.q);
    for (const std::int64_t j : sol.solutions_mod_bq) {
      CHECK((params.p * (params.a + params.b * j)) % params.bq == target);
      CHECK(((j % params.q) + params.q) % params.q == sol.j_star);
    }
  }
  CHECK(solvable > 50);  // the sample must actually exercise both branches
}

TEST_CASE("boundedness theorem verdicts") {
  const VerdictReport even = dsm::verify_boundedness_theorem(dsm::make_params(1, 4, 0, 1));
  CHECK(even.passed);

  const VerdictReport odd = dsm::verify_boundedness_theorem(dsm::make_params(1, 3, 0, 1));
  CHECK(odd.passed);
  bool found_position = false;
  for (const auto& c : odd.cases) {
    if (c.id == "crossing-position") {
      found_position = true;
      CHECK(c.observed == "r=1");
    }
  }
  CHECK(found_position);

  // b > 1, odd bq: a single escaping class on the 9x3 torus
  CHECK(dsm::verify_boundedness_theorem(dsm::make_params(1, 3, 1, 3)).passed);
  // b = 2, even bq with solvable congruence: everything bounded
  CHECK(dsm::verify_boundedness_theorem(dsm::make_params(1, 3, 1, 2)).passed);

  // unsolvable congruence is outside the hypotheses
  CHECK_THROWS_AS(dsm::verify_boundedness_theorem(dsm::make_params(1, 6, 1, 2)),
                  dsm::HypothesisViolation);
}

TEST_CASE("boundedness verdict at q = 991") {
  CHECK(dsm::verify_boundedness_theorem(dsm::make_params(1, 991, 0, 1)).passed);
  const dsm::Decomposition d = dsm::decompose(dsm::make_params(1, 991, 0, 1));
  std::int64_t escaping_period = 0;
  std::int64_t escaping = 0;
  for (const dsm::Orbit& o : d.orbits) {
    if (o.cls == dsm::OrbitClass::Escaping) {
      ++escaping;
      escaping_period = o.period;
    }
  }
  CHECK(escaping == 1);
  CHECK(escaping_period == 414639);
}

TEST_CASE("q = 4k+2 construction") {
  const VerdictReport k1 = dsm::verify_q4k2(1, 100000);
  CHECK(k1.passed);

  // frozen orbit data for k = 1: period 10, winding 1, start (3, 3)
  const dsm::Orbit orbit = dsm::trace_orbit({3, 3}, dsm::make_params(1, 6, 1, 2));
  CHECK(orbit.period == 10);
  CHECK(orbit.winding == 1);

  // first iterates by hand: r1 = r0 + 1 + 2 j0 = 10, and 10 + 1 = 3 (mod 4)
  const auto s1 = dsm::step_lattice({3, 3}, dsm::make_params(1, 6, 1, 2));
  CHECK(s1.state.r == 10);
  CHECK((s1.state.r + 1) % 4 == 3);

  CHECK(dsm::verify_q4k2(2, 100000).passed);
  CHECK(dsm::verify_q4k2(50, 100000).passed);
  CHECK_THROWS_AS(dsm::verify_q4k2(0, 10), dsm::InvalidArgument);
}

TEST_CASE("escape-seed search") {
  const auto k1 = dsm::search_escape_seed(1, 10);
  REQUIRE(k1.has_value());
  CHECK(k1->b == 3);
  CHECK(k1->a == 1);

  const auto k2 = dsm::search_escape_seed(2, 20);
  REQUIRE(k2.has_value());
  CHECK(k2->b == 13);
  CHECK(k2->a == 4);

  // restricting the numerator to 1 starves the k = 3 search
  CHECK_FALSE(dsm::search_escape_seed(3, 200, 1).has_value());

  CHECK_FALSE(dsm::search_escape_seed(1, 2).has_value());
}

TEST_CASE("lower_bound_sum closed form") {
  CHECK(dsm::lower_bound_sum(9) == 3);
  CHECK(dsm::lower_bound_sum(7) == 0);   // empty sum
  CHECK(dsm::lower_bound_sum(27) == 20);
  CHECK_THROWS_AS(dsm::lower_bound_sum(8), dsm::InvalidArgument);
}

TEST_CASE("dwell measurements") {
  const dsm::DwellReport d1 = dsm::measure_dwell(9, 1, 0);
  CHECK(d1.bound == 3);
  CHECK(d1.n_m == 3);
  CHECK(d1.start_r == 5);

  const dsm::DwellReport d2 = dsm::measure_dwell(19, 2, 1);
  CHECK(d2.bound == 3);
  CHECK(d2.n_m == 4);

  // first two iterates follow the closed forms r1 = s + m + 1,
  // j1 = (q+1)/2 + m - 1
  for (const std::int64_t q : {9L, 19L, 37L}) {
    for (std::int64_t m = 1; m <= q / 9; ++m) {
      for (std::int64_t s = 0; s < m; ++s) {
        const auto params = dsm::make_params(1, q, 0, 1);
        const auto first =
            dsm::step_lattice({(q + 1) / 2 + s, (q + 1) / 2 + m}, params);
        CHECK(first.state.r == s + m + 1);
        CHECK(first.state.j == (q + 1) / 2 + m - 1);
      }
    }
  }

  CHECK_THROWS_AS(dsm::measure_dwell(7, 1, 0), dsm::InvalidArgument);
  CHECK_THROWS_AS(dsm::measure_dwell(9, 2, 0), dsm::InvalidArgument);
  CHECK_THROWS_AS(dsm::measure_dwell(9, 1, 1), dsm::InvalidArgument);
}

TEST_CASE("dwell bound holds exhaustively up to 99") {
  for (std::int64_t q = 9; q <= 99; q += 2) {
    for (std::int64_t m = 1; m <= q / 9; ++m) {
      for (std::int64_t s = 0; s < m; ++s) {
        const dsm::DwellReport rep = dsm::measure_dwell(q, m, s);
        CHECK(rep.n_m >= rep.bound);
      }
    }
  }
}

TEST_CASE("two-rise confinement") {
  const VerdictReport v1 = dsm::verify_two_rise_confinement(9, 1);
  CHECK(v1.passed);
  REQUIRE(v1.cases.size() == 1);  // only r0 = 4 rises twice
  CHECK(v1.cases[0].id == "r0=4");
  CHECK(v1.cases[0].observed == "r2=4");

  const VerdictReport v2 = dsm::verify_two_rise_confinement(11, 3);
  CHECK(v2.passed);
  CHECK(v2.cases.size() == 3);  // r0 in {1, 2, 3}, r2 in {5, 6, 7}

  // a verdict with no two-rise starts passes vacuously
  VerdictReport vacuous;
  vacuous.suite = "two-rise";
  CHECK(vacuous.passed);
  CHECK(vacuous.cases.empty());

  CHECK_THROWS_AS(dsm::verify_two_rise_confinement(9, 5), dsm::InvalidArgument);
}

TEST_CASE("window bound") {
  const VerdictReport v3 = dsm::verify_window_bound(3);
  CHECK(v3.passed);
  // W = floor(3 ln 3) = 3; the worst 3-entry window spans 2 < 3
  bool checked = false;
  for (const auto& c : v3.cases) {
    if (c.id == "window-width") CHECK(c.observed == "3");
    if (c.id == "max-oscillation") {
      CHECK(c.observed == "2");
      checked = true;
    }
  }
  CHECK(checked);
  CHECK(dsm::verify_window_bound(101).passed);

  // q = 5 is a true edge case: l(5) = 9 and the orbit climbs all 5 levels
  // inside one 8-entry window, so the verifier must report the failure.
  const VerdictReport v5 = dsm::verify_window_bound(5);
  CHECK_FALSE(v5.passed);
}

TEST_CASE("period-4 census") {
  CHECK(dsm::count_period4(1) == 1);
  CHECK(dsm::count_period4(2) == 3);
  CHECK(dsm::count_period4(5) == 9);
  CHECK_THROWS_AS(dsm::count_period4(0), dsm::InvalidArgument);
}

TEST_CASE("property suites pass") {
  CHECK(dsm::verify_symmetry(2000).passed);
  CHECK(dsm::verify_bands(2000).passed);
}

TEST_CASE("campaigns merge deterministically across thread counts") {
  const VerdictReport serial = dsm::run_verify_suite("bottleneck", 40, 0, 1);
  const VerdictReport parallel = dsm::run_verify_suite("bottleneck", 40, 0, 3);
  CHECK(serial.passed);
  REQUIRE(serial.cases.size() == parallel.cases.size());
  for (std::size_t i = 0; i < serial.cases.size(); ++i) {
    CHECK(serial.cases[i].id == parallel.cases[i].id);
    CHECK(serial.cases[i].observed == parallel.cases[i].observed);
  }
  CHECK_THROWS_AS(dsm::run_verify_suite("nope", 0, 0, 1), dsm::InvalidArgument);

  // budget overruns raised inside workers surface on the calling thread
  CHECK_THROWS_AS(dsm::run_verify_suite("bottleneck", 50, 0, 2, 100),
                  dsm::ResourceLimit);
}

TEST_CASE("small campaign defaults") {
  CHECK(dsm::run_verify_suite("dwell", 39, 0, 2).passed);
  CHECK(dsm::run_verify_suite("two-rise", 19, 0, 2).passed);
  CHECK(dsm::run_verify_suite("period4", 0, 4, 2).passed);
  CHECK(dsm::run_verify_suite("lower-bound", 201, 0, 2).passed);
  CHECK(dsm::run_verify_suite("q4k2", 0, 5, 2).passed);

  // an explicit window range includes the honest q = 5 failure
  const VerdictReport window = dsm::run_verify_suite("window", 21, 0, 2);
  CHECK_FALSE(window.passed);
  for (const auto& c : window.cases) {
    CHECK(c.pass == (c.id != "q=5"));
  }
}
