// End-to-end acceptance checks. Each criterion prints exactly one
// PASS/FAIL line; the process exits nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "dsm/analytics.hpp"
#include "dsm/errors.hpp"
#include "dsm/io.hpp"
#include "dsm/theory.hpp"

namespace {

struct Failure {
  std::string message;
};

void require(bool condition, const std::string& message) {
  if (!condition) throw Failure{message};
}

struct Criterion {
  std::string name;
  std::function<void(std::string& detail)> body;
};

// ---------------------------------------------------------------------------

void criterion_ell_991(std::string& detail) {
  const auto started = std::chrono::steady_clock::now();
  const dsm::EscapeRecord rec = dsm::escape_length(991);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  detail = "l(991)=" + std::to_string(rec.ell) + " in " + dsm::to_decimal17(seconds) + "s";
  require(rec.ell == 414639, "expected l(991)=414639, got " + std::to_string(rec.ell));
  require(seconds < 1.0, "fast path exceeded 1s");
}

void criterion_decompose_992(std::string& detail) {
  const auto started = std::chrono::steady_clock::now();
  const dsm::Decomposition d = dsm::decompose(dsm::make_params(1, 992, 0, 1));
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  std::int64_t escaping = 0;
  std::int64_t max_period = 0;
  for (const dsm::Orbit& o : d.orbits) {
    if (o.cls == dsm::OrbitClass::Escaping) ++escaping;
    max_period = std::max(max_period, o.period);
  }
  detail = "orbits=" + std::to_string(d.orbits.size()) +
           " max_period=" + std::to_string(max_period);
  require(escaping == 0, "expected 0 escaping orbits, got " + std::to_string(escaping));
  require(max_period == 6168,
          "expected max period 6168, got " + std::to_string(max_period));
  require(seconds < 30.0, "decomposition exceeded 30s");
}

void criterion_mean_ratio(std::string& detail) {
  const dsm::SweepResult sweep = dsm::sweep_escape_lengths(101, 499, 0);
  detail = "mean=" + dsm::to_decimal17(sweep.mean_ratio) + " over " +
           std::to_string(sweep.records.size()) + " odd q";
  require(sweep.mean_ratio >= 0.38 && sweep.mean_ratio <= 0.48,
          "mean ratio " + dsm::to_decimal17(sweep.mean_ratio) + " outside [0.38, 0.48]");
}

void criterion_boundedness_sweep(std::string& detail) {
  const auto started = std::chrono::steady_clock::now();
  for (std::int64_t q = 1; q <= 200; ++q) {
    const dsm::Decomposition d = dsm::decompose(dsm::make_params(1, q, 0, 1));
    std::int64_t escaping = 0;
    const dsm::Orbit* escaper = nullptr;
    for (const dsm::Orbit& o : d.orbits) {
      if (o.cls == dsm::OrbitClass::Escaping) {
        ++escaping;
        escaper = &o;
      }
    }
    if (q % 2 == 0) {
      require(escaping == 0, "q=" + std::to_string(q) + ": expected 0 escaping");
    } else {
      require(escaping == 1, "q=" + std::to_string(q) + ": expected 1 escaping");
      require(escaper->period % 2 == 1,
              "q=" + std::to_string(q) + ": escaping period is even");
      require(escaper->winding != 0, "q=" + std::to_string(q) + ": zero winding");
    }
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  require(seconds < 60.0, "sweep exceeded 1 minute");
  detail = "q=1..200";
}

void criterion_seed_table(std::string& detail) {
  const std::vector<std::int64_t> expected_b{3, 13, 11, 45, 57, 103};
  std::string found;
  for (std::int64_t k = 1; k <= 6; ++k) {
    const auto seed = dsm::search_escape_seed(k, 200);
    require(seed.has_value(), "k=" + std::to_string(k) + ": no seed up to b=200");
    require(seed->b == expected_b[static_cast<std::size_t>(k - 1)],
            "k=" + std::to_string(k) + ": expected b=" +
                std::to_string(expected_b[static_cast<std::size_t>(k - 1)]) + ", got b=" +
                std::to_string(seed->b));
    found += (k > 1 ? " " : "") + std::to_string(seed->a) + "/" + std::to_string(seed->b);
  }
  detail = "a/b = " + found;
}

void criterion_q4k2(std::string& detail) {
  const auto started = std::chrono::steady_clock::now();
  for (std::int64_t k = 1; k <= 50; ++k) {
    const dsm::VerdictReport v = dsm::verify_q4k2(k, 100000);
    require(v.passed, "k=" + std::to_string(k) + " failed");
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  require(seconds < 60.0, "construction checks exceeded 1 minute");
  detail = "k=1..50, mod-4 invariant over min(period, 1e5) iterates";
}

void criterion_lower_bound(std::string& detail) {
  std::int64_t checked = 0;
  for (std::int64_t q = 3; q <= 2001; q += 2) {
    const std::int64_t bound = dsm::lower_bound_sum(q);
    const std::int64_t ell = dsm::escape_length(q).ell;
    require(bound <= ell, "q=" + std::to_string(q) + ": sum " + std::to_string(bound) +
                              " exceeds l(q)=" + std::to_string(ell));
    ++checked;
  }
  detail = std::to_string(checked) + " odd q up to 2001";
}

void criterion_dwell(std::string& detail) {
  std::int64_t checked = 0;
  for (std::int64_t q = 9; q <= 99; q += 2) {
    for (std::int64_t m = 1; m <= q / 9; ++m) {
      for (std::int64_t s = 0; s < m; ++s) {
        const dsm::DwellReport rep = dsm::measure_dwell(q, m, s);
        require(rep.n_m >= rep.bound,
                "q=" + std::to_string(q) + " m=" + std::to_string(m) + " s=" +
                    std::to_string(s) + ": N=" + std::to_string(rep.n_m) + " < bound " +
                    std::to_string(rep.bound));
        ++checked;
      }
    }
  }
  detail = std::to_string(checked) + " (q, m, s) triples";
}

void criterion_window(std::string& detail) {
  for (const std::int64_t q : {101, 331, 991}) {
    const dsm::VerdictReport v = dsm::verify_window_bound(q);
    require(v.passed, "q=" + std::to_string(q) + " failed");
  }
  detail = "q in {101, 331, 991}";
}

void criterion_period4(std::string& detail) {
  for (std::int64_t k = 1; k <= 25; ++k) {
    const std::int64_t count = dsm::count_period4(k);
    require(count == 2 * k - 1, "k=" + std::to_string(k) + ": expected " +
                                    std::to_string(2 * k - 1) + ", got " +
                                    std::to_string(count));
  }
  detail = "k=1..25";
}

void criterion_oracle_equivalence(std::string& detail) {
  // exact-map cross-check of lattice stepping on random parameter sets
  std::mt19937_64 rng(20240901);
  const auto uniform = [&](std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
  };
  for (int set = 0; set < 50; ++set) {
    const std::int64_t q = uniform(1, 60);
    std::int64_t p = 1;
    do {
      p = uniform(1, 40);
    } while (std::gcd(p, q) != 1);
    const std::int64_t b = uniform(1, 60 / q);
    std::int64_t a = 0;
    if (b > 1) {
      do {
        a = uniform(1, b - 1);
      } while (std::gcd(a, b) != 1);
    }
    const dsm::ReducedParams params = dsm::make_params(p, q, a, b);
    dsm::LatticeState s{uniform(0, params.bq - 1), uniform(0, params.q - 1)};
    const dsm::Rational alpha(params.p, params.q);
    const dsm::Rational y0 = dsm::embed(s, params).y;
    dsm::CylinderPoint pt = dsm::embed(s, params);
    std::int64_t lift = 0;
    for (int n = 0; n < 10000; ++n) {
      const dsm::LatticeStep next = dsm::step_lattice(s, params);
      pt = dsm::step_exact(pt, alpha);
      lift += next.dj;
      s = next.state;
      require(pt.x == dsm::embed(s, params).x,
              "set " + std::to_string(set) + ": x diverged at step " + std::to_string(n));
      require(pt.y == y0 + dsm::Rational(lift),
              "set " + std::to_string(set) + ": y diverged at step " + std::to_string(n));
    }
  }

  // the bottleneck fast path equals the exhaustive decomposition
  for (std::int64_t q = 3; q <= 301; q += 2) {
    const dsm::Decomposition d = dsm::decompose(dsm::make_params(1, q, 0, 1));
    std::int64_t escaping_period = 0;
    for (const dsm::Orbit& o : d.orbits) {
      if (o.cls == dsm::OrbitClass::Escaping) escaping_period = o.period;
    }
    require(dsm::escape_length(q).ell == escaping_period,
            "q=" + std::to_string(q) + ": fast path disagrees with decomposition");
  }
  detail = "50 random systems x 1e4 steps; odd q <= 301";
}

void criterion_property_suites(std::string& detail) {
  require(dsm::verify_symmetry(10000).passed, "symmetry suite failed");
  require(dsm::verify_bands(10000).passed, "band suite failed");

  // partition completeness on every decomposition here
  for (const auto& params :
       {dsm::make_params(1, 31, 0, 1), dsm::make_params(1, 32, 0, 1),
        dsm::make_params(2, 17, 3, 5), dsm::make_params(1, 6, 1, 2)}) {
    const dsm::Decomposition d = dsm::decompose(params);
    std::int64_t covered = 0;
    for (const dsm::Orbit& o : d.orbits) covered += o.period;
    require(covered == params.bq * params.q, "partition incomplete");
  }

  // raster byte-determinism across two renders
  for (const auto mode : {dsm::PortraitMode::PeriodShade, dsm::PortraitMode::EscapeMask}) {
    std::ostringstream first, second;
    dsm::write_pgm(first, dsm::render_portrait(dsm::make_params(1, 31, 0, 1), mode));
    dsm::write_pgm(second, dsm::render_portrait(dsm::make_params(1, 31, 0, 1), mode));
    require(first.str() == second.str(), "raster bytes differ between runs");
  }
  detail = "symmetry 1e4, bands 1e4, partition sums, raster determinism";
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"l(991) = 414639 via the bottleneck fast path, < 1s", criterion_ell_991},
      {"q=992 decomposition: no escaping orbit, max period 6168", criterion_decompose_992},
      {"mean l(q)/q^2 over odd q in [101,499] within [0.38, 0.48]", criterion_mean_ratio},
      {"boundedness sweep q <= 200: 0 escaping even / 1 odd-period escaping odd",
       criterion_boundedness_sweep},
      {"escape-seed table k=1..6: minimal b = {3,13,11,45,57,103}", criterion_seed_table},
      {"q=4k+2 construction escapes with mod-4 invariant, k=1..50", criterion_q4k2},
      {"lower-bound sum <= l(q) for odd q <= 2001", criterion_lower_bound},
      {"dwell bound N_m >= floor((q-1)/2m)-1 exhaustively, q <= 99", criterion_dwell},
      {"window bound: floor(q ln q) steps move less than q", criterion_window},
      {"period-4 census: 2k-1 orbits for k = 1..25", criterion_period4},
      {"oracle equivalence: exact map vs lattice; fast path vs decomposition",
       criterion_oracle_equivalence},
      {"property suites: symmetry, bands, partition sums, raster determinism",
       criterion_property_suites},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto started = std::chrono::steady_clock::now();
    std::string detail;
    std::string verdict = "PASS";
    try {
      criteria[i].body(detail);
    } catch (const Failure& f) {
      verdict = "FAIL";
      detail = f.message;
      ++failures;
    } catch (const std::exception& e) {
      verdict = "FAIL";
      detail = std::string("exception: ") + e.what();
      ++failures;
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    std::printf("[%s] criterion %2zu: %s (%.2fs)%s%s\n", verdict.c_str(), i + 1,
                criteria[i].name.c_str(), seconds, detail.empty() ? "" : " -- ",
                detail.c_str());
    std::fflush(stdout);
  }
  if (failures != 0) {
    std::printf("%d of %zu criteria failed\n", failures, criteria.size());
    return 1;
  }
  std::printf("all %zu criteria passed\n", criteria.size());
  return 0;
}
