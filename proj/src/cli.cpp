#include "dsm/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "dsm/analytics.hpp"
#include "dsm/errors.hpp"
#include "dsm/io.hpp"
#include "dsm/theory.hpp"

namespace dsm {

namespace {

constexpr std::int64_t kMinBudget = 1'000'000;

void validate_config(const CliConfig& cfg) {
  if (cfg.memory_budget_states < kMinBudget) {
    throw InvalidArgument("config: memory_budget_states must be at least 1000000");
  }
  if (cfg.threads < 0) {
    throw InvalidArgument("config: threads must be nonnegative");
  }
}

std::string trim(const std::string& s) {
  const auto from = s.find_first_not_of(" \t");
  if (from == std::string::npos) return "";
  const auto to = s.find_last_not_of(" \t");
  return s.substr(from, to - from + 1);
}

std::filesystem::path resolve_output(const CliConfig& cfg, const std::string& out) {
  std::filesystem::path p(out);
  if (p.is_relative()) p = std::filesystem::path(cfg.output_dir) / p;
  return p;
}

std::ofstream open_output(const std::filesystem::path& path, std::ios::openmode mode) {
  std::ofstream file(path, mode);
  if (!file) throw InvalidArgument("cannot open output file: " + path.string());
  return file;
}

struct ParamFlags {
  std::int64_t p = 1;
  std::int64_t q = 0;
  std::int64_t a = 0;
  std::int64_t b = 1;

  void attach(CLI::App* cmd) {
    cmd->add_option("--p", p, "Twist numerator (alpha = p/q)")->capture_default_str();
    cmd->add_option("--q", q, "Twist denominator (alpha = p/q)")->required();
    cmd->add_option("--a", a, "Start-level numerator (y0 = a/b)")->capture_default_str();
    cmd->add_option("--b", b, "Start-level denominator (y0 = a/b)")->capture_default_str();
  }
  ReducedParams make() const { return make_params(p, q, a, b); }
};

void print_verdict_summary(std::ostream& err, const VerdictReport& v) {
  err << "suite " << v.suite << ": " << (v.passed ? "PASS" : "FAIL") << " (" << v.cases.size()
      << " cases)\n";
}

}  // namespace

CliConfig load_config_file(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw InvalidArgument("cannot read config file: " + path);
  CliConfig cfg;
  std::string line;
  while (std::getline(file, line)) {
    const std::string entry = trim(line);
    if (entry.empty() || entry.front() == '#') continue;
    const auto eq = entry.find('=');
    if (eq == std::string::npos) {
      throw InvalidArgument("config: expected key=value, got '" + entry + "'");
    }
    const std::string key = trim(entry.substr(0, eq));
    const std::string value = trim(entry.substr(eq + 1));
    try {
      if (key == "memory_budget_states") {
        cfg.memory_budget_states = std::stoll(value);
      } else if (key == "threads") {
        cfg.threads = std::stoi(value);
      } else if (key == "output_dir") {
        cfg.output_dir = value;
      } else {
        throw InvalidArgument("config: unknown key '" + key + "'");
      }
    } catch (const std::logic_error&) {
      throw InvalidArgument("config: malformed value for '" + key + "'");
    }
  }
  validate_config(cfg);
  return cfg;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{
      "dsm: exact simulation and verification laboratory for the sign-kick\n"
      "(discontinuous) standard map on the cylinder and its reduced integer\n"
      "lattice Z_bq x Z_q, for twist alpha = p/q and start level y0 = a/b."};
  app.require_subcommand(1);

  std::string config_path;
  CliConfig cfg;
  auto* opt_config =
      app.add_option("--config", config_path, "key=value config file (env: DSM_CONFIG)");
  auto* opt_budget = app.add_option("--memory-budget", cfg.memory_budget_states,
                                    "State budget for full decompositions")
                         ->capture_default_str();
  auto* opt_threads =
      app.add_option("--threads", cfg.threads, "Worker threads (0 = auto)")
          ->capture_default_str();
  auto* opt_outdir =
      app.add_option("--output-dir", cfg.output_dir, "Directory for relative output paths")
          ->capture_default_str();

  // orbit
  auto* cmd_orbit = app.add_subcommand(
      "orbit",
      "Trace one lattice orbit and print its period, winding number and class.\n"
      "Bounded orbits have winding 0; escaping orbits wind, and their lift in y\n"
      "is unbounded on the cylinder. With --exact every step is cross-checked\n"
      "against the exact rational cylinder map.");
  ParamFlags orbit_params;
  orbit_params.attach(cmd_orbit);
  std::int64_t orbit_r = 0, orbit_j = 0;
  bool orbit_exact = false;
  cmd_orbit->add_option("--r", orbit_r, "Start r in [0, bq)")->required();
  cmd_orbit->add_option("--j", orbit_j, "Start j in [0, q)")->required();
  cmd_orbit->add_flag("--exact", orbit_exact, "Cross-check against the exact cylinder map");

  // decompose
  auto* cmd_decompose = app.add_subcommand(
      "decompose",
      "Partition the full torus Z_bq x Z_q into periodic orbits and print the\n"
      "summary CSV (r,j,orbit_id,period,winding). Periods always sum to bq*q;\n"
      "for even bq (with solvable bottleneck congruence) no orbit escapes, for\n"
      "odd bq exactly one does.");
  ParamFlags decompose_params;
  decompose_params.attach(cmd_decompose);

  // ell
  auto* cmd_ell = app.add_subcommand(
      "ell",
      "Escape length l(q) for twist 1/q, y0 = 0, odd q: the period of the unique\n"
      "escaping (odd-length) orbit, traced from the bottleneck crossing point\n"
      "((q-1)/2, (q-1)/2) without a full decomposition. Prints CSV q,ell,ratio\n"
      "with ratio = l(q)/q^2; the mean ratio sits near 0.43.");
  std::int64_t ell_q = 0, ell_from = 0, ell_to = 0;
  auto* opt_ell_q = cmd_ell->add_option("--q", ell_q, "Single odd q");
  auto* opt_ell_from = cmd_ell->add_option("--q-from", ell_from, "Sweep start (inclusive)");
  auto* opt_ell_to = cmd_ell->add_option("--q-to", ell_to, "Sweep end (inclusive)");
  opt_ell_q->excludes(opt_ell_from)->excludes(opt_ell_to);
  opt_ell_from->needs(opt_ell_to);
  opt_ell_to->needs(opt_ell_from);

  // search
  auto* cmd_search = app.add_subcommand(
      "search",
      "Find the smallest start-level denominator b (then numerator a, coprime,\n"
      "ascending) whose lattice for twist 1/(4k) contains an escaping orbit.\n"
      "With y0 = 0 and q = 4k every orbit is bounded, so escape requires a\n"
      "fractional start level.");
  std::int64_t search_k = 0, search_b_max = 0;
  cmd_search->add_option("--k", search_k, "q = 4k")->required();
  cmd_search->add_option("--b-max", search_b_max, "Largest denominator to try")->required();

  // verify
  auto* cmd_verify = app.add_subcommand(
      "verify",
      "Run a verification suite and print its verdict as JSON\n"
      "({suite, params, passed, cases}). Suites:\n"
      "  symmetry    f(pt) + f((1,0)-pt) = (1,0): point symmetry through (1/2,0)\n"
      "  bands       floor(bq*x) classes are preserved by the map\n"
      "  bottleneck  even bq: all orbits bounded; odd bq: exactly one escaping\n"
      "              class, crossing the bottleneck level only at r=(bq-1)/2\n"
      "  q4k2        q=4k+2, y0=1/2: the orbit of (4k-1, 2k+1) escapes and obeys\n"
      "              r_m + (m mod 2) = 3 (mod 4)\n"
      "  dwell       near the bottleneck an orbit dwells >= floor((q-1)/2m)-1\n"
      "              steps in each two-level belt\n"
      "  two-rise    after two consecutive rises, r2 lands in\n"
      "              [(q-1)/2, (q-1)/2+m-1]\n"
      "  window      any floor(q ln q) consecutive steps of the escaping orbit\n"
      "              move less than q vertically\n"
      "  period4     q=4k has exactly 2k-1 orbits of period 4\n"
      "  lower-bound sum_{k<=q/9} (floor((q-1)/2k)-1) <= l(q)\n"
      "  all         every suite above at its default range");
  std::string verify_suite;
  std::int64_t verify_q_max = 0, verify_k_max = 0;
  {
    std::vector<std::string> choices = verify_suite_names();
    choices.emplace_back("all");
    cmd_verify->add_option("--suite", verify_suite, "Suite name")
        ->required()
        ->check(CLI::IsMember(choices));
  }
  cmd_verify->add_option("--q-max", verify_q_max, "Override the suite's q range");
  cmd_verify->add_option("--k-max", verify_k_max, "Override the suite's k range");

  // render
  auto* cmd_render = app.add_subcommand(
      "render",
      "Render the phase portrait as binary 16-bit PGM (P5, maxval 65535,\n"
      "big-endian), bq wide and q tall. Mode 'period' shades each cell by the\n"
      "dense rank of its orbit period, shorter periods lighter; mode 'escape'\n"
      "lights exactly the escaping orbits' cells.");
  ParamFlags render_params;
  render_params.attach(cmd_render);
  std::string render_mode, render_out;
  cmd_render->add_option("--mode", render_mode, "period | escape")
      ->required()
      ->check(CLI::IsMember({"period", "escape"}));
  cmd_render->add_option("--out", render_out, "Output PGM path")->required();

  // young
  auto* cmd_young = app.add_subcommand(
      "young",
      "Export the partition of bq*q by orbit periods as a Young-diagram CSV\n"
      "(q,part_index,scaled_part_num,scaled_part_den), parts scaled by 1/q and\n"
      "descending. With --bounded-only the escaping orbits are excluded, the\n"
      "variant whose diagram tracks the even-q diagrams.");
  ParamFlags young_params;
  young_params.attach(cmd_young);
  bool young_bounded_only = false;
  std::string young_out;
  cmd_young->add_flag("--bounded-only", young_bounded_only, "Drop escaping orbits");
  cmd_young->add_option("--out", young_out, "Output CSV path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    // Flags override config-file values.
    if (config_path.empty() && opt_config->count() == 0) {
      if (const char* env = std::getenv("DSM_CONFIG"); env != nullptr && *env != '\0') {
        config_path = env;
      }
    }
    if (!config_path.empty()) {
      CliConfig from_file = load_config_file(config_path);
      if (opt_budget->count() == 0) cfg.memory_budget_states = from_file.memory_budget_states;
      if (opt_threads->count() == 0) cfg.threads = from_file.threads;
      if (opt_outdir->count() == 0) cfg.output_dir = from_file.output_dir;
    }
    validate_config(cfg);

    if (app.got_subcommand(cmd_orbit)) {
      const ReducedParams params = orbit_params.make();
      const LatticeState start{orbit_r, orbit_j};
      const Orbit orbit = trace_orbit(start, params);
      if (orbit_exact) {
        const Rational alpha(params.p, params.q);
        const Rational y0 = embed(start, params).y;
        CylinderPoint pt = embed(start, params);
        LatticeState s = start;
        std::int64_t lift = 0;
        for (std::int64_t i = 0; i < orbit.period; ++i) {
          const LatticeStep ls = step_lattice(s, params);
          pt = step_exact(pt, alpha);
          lift += ls.dj;
          s = ls.state;
          if (pt.x != embed(s, params).x || pt.y != y0 + Rational(lift)) {
            throw InvariantViolation("exact cross-check diverged at step " +
                                     std::to_string(i + 1));
          }
        }
        if (!(s == start) || lift != orbit.winding * params.q) {
          throw InvariantViolation("exact cross-check did not close the orbit");
        }
      }
      out << "period=" << orbit.period << " winding=" << orbit.winding << " class="
          << (orbit.cls == OrbitClass::Escaping ? "escaping" : "bounded") << "\n";
      return 0;
    }

    if (app.got_subcommand(cmd_decompose)) {
      const Decomposition d =
          decompose(decompose_params.make(), cfg.memory_budget_states);
      write_decomposition_csv(out, d);
      return 0;
    }

    if (app.got_subcommand(cmd_ell)) {
      if (opt_ell_q->count() == 0 && opt_ell_from->count() == 0) {
        throw InvalidArgument("ell: give --q or --q-from/--q-to");
      }
      SweepResult sweep;
      if (opt_ell_q->count() > 0) {
        sweep.records.push_back(escape_length(ell_q));
        compute_ratio_stats(sweep);
      } else {
        sweep = sweep_escape_lengths(ell_from, ell_to, cfg.threads);
      }
      write_sweep_csv(out, sweep);
      err << "count=" << sweep.records.size() << " mean_ratio=" << to_decimal17(sweep.mean_ratio)
          << " min_ratio=" << to_decimal17(sweep.min_ratio)
          << " max_ratio=" << to_decimal17(sweep.max_ratio) << "\n";
      return 0;
    }

    if (app.got_subcommand(cmd_search)) {
      const auto found =
          search_escape_seed(search_k, search_b_max, std::nullopt, cfg.memory_budget_states);
      if (found) {
        out << "k=" << search_k << " b=" << found->b << " a=" << found->a << "\n";
      } else {
        out << "k=" << search_k << " not-found b_max=" << search_b_max << "\n";
      }
      return 0;
    }

    if (app.got_subcommand(cmd_verify)) {
      std::vector<std::string> suites;
      if (verify_suite == "all") {
        suites = verify_suite_names();
      } else {
        suites.push_back(verify_suite);
      }
      bool all_passed = true;
      nlohmann::json doc = nlohmann::json::array();
      for (const std::string& name : suites) {
        const VerdictReport verdict = run_verify_suite(name, verify_q_max, verify_k_max,
                                                       cfg.threads, cfg.memory_budget_states);
        all_passed = all_passed && verdict.passed;
        print_verdict_summary(err, verdict);
        doc.push_back(verdict_to_json(verdict));
      }
      if (suites.size() == 1) {
        out << doc.front().dump(1) << "\n";
      } else {
        out << doc.dump(1) << "\n";
      }
      return all_passed ? 0 : 1;
    }

    if (app.got_subcommand(cmd_render)) {
      const PortraitMode mode =
          render_mode == "period" ? PortraitMode::PeriodShade : PortraitMode::EscapeMask;
      const PortraitRaster raster =
          render_portrait(render_params.make(), mode, cfg.memory_budget_states);
      const auto path = resolve_output(cfg, render_out);
      auto file = open_output(path, std::ios::binary);
      write_pgm(file, raster);
      err << "wrote " << path.string() << " (" << raster.width << "x" << raster.height
          << ")\n";
      return 0;
    }

    if (app.got_subcommand(cmd_young)) {
      const YoungDiagram diagram =
          young_diagram(young_params.make(), young_bounded_only, cfg.memory_budget_states);
      const auto path = resolve_output(cfg, young_out);
      auto file = open_output(path, std::ios::out);
      write_young_csv(file, diagram);
      err << "wrote " << path.string() << " (" << diagram.parts.size() << " parts)\n";
      return 0;
    }

    throw InvalidArgument("no subcommand given");
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const HypothesisViolation& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const ResourceLimit& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.push_back("dsm");
  for (const std::string& arg : args) argv.push_back(arg.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace dsm
