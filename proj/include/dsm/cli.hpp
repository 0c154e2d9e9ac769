#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "dsm/orbit.hpp"

namespace dsm {

/// Runtime limits and output location, overridable per flag. A key=value
/// config file (keys: memory_budget_states, output_dir, threads) may be
/// named via --config or the DSM_CONFIG environment variable; flags win
/// over config values.
struct CliConfig {
  std::int64_t memory_budget_states = kDefaultStateBudget;
  std::string output_dir = ".";
  int threads = 0;  // 0 = one worker per hardware thread
};

/// Parses a key=value config file. Unknown keys, short budgets
/// (< 10^6 states) and negative thread counts are rejected.
CliConfig load_config_file(const std::string& path);

/// Command-line front end. Exit codes: 0 success, 1 verification
/// failure, 2 usage error, 3 resource error. Diagnostics and progress go
/// to err; results go to out or to files.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Convenience overload for tests: args without the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dsm
