// Copyright 2026 The tate-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end. Every subcommand validates its whole configuration
// before computing, writes a self-describing CSV or JSON report, and exits
// with 0 (ok), 2 (usage error) or 3 (data / invariant error).

#ifndef TATELAB_EXPCLI_HPP_
#define TATELAB_EXPCLI_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tatelab/arith.hpp"

namespace tatelab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitData = 3;

/// Environment variable naming the default trace cache directory.
inline constexpr const char* kCacheEnv = "TATE_LAB_CACHE";

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Command {
  trace,
  sato_tate,
  pole_ledger,
  euler_check,
  tate_ff,
  zeta_ff,
  nagao
};

const char* command_name(Command c);

/// Fully resolved and validated experiment parameters.
struct ExperimentConfig {
  Command command = Command::trace;

  // curve (trace, sato-tate, tate-ff, zeta-ff) or surface (nagao)
  i64 A = 1;
  i64 B = 1;
  std::vector<i64> A_poly;
  std::vector<i64> B_poly;
  std::vector<i64> section_x;  // nagao: optional section (Px, Qy)
  std::vector<i64> section_y;
  bool from_section = false;

  u64 X = 0;
  std::vector<u64> exclude;

  // pole-ledger
  unsigned m = 2;
  unsigned i = 2;
  std::vector<std::pair<unsigned, int>> assume;

  // euler-check
  u64 draws = 1000;
  u64 seed = 0;
  u64 q_max = 1000;

  // sato-tate
  unsigned k_max = 3;
  unsigned m_max = 6;

  // tate-ff / zeta-ff
  u64 p = 5;
  std::optional<i64> a;  // trace over F_{p^degree}; computed from (A, B) if unset
  unsigned degree = 1;
  unsigned ext = 1;
  unsigned n_max = 6;
  std::vector<double> s_values;

  // nagao
  u64 budget = 5000;
  std::vector<double> deltas{0.5, 0.25, 0.1};

  // execution; never embedded in reports
  std::string output;
  std::string cache_dir;
  std::string format = "csv";
  unsigned workers = 0;

  /// The keys that shape this command's results, in a fixed order.
  std::vector<std::pair<std::string, std::string>> describe() const;
};

/// Parses and validates argv-style arguments (without the program name).
/// A "--config FILE" of key=value lines supplies any option not given as a
/// flag. Throws UsageError.
ExperimentConfig parse_args(const std::vector<std::string>& args);

/// Runs one validated experiment; writes the report to config.output or
/// `out`, diagnostics to `err`. Returns the exit status.
int execute(const ExperimentConfig& config, std::ostream& out,
            std::ostream& err);

/// parse_args + execute, mapping failures to exit codes and a single
/// "tate-lab: error[<kind>]: <message>" line on `err`.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace tatelab::cli

#endif  // TATELAB_EXPCLI_HPP_
