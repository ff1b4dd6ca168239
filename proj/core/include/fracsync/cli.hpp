// Copyright 2026 The fracsync Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <complex>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "fracsync/config.hpp"
#include "fracsync/sim_harness.hpp"

namespace fracsync {

enum ExitCode : int {
  kExitOk = 0,
  kExitConfigError = 1,
  kExitDiverged = 2,
  kExitUnstable = 3,
};

/// Summary printed by the `sync` and `stability` commands.
struct RunReport {
  SimConfig config;
  std::vector<std::complex<double>> eigenvalues;
  StabilityVerdict verdict;
  std::optional<ConvergenceMetrics> metrics;
  bool diverged = false;
  std::optional<std::size_t> diverged_at;
  std::vector<std::string> outputs;
};

[[nodiscard]] std::string render_report(const RunReport& report);

/// Entry point of the `fracsync` tool. `args` includes the program name.
/// Subcommands: coeffs, attractor, sync, stability.
int run_command(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace fracsync
