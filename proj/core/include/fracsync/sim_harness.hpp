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

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "fracsync/chen_system.hpp"
#include "fracsync/gl_solver.hpp"
#include "fracsync/mhs_controller.hpp"

namespace fracsync {

/// Everything needed to reproduce one drive/response experiment. Defaults
/// are the reference experiment.
struct SimConfig {
  SystemParams params{};
  FractionalOrder order{0.95};
  double step = 0.005;
  double t_end = 10.0;
  HybridScheme scheme{};
  double lambda = 1.0;
  AllocationCase allocation = AllocationCase::split_equally;
  MemoryPolicy memory = MemoryPolicy::full();
  GLScheme solver = GLScheme::implicit;
  State3 x0{-10.0, 0.001, 37.0};
  State3 y0{37.0, -5.0, 0.0};
  State3 z0{10.0, -5.0, 15.0};
  State3 w0{-5.0, 0.5, 25.0};
  bool controls_enabled = true;
  double tol = 1e-2;

  friend bool operator==(const SimConfig&, const SimConfig&) = default;
};

/// Throws std::invalid_argument naming the violated constraint.
void validate(const SimConfig& cfg);

struct ConvergenceMetrics {
  double tol = 0.0;
  std::array<std::optional<double>, 3> settle_time;
  /// max |e_i| over the settled tail; absent when the component never settles.
  std::array<std::optional<double>, 3> max_after_settle;
  bool converged = false;
};

/// Settle time of component i: earliest grid time t_k with |e_i(t_j)| < tol
/// for every j >= k. Throws on tol <= 0, empty series or length mismatch.
[[nodiscard]] ConvergenceMetrics convergence_metrics(std::span<const Eigen::Vector3d> errors,
                                                     std::span<const double> grid, double tol);

struct SimResult {
  std::vector<double> time;
  std::vector<State3> x, y, z, w;
  std::vector<Control3> uz, uw;  // (u1..u3), (u4..u6) computed from the states at the same index
  std::vector<ErrorState> e;
  ConvergenceMetrics metrics;
  bool diverged = false;
  /// Index of the state that turned non-finite, when diverged.
  std::optional<std::size_t> diverged_at;

  [[nodiscard]] std::size_t size() const noexcept { return time.size(); }
};

/// Integrates x, y (uncontrolled) and z, w (controlled) on one grid. With the
/// implicit solver the controls are part of the step equation, so u_k is a
/// function of the states at index k; the explicit solver applies u_k to
/// produce index k + 1. A non-finite state or failed solve stops the run and
/// returns the series up to the last good step.
[[nodiscard]] SimResult run_sync(const SimConfig& cfg);

/// Independent configurations run concurrently; result i belongs to cfgs[i].
[[nodiscard]] std::vector<SimResult> run_batch(std::span<const SimConfig> cfgs,
                                               unsigned max_threads = 0);

/// Single uncontrolled Chen run for phase-portrait data.
[[nodiscard]] Trajectory run_attractor(const SystemParams& params, FractionalOrder order,
                                       const State3& y0, double h, double t_end,
                                       MemoryPolicy memory = MemoryPolicy::full(),
                                       GLScheme scheme = GLScheme::explicit_lagged);

}  // namespace fracsync
