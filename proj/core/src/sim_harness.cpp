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

#include "fracsync/sim_harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace fracsync {

namespace {

State3 block(std::span<const double> s, std::size_t i) {
  return {s[3 * i], s[3 * i + 1], s[3 * i + 2]};
}

void put(StateVector& out, std::size_t i, const State3& v) {
  out[3 * i] = v[0];
  out[3 * i + 1] = v[1];
  out[3 * i + 2] = v[2];
}

bool finite3(const State3& v) { return v.allFinite(); }

}  // namespace

void validate(const SimConfig& cfg) {
  validate(cfg.params);
  validate(cfg.scheme);
  if (!(cfg.step > 0.0) || !std::isfinite(cfg.step)) {
    throw std::invalid_argument("step must be positive");
  }
  if (!std::isfinite(cfg.t_end) || !(cfg.t_end >= cfg.step)) {
    throw std::invalid_argument("t_end must be at least one step");
  }
  if (!std::isfinite(cfg.lambda)) throw std::invalid_argument("lambda must be finite");
  if (!(cfg.tol > 0.0)) throw std::invalid_argument("tol must be positive");
  for (const State3* s : {&cfg.x0, &cfg.y0, &cfg.z0, &cfg.w0}) {
    if (!finite3(*s)) throw std::invalid_argument("initial states must be finite");
  }
}

ConvergenceMetrics convergence_metrics(std::span<const Eigen::Vector3d> errors,
                                       std::span<const double> grid, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("convergence_metrics: tol must be positive");
  if (errors.empty()) throw std::invalid_argument("convergence_metrics: empty error series");
  if (errors.size() != grid.size()) {
    throw std::invalid_argument("convergence_metrics: error series and grid differ in length");
  }

  ConvergenceMetrics m;
  m.tol = tol;
  m.converged = true;
  for (int i = 0; i < 3; ++i) {
    // Walk backwards while the tail stays below tol.
    std::size_t first = errors.size();
    double tail_max = 0.0;
    while (first > 0 && std::abs(errors[first - 1][i]) < tol) {
      --first;
      tail_max = std::max(tail_max, std::abs(errors[first][i]));
    }
    if (first < errors.size()) {
      m.settle_time[i] = grid[first];
      m.max_after_settle[i] = tail_max;
    } else {
      m.converged = false;
    }
  }
  return m;
}

SimResult run_sync(const SimConfig& cfg) {
  validate(cfg);
  const std::size_t n = grid_steps(cfg.t_end, cfg.step);
  const GainSpec gains = gain_matrix(cfg.params, cfg.lambda);
  const SystemParams p = cfg.params;

  // Combined state (x, y, z, w); the control vector carries zeros for the drives.
  StepFunction rhs = [p](std::span<const double> s, double, std::span<const double> u) {
    StateVector out(12);
    const State3 zero = State3::Zero();
    for (std::size_t i = 0; i < 4; ++i) {
      const State3 ui = u.empty() ? zero : block(u, i);
      put(out, i, chen_rhs(block(s, i), p, ui));
    }
    return out;
  };

  StateVector y0(12);
  put(y0, 0, cfg.x0);
  put(y0, 1, cfg.y0);
  put(y0, 2, cfg.z0);
  put(y0, 3, cfg.w0);
  GLIntegrator integrator(rhs, std::move(y0), cfg.step, cfg.order, cfg.memory, n, cfg.solver);

  auto controls_at = [&](std::span<const double> s) {
    if (!cfg.controls_enabled) return ResponseControls{Control3::Zero(), Control3::Zero()};
    return compute_controls(block(s, 0), block(s, 1), block(s, 2), block(s, 3), p, cfg.scheme,
                            gains, cfg.allocation);
  };
  ControlProvider provider;
  if (cfg.controls_enabled) {
    provider = [&](std::size_t, double, std::span<const double> s) {
      const ResponseControls u = controls_at(s);
      StateVector out(12, 0.0);
      put(out, 2, u.uz);
      put(out, 3, u.uw);
      return out;
    };
  }

  SimResult r;
  for (auto* v : {&r.x, &r.y, &r.z, &r.w}) v->reserve(n + 1);
  r.uz.reserve(n + 1);
  r.uw.reserve(n + 1);
  r.e.reserve(n + 1);
  r.time.reserve(n + 1);

  for (std::size_t k = 0;; ++k) {
    const StateVector& s = integrator.state();
    const State3 x = block(s, 0), y = block(s, 1), z = block(s, 2), w = block(s, 3);
    const ResponseControls u = controls_at(s);
    r.time.push_back(static_cast<double>(k) * cfg.step);
    r.x.push_back(x);
    r.y.push_back(y);
    r.z.push_back(z);
    r.w.push_back(w);
    r.uz.push_back(u.uz);
    r.uw.push_back(u.uw);
    r.e.push_back(error_state(x, y, z, w, cfg.scheme));
    if (k == n) break;

    if (!u.uz.allFinite() || !u.uw.allFinite()) {
      r.diverged = true;
      r.diverged_at = k + 1;
      break;
    }
    try {
      integrator.step(provider);
    } catch (const DivergenceError& err) {
      r.diverged = true;
      r.diverged_at = err.step();
      break;
    }
  }

  r.metrics = convergence_metrics(r.e, r.time, cfg.tol);
  if (r.diverged) r.metrics.converged = false;
  return r;
}

std::vector<SimResult> run_batch(std::span<const SimConfig> cfgs, unsigned max_threads) {
  std::vector<SimResult> results(cfgs.size());
  if (cfgs.empty()) return results;
  unsigned workers = max_threads != 0 ? max_threads : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(cfgs.size()));

  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(cfgs.size());
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned t = 0; t < workers; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < cfgs.size(); i = next++) {
          try {
            results[i] = run_sync(cfgs[i]);
          } catch (...) {
            errors[i] = std::current_exception();
          }
        }
      });
    }
  }
  for (const auto& err : errors) {
    if (err) std::rethrow_exception(err);
  }
  return results;
}

Trajectory run_attractor(const SystemParams& params, FractionalOrder order, const State3& y0,
                         double h, double t_end, MemoryPolicy memory, GLScheme scheme) {
  validate(params);
  StepFunction rhs = [params](std::span<const double> s, double, std::span<const double>) {
    const State3 d = chen_rhs(block(s, 0), params);
    return StateVector{d[0], d[1], d[2]};
  };
  return integrate(rhs, {y0[0], y0[1], y0[2]}, t_end, h, order, memory, nullptr, scheme);
}

}  // namespace fracsync
