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

// Grünwald–Letnikov discretization of commensurate fractional-order systems
//
//   D^q y(t) = f(y(t), t, u(t)),   0 < q <= 1
//
// on the fixed grid t_k = k h:
//
//   explicit:  y_k = f(y_{k-1}, t_{k-1}, u_{k-1}) h^q - sum_{j=1}^{m} c_j y_{k-j}
//   implicit:  y_k = f(y_k,     t_k,     u_k)     h^q - sum_{j=1}^{m} c_j y_{k-j}
//
// where c_0 = 1, c_j = (1 - (1 + q) / j) c_{j-1}, and m = k (full memory)
// or m = min(k, L) (short-memory window of L steps). At q = 1 the two forms
// are forward and backward Euler. The implicit form is solved by Newton
// iteration with a finite-difference Jacobian.

#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fracsync {

/// Commensurate derivative order q, restricted to (0, 1].
class FractionalOrder {
 public:
  /// Throws std::invalid_argument when q is not in (0, 1].
  explicit FractionalOrder(double q);

  [[nodiscard]] double value() const noexcept { return q_; }

  friend bool operator==(const FractionalOrder&, const FractionalOrder&) = default;

 private:
  double q_;
};

struct GLCoeffTable {
  FractionalOrder order;
  std::vector<double> coeffs;  // c_0 .. c_N

  [[nodiscard]] std::size_t size() const noexcept { return coeffs.size(); }
  [[nodiscard]] double operator[](std::size_t j) const { return coeffs[j]; }
};

/// Returns c_0 .. c_n.
[[nodiscard]] GLCoeffTable gl_coeffs(FractionalOrder order, std::size_t n);

/// Full memory, or a short-memory window of the last `window` steps.
class MemoryPolicy {
 public:
  static MemoryPolicy full() noexcept { return MemoryPolicy{0}; }
  /// Throws std::invalid_argument for window == 0.
  static MemoryPolicy truncated(std::size_t window);

  [[nodiscard]] bool is_full() const noexcept { return window_ == 0; }
  /// Retained history length; only meaningful when !is_full().
  [[nodiscard]] std::size_t window() const noexcept { return window_; }
  /// Number of history terms entering the sum at step k.
  [[nodiscard]] std::size_t terms(std::size_t k) const noexcept {
    return is_full() || k < window_ ? k : window_;
  }

  friend bool operator==(const MemoryPolicy&, const MemoryPolicy&) = default;

 private:
  explicit MemoryPolicy(std::size_t window) noexcept : window_(window) {}
  std::size_t window_;
};

using StateVector = std::vector<double>;

/// Right-hand side f(state, t, control). `control` is either empty or has the
/// state's dimension.
using StepFunction = std::function<StateVector(std::span<const double> state, double t,
                                               std::span<const double> control)>;

/// Supplies the control for grid index k from the state at that index. The
/// explicit scheme queries index k - 1 to produce y_k; the implicit scheme
/// queries index k at every Newton iterate.
using ControlProvider =
    std::function<StateVector(std::size_t k, double t, std::span<const double> state)>;

enum class GLScheme { explicit_lagged, implicit };

[[nodiscard]] std::string_view to_string(GLScheme s) noexcept;

struct NewtonOptions {
  double rel_tol = 1e-13;
  int max_iterations = 50;
};

/// Raised when a state update produces NaN or infinity.
class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(std::size_t step, const std::string& what)
      : std::runtime_error(what), step_(step) {}
  /// Index k of the state that could not be produced.
  [[nodiscard]] std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

/// One explicit GL step producing y_k, k = history.size().
///
/// Throws std::invalid_argument on empty history, h <= 0, mismatched
/// dimensions, or a coefficient table shorter than the retained history + 1.
[[nodiscard]] StateVector gl_step(const StepFunction& f, std::span<const StateVector> history,
                                  double t_k, double h, const GLCoeffTable& table,
                                  const MemoryPolicy& policy, std::span<const double> control);

/// One implicit GL step producing y_k with the control u_k = control(k, t_k,
/// y_k) re-evaluated at every iterate (null for no control). Throws
/// DivergenceError when Newton iteration fails or produces a non-finite
/// value, std::invalid_argument on the same input errors as gl_step.
[[nodiscard]] StateVector gl_step_implicit(const StepFunction& f,
                                           std::span<const StateVector> history, double t_k,
                                           double h, const GLCoeffTable& table,
                                           const MemoryPolicy& policy,
                                           const ControlProvider& control,
                                           const NewtonOptions& newton = {});

/// Number of grid steps floor(t_end / h), tolerant to round-off in the ratio.
[[nodiscard]] std::size_t grid_steps(double t_end, double h);

struct Trajectory {
  std::vector<double> times;
  std::vector<StateVector> states;
};

/// Incremental GL integrator owning the history. Used directly by harnesses
/// that need to inspect each state before the next control is computed.
class GLIntegrator {
 public:
  /// `max_steps` sizes the coefficient table (max_steps + 1 entries).
  GLIntegrator(StepFunction f, StateVector y0, double h, FractionalOrder order,
               MemoryPolicy policy, std::size_t max_steps,
               GLScheme scheme = GLScheme::explicit_lagged);

  /// Advances one step with the control produced by `control` (null for
  /// none) and returns the new state. Throws DivergenceError on a non-finite
  /// component or a failed implicit solve; the history is left unchanged in
  /// that case.
  const StateVector& step(const ControlProvider& control = nullptr);

  [[nodiscard]] std::size_t steps_taken() const noexcept { return history_.size() - 1; }
  [[nodiscard]] double time() const noexcept;
  [[nodiscard]] const StateVector& state() const noexcept { return history_.back(); }
  [[nodiscard]] const std::vector<StateVector>& history() const noexcept { return history_; }
  [[nodiscard]] const GLCoeffTable& table() const noexcept { return table_; }
  [[nodiscard]] GLScheme scheme() const noexcept { return scheme_; }

 private:
  StepFunction f_;
  double h_;
  MemoryPolicy policy_;
  GLScheme scheme_;
  GLCoeffTable table_;
  std::vector<StateVector> history_;
};

/// Integrates on t_k = k h, k = 0..floor(t_end / h). A null control provider
/// means no control input. Throws DivergenceError on non-finite states.
[[nodiscard]] Trajectory integrate(const StepFunction& f, StateVector y0, double t_end, double h,
                                   FractionalOrder order, MemoryPolicy policy = MemoryPolicy::full(),
                                   const ControlProvider& control = nullptr,
                                   GLScheme scheme = GLScheme::explicit_lagged);

}  // namespace fracsync
