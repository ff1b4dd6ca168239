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

#include "fracsync/gl_solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include <Eigen/Dense>

namespace fracsync {

namespace {

bool all_finite(std::span<const double> v) {
  for (double x : v) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

}  // namespace

FractionalOrder::FractionalOrder(double q) : q_(q) {
  if (!(q > 0.0 && q <= 1.0)) {
    std::ostringstream msg;
    msg << "fractional order must lie in (0, 1], got " << q;
    throw std::invalid_argument(msg.str());
  }
}

GLCoeffTable gl_coeffs(FractionalOrder order, std::size_t n) {
  GLCoeffTable table{order, {}};
  table.coeffs.resize(n + 1);
  table.coeffs[0] = 1.0;
  const double qp1 = 1.0 + order.value();
  for (std::size_t j = 1; j <= n; ++j) {
    table.coeffs[j] = (1.0 - qp1 / static_cast<double>(j)) * table.coeffs[j - 1];
  }
  return table;
}

MemoryPolicy MemoryPolicy::truncated(std::size_t window) {
  if (window == 0) throw std::invalid_argument("memory window must be at least 1 step");
  return MemoryPolicy{window};
}

std::string_view to_string(GLScheme s) noexcept {
  return s == GLScheme::implicit ? "implicit" : "explicit";
}

namespace {

// Validates the step inputs and returns sum_{j=1}^{m} c_j y_{k-j}.
StateVector memory_term(std::span<const StateVector> history, double h, const GLCoeffTable& table,
                        const MemoryPolicy& policy) {
  if (history.empty()) throw std::invalid_argument("gl_step: history is empty");
  if (!(h > 0.0)) throw std::invalid_argument("gl_step: step size must be positive");

  const std::size_t k = history.size();
  const std::size_t dim = history.front().size();
  for (const auto& y : history) {
    if (y.size() != dim) throw std::invalid_argument("gl_step: history entries differ in dimension");
  }
  const std::size_t m = policy.terms(k);
  if (table.size() <= m) {
    std::ostringstream msg;
    msg << "gl_step: coefficient table has " << table.size() << " entries, need " << m + 1;
    throw std::invalid_argument(msg.str());
  }

  StateVector mem(dim, 0.0);
  for (std::size_t j = 1; j <= m; ++j) {
    const double cj = table[j];
    const StateVector& past = history[k - j];
    for (std::size_t i = 0; i < dim; ++i) mem[i] += cj * past[i];
  }
  return mem;
}

void check_control(std::span<const double> control, std::size_t dim) {
  if (!control.empty() && control.size() != dim) {
    throw std::invalid_argument("gl_step: control dimension does not match state dimension");
  }
}

void check_output(const StateVector& out, std::size_t dim) {
  if (out.size() != dim) {
    throw std::invalid_argument("gl_step: right-hand side dimension does not match state dimension");
  }
}

}  // namespace

StateVector gl_step(const StepFunction& f, std::span<const StateVector> history, double t_k,
                    double h, const GLCoeffTable& table, const MemoryPolicy& policy,
                    std::span<const double> control) {
  const StateVector mem = memory_term(history, h, table, policy);
  const std::size_t dim = mem.size();
  check_control(control, dim);

  StateVector next = f(history.back(), t_k - h, control);
  check_output(next, dim);
  const double hq = std::pow(h, table.order.value());
  for (std::size_t i = 0; i < dim; ++i) next[i] = next[i] * hq - mem[i];
  return next;
}

StateVector gl_step_implicit(const StepFunction& f, std::span<const StateVector> history,
                             double t_k, double h, const GLCoeffTable& table,
                             const MemoryPolicy& policy, const ControlProvider& control,
                             const NewtonOptions& newton) {
  const StateVector mem = memory_term(history, h, table, policy);
  const std::size_t dim = mem.size();
  const std::size_t k = history.size();
  const double hq = std::pow(h, table.order.value());

  auto rhs = [&](const StateVector& v) {
    StateVector u;
    if (control) {
      u = control(k, t_k, v);
      check_control(u, dim);
    }
    StateVector out = f(v, t_k, u);
    check_output(out, dim);
    return out;
  };
  auto fail = [k](const std::string& why) {
    std::ostringstream msg;
    msg << "implicit step k=" << k << ": " << why;
    return DivergenceError(k, msg.str());
  };

  using Vec = Eigen::VectorXd;
  using Mat = Eigen::MatrixXd;
  StateVector v = history.back();
  Mat jac(dim, dim);
  Vec residual(dim);
  for (int iter = 0; iter < newton.max_iterations; ++iter) {
    const StateVector g = rhs(v);
    for (std::size_t i = 0; i < dim; ++i) residual[i] = v[i] - g[i] * hq + mem[i];
    if (!residual.allFinite()) throw fail("non-finite residual");

    // I - h^q dg/dv by forward differences.
    for (std::size_t c = 0; c < dim; ++c) {
      StateVector probe = v;
      const double dv = 1e-7 * std::max(1.0, std::abs(v[c]));
      probe[c] += dv;
      const StateVector gp = rhs(probe);
      for (std::size_t r = 0; r < dim; ++r) {
        jac(r, c) = (r == c ? 1.0 : 0.0) - hq * (gp[r] - g[r]) / dv;
      }
    }
    Eigen::PartialPivLU<Mat> lu(jac);
    const Vec delta = lu.solve(-residual);
    if (!delta.allFinite()) throw fail("singular Newton system");

    double scale = 1.0;
    for (std::size_t i = 0; i < dim; ++i) {
      v[i] += delta[i];
      scale = std::max(scale, std::abs(v[i]));
    }
    if (!all_finite(v)) throw fail("non-finite iterate");
    if (delta.cwiseAbs().maxCoeff() <= newton.rel_tol * scale) return v;
  }
  throw fail("Newton iteration did not converge");
}

std::size_t grid_steps(double t_end, double h) {
  if (!(h > 0.0) || !(t_end >= 0.0)) throw std::invalid_argument("grid_steps: need h > 0, t_end >= 0");
  const double ratio = t_end / h;
  const double nearest = std::round(ratio);
  if (std::abs(ratio - nearest) <= 1e-9 * std::max(1.0, ratio)) {
    return static_cast<std::size_t>(nearest);
  }
  return static_cast<std::size_t>(std::floor(ratio));
}

GLIntegrator::GLIntegrator(StepFunction f, StateVector y0, double h, FractionalOrder order,
                           MemoryPolicy policy, std::size_t max_steps, GLScheme scheme)
    : f_(std::move(f)),
      h_(h),
      policy_(policy),
      scheme_(scheme),
      table_(gl_coeffs(order, max_steps)) {
  if (!(h > 0.0)) throw std::invalid_argument("step size must be positive");
  if (y0.empty()) throw std::invalid_argument("initial state is empty");
  if (!all_finite(y0)) throw std::invalid_argument("initial state is not finite");
  history_.reserve(max_steps + 1);
  history_.push_back(std::move(y0));
}

double GLIntegrator::time() const noexcept { return static_cast<double>(steps_taken()) * h_; }

const StateVector& GLIntegrator::step(const ControlProvider& control) {
  const std::size_t k = history_.size();
  const double t_k = static_cast<double>(k) * h_;
  StateVector next;
  if (scheme_ == GLScheme::implicit) {
    next = gl_step_implicit(f_, history_, t_k, h_, table_, policy_, control);
  } else {
    StateVector u;
    if (control) u = control(k - 1, t_k - h_, history_.back());
    next = gl_step(f_, history_, t_k, h_, table_, policy_, u);
  }
  if (!all_finite(next)) {
    std::ostringstream msg;
    msg << "non-finite state at step k=" << k << " (t=" << static_cast<double>(k) * h_ << ")";
    throw DivergenceError(k, msg.str());
  }
  history_.push_back(std::move(next));
  return history_.back();
}

Trajectory integrate(const StepFunction& f, StateVector y0, double t_end, double h,
                     FractionalOrder order, MemoryPolicy policy, const ControlProvider& control,
                     GLScheme scheme) {
  if (!(h > 0.0)) throw std::invalid_argument("integrate: step size must be positive");
  if (!(t_end > 0.0)) throw std::invalid_argument("integrate: t_end must be positive");
  const std::size_t n = grid_steps(t_end, h);
  if (n == 0) throw std::invalid_argument("integrate: step size exceeds t_end");

  GLIntegrator integrator(f, std::move(y0), h, order, policy, n, scheme);
  for (std::size_t k = 0; k < n; ++k) integrator.step(control);

  Trajectory out;
  out.times.reserve(n + 1);
  for (std::size_t k = 0; k <= n; ++k) out.times.push_back(static_cast<double>(k) * h);
  out.states = integrator.history();
  return out;
}

}  // namespace fracsync
