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

#include "fracsync/mhs_controller.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace fracsync {

std::string_view to_string(SyncMode mode) noexcept {
  switch (mode) {
    case SyncMode::complete: return "complete";
    case SyncMode::anti: return "anti";
    case SyncMode::projective: return "projective";
  }
  return "?";
}

std::string_view to_string(AllocationCase c) noexcept {
  switch (c) {
    case AllocationCase::split_equally: return "split";
    case AllocationCase::first_response_only: return "first";
  }
  return "?";
}

double HybridScheme::factor(std::size_t i) const noexcept {
  switch (modes[i]) {
    case SyncMode::complete: return 1.0;
    case SyncMode::anti: return -1.0;
    case SyncMode::projective: return scale;
  }
  return 1.0;
}

bool HybridScheme::uses_projective() const noexcept {
  for (auto m : modes) {
    if (m == SyncMode::projective) return true;
  }
  return false;
}

void validate(const HybridScheme& scheme) {
  if (scheme.uses_projective() && (scheme.scale == 0.0 || !std::isfinite(scheme.scale))) {
    throw std::invalid_argument("projective scale must be finite and nonzero");
  }
}

ErrorState error_state(const State3& x, const State3& y, const State3& z, const State3& w,
                       const HybridScheme& scheme) {
  validate(scheme);
  ErrorState e;
  for (int i = 0; i < 3; ++i) {
    e[i] = (x[i] + y[i]) - scheme.factor(i) * (z[i] + w[i]);
  }
  return e;
}

Eigen::Matrix3d open_loop_matrix(const SystemParams& p) {
  Eigen::Matrix3d a;
  // clang-format off
  a << -p.a,        -p.a, 0.0,
       p.a + p.c,   p.c,  0.0,
       0.0,         0.0,  -p.b;
  // clang-format on
  return a;
}

GainSpec gain_matrix(const SystemParams& p, double lambda) {
  GainSpec spec;
  spec.lambda = lambda;
  // clang-format off
  spec.gain << p.c - lambda,   p.a,              0.0,
               -(p.a + p.c),   -(p.c + lambda),  0.0,
               0.0,            0.0,              p.b - lambda;
  // clang-format on
  spec.open_loop = open_loop_matrix(p);
  spec.closed_loop = spec.open_loop + spec.gain;
  return spec;
}

StabilityVerdict stability_check(std::span<const std::complex<double>> eigenvalues,
                                 FractionalOrder order) {
  const double threshold = 0.5 * std::numbers::pi * order.value();
  StabilityVerdict verdict;
  verdict.stable = true;
  verdict.passes.reserve(eigenvalues.size());
  for (const auto& ev : eigenvalues) {
    const bool ok = ev != std::complex<double>{0.0, 0.0} && std::abs(std::arg(ev)) > threshold;
    verdict.passes.push_back(ok);
    verdict.stable = verdict.stable && ok;
  }
  return verdict;
}

std::array<double, 3> closed_loop_eigenvalues(const GainSpec& spec) {
  return {spec.closed_loop(0, 0), spec.closed_loop(1, 1), spec.closed_loop(2, 2)};
}

std::vector<std::complex<double>> closed_loop_spectrum(const GainSpec& spec) {
  const Eigen::Matrix3d& m = spec.closed_loop;
  if (m.isDiagonal(0.0)) {
    const auto d = closed_loop_eigenvalues(spec);
    return {d[0], d[1], d[2]};
  }
  Eigen::EigenSolver<Eigen::Matrix3d> solver(m, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eigenvalue computation did not converge");
  }
  std::vector<std::complex<double>> out;
  for (int i = 0; i < 3; ++i) out.push_back(solver.eigenvalues()[i]);
  return out;
}

Eigen::Vector3d aggregate_controls(const State3& x, const State3& y, const State3& z,
                                   const State3& w, const Eigen::Vector3d& v,
                                   const SystemParams& p, const HybridScheme& scheme) {
  validate(scheme);
  const double s1 = scheme.factor(0);
  const double s2 = scheme.factor(1);
  const double s3 = scheme.factor(2);
  if (s1 == 0.0 || s2 == 0.0 || s3 == 0.0) {
    throw std::invalid_argument("aggregate_controls: zero synchronization factor");
  }

  const State3 drive = x + y;
  const State3 resp = z + w;
  const double nl13_drive = x[0] * x[2] + y[0] * y[2];
  const double nl13_resp = z[0] * z[2] + w[0] * w[2];
  const double nl12_drive = x[0] * x[1] + y[0] * y[1];
  const double nl12_resp = z[0] * z[1] + w[0] * w[1];

  Eigen::Vector3d u;
  // Each row solves d/dt e_i = (A e)_i + V_i for U_i. With s = (1, -1, s3)
  // the response-sum coefficients reduce to 0 and -2c (resp. +2c after the
  // division by s2 = -1).
  u[0] = (-v[0] + 2.0 * p.a * drive[1] - p.a * (s1 + s2) * resp[1]) / s1;
  u[1] = (-v[1] - 2.0 * p.a * drive[0] + ((p.a + p.c) * s1 - (p.c - p.a) * s2) * resp[0] -
          nl13_drive + s2 * nl13_resp) /
         s2;
  u[2] = (-v[2] + nl12_drive - s3 * nl12_resp) / s3;
  return u;
}

ResponseControls allocate(const Eigen::Vector3d& aggregate, AllocationCase c) {
  switch (c) {
    case AllocationCase::split_equally:
      return {0.5 * aggregate, 0.5 * aggregate};
    case AllocationCase::first_response_only:
      return {aggregate, Control3::Zero()};
  }
  throw std::invalid_argument("unknown allocation case");
}

Eigen::Vector3d error_rhs_coupled(const State3& x, const State3& y, const State3& z,
                                  const State3& w, const Control3& uz, const Control3& uw,
                                  const SystemParams& p, const HybridScheme& scheme) {
  validate(scheme);
  const State3 drive = chen_rhs(x, p) + chen_rhs(y, p);
  const State3 resp = chen_rhs(z, p, uz) + chen_rhs(w, p, uw);
  Eigen::Vector3d de;
  for (int i = 0; i < 3; ++i) de[i] = drive[i] - scheme.factor(i) * resp[i];
  return de;
}

ResponseControls compute_controls(const State3& x, const State3& y, const State3& z,
                                  const State3& w, const SystemParams& p,
                                  const HybridScheme& scheme, const GainSpec& spec,
                                  AllocationCase c) {
  const Eigen::Vector3d v = feedback(error_state(x, y, z, w, scheme), spec);
  return allocate(aggregate_controls(x, y, z, w, v, p, scheme), c);
}

}  // namespace fracsync
