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

// Modified hybrid synchronization of two drive systems (x, y) and two
// controlled response systems (z, w) by active control.
//
// Each error component pairs the drive sum X = x + y with the response sum
// Z = z + w through a mode-dependent factor s_i:
//
//   e_i = X_i - s_i Z_i,   s_i = +1 (complete), -1 (anti), scale (projective).
//
// The aggregate controls U = u_z + u_w cancel every nonlinear term and leave
// the linear error system D^q e = (A + C) e with the feedback V = C e.

#include <array>
#include <complex>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "fracsync/chen_system.hpp"
#include "fracsync/gl_solver.hpp"

namespace fracsync {

enum class SyncMode { complete, anti, projective };

[[nodiscard]] std::string_view to_string(SyncMode mode) noexcept;

struct HybridScheme {
  std::array<SyncMode, 3> modes{SyncMode::complete, SyncMode::anti, SyncMode::projective};
  double scale = 5.0;

  /// Factor s_i multiplying the response sum in component i.
  [[nodiscard]] double factor(std::size_t i) const noexcept;
  [[nodiscard]] bool uses_projective() const noexcept;

  friend bool operator==(const HybridScheme&, const HybridScheme&) = default;
};

/// Throws std::invalid_argument for a zero or non-finite projective scale.
void validate(const HybridScheme& scheme);

using ErrorState = Eigen::Vector3d;

[[nodiscard]] ErrorState error_state(const State3& x, const State3& y, const State3& z,
                                     const State3& w, const HybridScheme& scheme);

/// A = [[-a, -a, 0], [a + c, c, 0], [0, 0, -b]].
[[nodiscard]] Eigen::Matrix3d open_loop_matrix(const SystemParams& p);

struct GainSpec {
  double lambda = 1.0;
  Eigen::Matrix3d gain;         // C
  Eigen::Matrix3d open_loop;    // A
  Eigen::Matrix3d closed_loop;  // A + C
};

/// C = [[c - lambda, a, 0], [-(a + c), -(c + lambda), 0], [0, 0, b - lambda]],
/// giving closed_loop = diag(c - a - lambda, -lambda, -lambda).
[[nodiscard]] GainSpec gain_matrix(const SystemParams& p, double lambda);

struct StabilityVerdict {
  std::vector<bool> passes;
  bool stable = false;
};

/// Fractional stability criterion |arg(lambda_i)| > q pi / 2. A zero
/// eigenvalue always fails.
[[nodiscard]] StabilityVerdict stability_check(std::span<const std::complex<double>> eigenvalues,
                                               FractionalOrder order);

/// Diagonal of the closed-loop matrix, (c - a - lambda, -lambda, -lambda).
[[nodiscard]] std::array<double, 3> closed_loop_eigenvalues(const GainSpec& spec);

/// Spectrum of spec.closed_loop: read off the diagonal when the matrix is
/// diagonal, otherwise computed with a general eigensolver.
[[nodiscard]] std::vector<std::complex<double>> closed_loop_spectrum(const GainSpec& spec);

/// V = C e.
[[nodiscard]] inline Eigen::Vector3d feedback(const ErrorState& e, const GainSpec& spec) {
  return spec.gain * e;
}

/// Aggregate controls U = (u1 + u4, u2 + u5, u3 + u6). For the scheme
/// (complete, anti, projective) these are
///
///   U1 = -V1 + 2a (x2 + y2)
///   U2 =  V2 - 2c (z1 + w1) + 2a (x1 + y1) + x1 x3 + y1 y3 + z1 z3 + w1 w3
///   U3 = (-V3 + x1 x2 + y1 y2 - s z1 z2 - s w1 w2) / s.
///
/// Other mode assignments use the same derivation with general factors.
[[nodiscard]] Eigen::Vector3d aggregate_controls(const State3& x, const State3& y,
                                                 const State3& z, const State3& w,
                                                 const Eigen::Vector3d& v, const SystemParams& p,
                                                 const HybridScheme& scheme);

enum class AllocationCase { split_equally, first_response_only };

[[nodiscard]] std::string_view to_string(AllocationCase c) noexcept;

struct ResponseControls {
  Control3 uz;  // (u1, u2, u3)
  Control3 uw;  // (u4, u5, u6)
};

[[nodiscard]] ResponseControls allocate(const Eigen::Vector3d& aggregate, AllocationCase c);

/// Error derivative obtained by combining the four Chen fields with the
/// scheme's factors. Independent of the control law, so it serves as the
/// reference side of the cancellation check.
[[nodiscard]] Eigen::Vector3d error_rhs_coupled(const State3& x, const State3& y, const State3& z,
                                                const State3& w, const Control3& uz,
                                                const Control3& uw, const SystemParams& p,
                                                const HybridScheme& scheme);

/// Full control chain feedback -> aggregate_controls -> allocate.
[[nodiscard]] ResponseControls compute_controls(const State3& x, const State3& y, const State3& z,
                                                const State3& w, const SystemParams& p,
                                                const HybridScheme& scheme, const GainSpec& spec,
                                                AllocationCase c);

}  // namespace fracsync
