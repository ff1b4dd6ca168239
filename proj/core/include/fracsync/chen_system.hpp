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

#include <Eigen/Core>

namespace fracsync {

using State3 = Eigen::Vector3d;
using Control3 = Eigen::Vector3d;

/// Chen parameters; the defaults are the chaotic triple.
struct SystemParams {
  double a = 35.0;
  double b = 3.0;
  double c = 28.0;

  friend bool operator==(const SystemParams&, const SystemParams&) = default;
};

/// Controlled Chen vector field
///
///   ( a (s2 - s1) + u1,
///     (c - a) s1 - s1 s3 + c s2 + u2,
///     s1 s2 - b s3 + u3 ).
///
/// With u = 0 this is the uncontrolled (drive) field.
[[nodiscard]] inline State3 chen_rhs(const State3& s, const SystemParams& p,
                                     const Control3& u = Control3::Zero()) {
  return {p.a * (s[1] - s[0]) + u[0],
          (p.c - p.a) * s[0] - s[0] * s[2] + p.c * s[1] + u[1],
          s[0] * s[1] - p.b * s[2] + u[2]};
}

/// Throws std::invalid_argument when a parameter is not finite.
void validate(const SystemParams& p);

}  // namespace fracsync
