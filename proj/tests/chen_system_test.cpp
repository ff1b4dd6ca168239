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

#include "fracsync/chen_system.hpp"

#include <random>

#include <gtest/gtest.h>

namespace fracsync {
namespace {

const SystemParams kChen{};

TEST(ChenRhs, HandEvaluatedPoints) {
  EXPECT_EQ(chen_rhs(State3::Zero(), kChen), State3::Zero());
  EXPECT_EQ(chen_rhs(State3(1, 1, 1), kChen), State3(0, 20, -2));
  EXPECT_EQ(chen_rhs(State3(1, 0, 0), kChen), State3(-35, -7, 0));
  EXPECT_EQ(chen_rhs(State3::Zero(), kChen, Control3(4, 5, 6)), State3(4, 5, 6));
}

TEST(ChenRhs, DefaultsAreChaoticTriple) {
  EXPECT_EQ(kChen.a, 35.0);
  EXPECT_EQ(kChen.b, 3.0);
  EXPECT_EQ(kChen.c, 28.0);
}

TEST(ChenRhs, OriginIsEquilibriumForAnyParameters) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> d(-100, 100);
  for (int i = 0; i < 200; ++i) {
    const SystemParams p{d(rng), d(rng), d(rng)};
    EXPECT_EQ(chen_rhs(State3::Zero(), p), State3::Zero());
  }
}

TEST(ChenRhs, ControlEntersAdditively) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> d(-50, 50);
  for (int i = 0; i < 500; ++i) {
    // Small integers keep every product exact, so the difference is exactly u.
    const State3 s(std::round(d(rng)), std::round(d(rng)), std::round(d(rng)));
    const Control3 u(std::round(d(rng)), std::round(d(rng)), std::round(d(rng)));
    EXPECT_EQ(chen_rhs(s, kChen, u) - chen_rhs(s, kChen), u);
  }
}

TEST(ChenRhs, AffineInEachParameter) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> d(-20, 20);
  const double delta = 1e-3;
  for (int trial = 0; trial < 100; ++trial) {
    const State3 s(d(rng), d(rng), d(rng));
    // Analytic partial derivatives of the field with respect to a, b, c.
    const State3 da(s[1] - s[0], -s[0], 0.0);
    const State3 db(0.0, 0.0, -s[2]);
    const State3 dc(0.0, s[0] + s[1], 0.0);
    const std::array<State3, 3> analytic{da, db, dc};
    for (int k = 0; k < 3; ++k) {
      SystemParams hi = kChen, lo = kChen;
      double* phi = k == 0 ? &hi.a : k == 1 ? &hi.b : &hi.c;
      double* plo = k == 0 ? &lo.a : k == 1 ? &lo.b : &lo.c;
      *phi += delta;
      *plo -= delta;
      const State3 fd = (chen_rhs(s, hi) - chen_rhs(s, lo)) / (2 * delta);
      for (int i = 0; i < 3; ++i) {
        EXPECT_NEAR(fd[i], analytic[k][i], 1e-9 * std::max(1.0, std::abs(analytic[k][i])));
      }
    }
  }
}

TEST(SystemParams, ValidateRejectsNonFinite) {
  EXPECT_NO_THROW(validate(kChen));
  EXPECT_THROW(validate(SystemParams{std::nan(""), 3, 28}), std::invalid_argument);
  EXPECT_THROW(validate(SystemParams{35, INFINITY, 28}), std::invalid_argument);
}

}  // namespace
}  // namespace fracsync
