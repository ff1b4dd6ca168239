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

#include "fracsync/config.hpp"

#include <random>

#include <gtest/gtest.h>

namespace fracsync {
namespace {

TEST(ParseConfig, EmptySourceGivesDefaults) {
  const SimConfig cfg = parse_config("");
  EXPECT_EQ(cfg, SimConfig{});
  EXPECT_EQ(cfg.order.value(), 0.95);
  EXPECT_EQ(cfg.step, 0.005);
}

TEST(ParseConfig, SingleOverride) {
  const SimConfig cfg = parse_config("lambda = 2\n");
  SimConfig want;
  want.lambda = 2.0;
  EXPECT_EQ(cfg, want);
}

TEST(ParseConfig, AllKeysWithSectionsAndComments) {
  const SimConfig cfg = parse_config(R"(# experiment
[model]
a = 36
b = 2.5
c = 27   ; trailing comment
order = 0.9

[solver]
step = 0.01
t_end = 4
memory = 250
solver = explicit

[control]
lambda = 3
scale = -2
mode1 = anti
mode2 = projective
mode3 = complete
case = first
controls = off
tol = 1e-3

[initial]
x0 = 1, 2, 3
y0 = -1,-2,-3
z0 = +0.5, 0, 1e1
w0 = 0, 0, 0
)");
  EXPECT_EQ(cfg.params, (SystemParams{36, 2.5, 27}));
  EXPECT_EQ(cfg.order.value(), 0.9);
  EXPECT_EQ(cfg.step, 0.01);
  EXPECT_EQ(cfg.t_end, 4.0);
  EXPECT_EQ(cfg.memory, MemoryPolicy::truncated(250));
  EXPECT_EQ(cfg.solver, GLScheme::explicit_lagged);
  EXPECT_EQ(cfg.lambda, 3.0);
  EXPECT_EQ(cfg.scheme.scale, -2.0);
  EXPECT_EQ(cfg.scheme.modes,
            (std::array{SyncMode::anti, SyncMode::projective, SyncMode::complete}));
  EXPECT_EQ(cfg.allocation, AllocationCase::first_response_only);
  EXPECT_FALSE(cfg.controls_enabled);
  EXPECT_EQ(cfg.tol, 1e-3);
  EXPECT_EQ(cfg.x0, State3(1, 2, 3));
  EXPECT_EQ(cfg.y0, State3(-1, -2, -3));
  EXPECT_EQ(cfg.z0, State3(0.5, 0, 10));
  EXPECT_EQ(cfg.w0, State3::Zero());
}

TEST(ParseConfig, OrderOutOfRangeRejected) {
  try {
    (void)parse_config("order = 1.5");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.line(), 1u);
    EXPECT_NE(std::string(e.what()).find("1.5"), std::string::npos);
  }
}

TEST(ParseConfig, UnknownKeyNamed) {
  try {
    (void)parse_config("order = 0.9\nsigma = 3\n");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_NE(std::string(e.what()).find("sigma"), std::string::npos);
  }
}

TEST(ParseConfig, UnparsableValueCarriesLine) {
  for (const char* src : {"\n\nstep = fast", "x0 = 1, 2", "memory = -3", "memory = 0",
                          "case = both", "controls = yes", "solver = rk4", "mode2 = lag", "lambda =",
                          "just words", "[broken"}) {
    EXPECT_THROW((void)parse_config(src), ConfigError) << src;
  }
  try {
    (void)parse_config("\n\nstep = fast");
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(ParseConfig, InvariantViolationsNamed) {
  try {
    (void)parse_config("step = -0.1");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("step"), std::string::npos);
  }
  try {
    (void)parse_config("scale = 0");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("scale"), std::string::npos);
  }
  // Zero scale is fine when nothing is projective.
  EXPECT_NO_THROW((void)parse_config("scale = 0\nmode3 = anti"));
  EXPECT_THROW((void)parse_config("t_end = 0.001"), ConfigError);
}

TEST(FormatConfig, ResolutionIsIdempotentProperty) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> d(-50, 50);
  std::uniform_int_distribution<int> mode(0, 2);
  for (int i = 0; i < 100; ++i) {
    SimConfig cfg;
    cfg.params = {d(rng), d(rng), d(rng)};
    cfg.order = FractionalOrder(std::uniform_real_distribution<double>(0.01, 1.0)(rng));
    cfg.step = std::uniform_real_distribution<double>(1e-4, 0.1)(rng);
    cfg.t_end = cfg.step * 37.3;
    cfg.lambda = d(rng);
    cfg.scheme.scale = d(rng) + 100.0;
    for (auto& m : cfg.scheme.modes) m = static_cast<SyncMode>(mode(rng));
    cfg.allocation = i % 2 ? AllocationCase::split_equally : AllocationCase::first_response_only;
    cfg.memory = i % 3 ? MemoryPolicy::full() : MemoryPolicy::truncated(1 + i);
    cfg.controls_enabled = i % 5 != 0;
    cfg.solver = i % 4 ? GLScheme::implicit : GLScheme::explicit_lagged;
    cfg.x0 = State3(d(rng), d(rng), d(rng));
    cfg.w0 = State3(d(rng), 1e-300, -0.0);
    cfg.tol = 1e-7 * (i + 1);

    const SimConfig once = parse_config(format_config(cfg));
    EXPECT_EQ(once, cfg);
    EXPECT_EQ(parse_config(format_config(once)), once);
    EXPECT_EQ(format_config(once), format_config(cfg));
  }
}

TEST(Presets, ExpandToValidConfigs) {
  for (const char* name : {"case1", "case2", "uncontrolled", "attractor"}) {
    const auto p = preset_from_string(name);
    ASSERT_TRUE(p.has_value()) << name;
    EXPECT_EQ(to_string(*p), name);
    EXPECT_NO_THROW(validate(expand_preset(*p)));
  }
  EXPECT_FALSE(preset_from_string("case3").has_value());
  EXPECT_EQ(expand_preset(Preset::case1).allocation, AllocationCase::split_equally);
  EXPECT_EQ(expand_preset(Preset::case2).allocation, AllocationCase::first_response_only);
  EXPECT_FALSE(expand_preset(Preset::uncontrolled).controls_enabled);
  EXPECT_EQ(expand_preset(Preset::attractor).t_end, 20.0);
}

}  // namespace
}  // namespace fracsync
