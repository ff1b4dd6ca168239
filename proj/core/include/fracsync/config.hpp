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

// Experiment configuration in "key = value" text form.
//
//   # comment
//   [model]            section headers are accepted and ignored
//   order = 0.95
//   x0 = -10, 0.001, 37
//
// Keys: a, b, c, order, step, t_end, lambda, scale, mode1, mode2, mode3
// (complete|anti|projective), case (split|first), memory (full|<window>),
// solver (implicit|explicit), controls (on|off), x0, y0, z0, w0, tol. Missing keys keep their defaults.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "fracsync/sim_harness.hpp"

namespace fracsync {

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what, std::size_t line = 0)
      : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}
  /// 1-based source line, 0 when the error is not tied to a line.
  [[nodiscard]] std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Applies `source` on top of `base` and validates the result.
[[nodiscard]] SimConfig parse_config(std::string_view source, const SimConfig& base = {});

/// Sets one key on `cfg` without validating the whole config.
void apply_setting(SimConfig& cfg, std::string_view key, std::string_view value);

/// Writes every key; parse_config(format_config(c)) == c for any valid c.
[[nodiscard]] std::string format_config(const SimConfig& cfg);

enum class Preset { case1, case2, uncontrolled, attractor };

[[nodiscard]] std::optional<Preset> preset_from_string(std::string_view name);
[[nodiscard]] std::string_view to_string(Preset p) noexcept;

/// Applies the preset's deltas to `base`.
[[nodiscard]] SimConfig expand_preset(Preset p, SimConfig base = {});

}  // namespace fracsync
