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

// Comma-delimited series files.
//
// Numbers carry 9 significant digits in plain or scientific notation,
// whichever is shorter; '.' radix, '\n' line endings. Lines starting with
// '#' are comments. A run that diverged ends with "# diverged at k=<index>".

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fracsync/gl_solver.hpp"
#include "fracsync/sim_harness.hpp"

namespace fracsync {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// 9 significant digits, shortest of plain and scientific notation.
[[nodiscard]] std::string format_number(double v);

/// Column order of sync series files.
[[nodiscard]] const std::vector<std::string>& sync_columns();

[[nodiscard]] std::string render_series(const SimResult& result);

/// Writes through a temporary file renamed over `destination`; nothing is
/// left behind on failure.
void write_series(const SimResult& result, const std::filesystem::path& destination);

void write_text_atomic(const std::filesystem::path& destination, std::string_view content);

[[nodiscard]] std::string render_trajectory(const Trajectory& traj,
                                            const std::vector<std::string>& state_columns);
[[nodiscard]] std::string render_coeffs(const GLCoeffTable& table);

struct SeriesTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
  std::optional<std::size_t> diverged_at;

  /// Index of a named column; throws IoError when missing.
  [[nodiscard]] std::size_t column(std::string_view name) const;
};

[[nodiscard]] SeriesTable parse_series(std::istream& in);
[[nodiscard]] SeriesTable read_series(const std::filesystem::path& source);

}  // namespace fracsync
