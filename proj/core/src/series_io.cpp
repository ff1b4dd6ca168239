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

#include "fracsync/series_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>
#include <system_error>

#include <unistd.h>

namespace fracsync {

std::string format_number(double v) {
  if (v == 0.0) return "0";
  if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");

  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::scientific, 8);
  const std::string_view sci(buf, static_cast<std::size_t>(res.ptr - buf));

  const bool negative = sci.front() == '-';
  const std::size_t epos = sci.find('e');
  std::string_view mantissa = sci.substr(negative ? 1 : 0, epos - (negative ? 1 : 0));
  int exponent = 0;
  std::from_chars(sci.data() + epos + 1 + (sci[epos + 1] == '+' ? 1 : 0), sci.data() + sci.size(),
                  exponent);

  // Significant digits without the point and trailing zeros.
  std::string digits;
  for (char ch : mantissa) {
    if (ch != '.') digits.push_back(ch);
  }
  while (digits.size() > 1 && digits.back() == '0') digits.pop_back();

  std::string sci_form = digits.substr(0, 1);
  if (digits.size() > 1) sci_form += "." + digits.substr(1);
  sci_form += "e";
  sci_form += std::to_string(exponent);

  std::string plain;
  const int n = static_cast<int>(digits.size());
  if (exponent >= 0) {
    if (n <= exponent + 1) {
      plain = digits + std::string(static_cast<std::size_t>(exponent + 1 - n), '0');
    } else {
      plain = digits.substr(0, static_cast<std::size_t>(exponent + 1)) + "." +
              digits.substr(static_cast<std::size_t>(exponent + 1));
    }
  } else {
    plain = "0." + std::string(static_cast<std::size_t>(-exponent - 1), '0') + digits;
  }

  std::string out = negative ? "-" : "";
  out += plain.size() <= sci_form.size() ? plain : sci_form;
  return out;
}

const std::vector<std::string>& sync_columns() {
  static const std::vector<std::string> cols{
      "t",  "x1", "x2", "x3", "y1", "y2", "y3", "z1", "z2", "z3", "w1",
      "w2", "w3", "u1", "u2", "u3", "u4", "u5", "u6", "e1", "e2", "e3"};
  return cols;
}

std::string render_series(const SimResult& r) {
  std::string out;
  const auto& cols = sync_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) {
    if (i) out += ',';
    out += cols[i];
  }
  out += '\n';
  for (std::size_t k = 0; k < r.size(); ++k) {
    out += format_number(r.time[k]);
    for (const auto* v : {&r.x[k], &r.y[k], &r.z[k], &r.w[k], &r.uz[k], &r.uw[k], &r.e[k]}) {
      for (int i = 0; i < 3; ++i) {
        out += ',';
        out += format_number((*v)[i]);
      }
    }
    out += '\n';
  }
  if (r.diverged && r.diverged_at) {
    out += "# diverged at k=" + std::to_string(*r.diverged_at) + "\n";
  }
  return out;
}

void write_text_atomic(const std::filesystem::path& destination, std::string_view content) {
  namespace fs = std::filesystem;
  fs::path tmp = destination;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + tmp.string() + "' for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      out.close();
      std::error_code ignored;
      fs::remove(tmp, ignored);
      throw IoError("write to '" + tmp.string() + "' failed");
    }
  }
  std::error_code ec;
  fs::rename(tmp, destination, ec);
  if (ec) {
    std::error_code ignored;
    fs::remove(tmp, ignored);
    throw IoError("cannot move output into '" + destination.string() + "': " + ec.message());
  }
}

void write_series(const SimResult& result, const std::filesystem::path& destination) {
  write_text_atomic(destination, render_series(result));
}

std::string render_trajectory(const Trajectory& traj,
                              const std::vector<std::string>& state_columns) {
  std::string out = "t";
  for (const auto& c : state_columns) out += "," + c;
  out += '\n';
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    out += format_number(traj.times[k]);
    for (double v : traj.states[k]) {
      out += ',';
      out += format_number(v);
    }
    out += '\n';
  }
  return out;
}

std::string render_coeffs(const GLCoeffTable& table) {
  std::string out = "j,c_j\n";
  for (std::size_t j = 0; j < table.size(); ++j) {
    out += std::to_string(j) + "," + format_number(table[j]) + "\n";
  }
  return out;
}

std::size_t SeriesTable::column(std::string_view name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw IoError("column '" + std::string(name) + "' not found");
}

SeriesTable parse_series(std::istream& in) {
  SeriesTable table;
  std::string line;
  std::size_t line_no = 0;
  constexpr std::string_view kDiverged = "# diverged at k=";
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line.front() == '#') {
      if (line.starts_with(kDiverged)) {
        std::size_t k = 0;
        const char* first = line.data() + kDiverged.size();
        const auto [ptr, ec] = std::from_chars(first, line.data() + line.size(), k);
        if (ec != std::errc{}) throw IoError("malformed divergence marker on line " + std::to_string(line_no));
        table.diverged_at = k;
      }
      continue;
    }

    std::vector<std::string_view> fields;
    std::string_view rest(line);
    while (true) {
      const auto comma = rest.find(',');
      fields.push_back(rest.substr(0, comma));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }

    if (table.header.empty()) {
      for (auto f : fields) table.header.emplace_back(f);
      continue;
    }
    if (fields.size() != table.header.size()) {
      throw IoError("line " + std::to_string(line_no) + ": expected " +
                    std::to_string(table.header.size()) + " fields, got " +
                    std::to_string(fields.size()));
    }
    std::vector<double> row;
    row.reserve(fields.size());
    for (auto f : fields) {
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
      if (f.empty() || ec != std::errc{} || ptr != f.data() + f.size()) {
        throw IoError("line " + std::to_string(line_no) + ": cannot parse '" + std::string(f) + "'");
      }
      row.push_back(v);
    }
    table.rows.push_back(std::move(row));
  }
  if (table.header.empty()) throw IoError("series has no header row");
  return table;
}

SeriesTable read_series(const std::filesystem::path& source) {
  std::ifstream in(source, std::ios::binary);
  if (!in) throw IoError("cannot open '" + source.string() + "'");
  return parse_series(in);
}

}  // namespace fracsync
