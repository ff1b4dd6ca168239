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

#include <charconv>
#include <sstream>
#include <vector>

namespace fracsync {

namespace {

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\f\v";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

double parse_real(std::string_view text, std::string_view key) {
  std::string_view s = trim(text);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
    throw ConfigError("cannot parse '" + std::string(trim(text)) + "' as a real number for key '" +
                      std::string(key) + "'");
  }
  return v;
}

State3 parse_state(std::string_view text, std::string_view key) {
  std::vector<double> parts;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    parts.push_back(parse_real(text.substr(start, comma - start), key));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (parts.size() != 3) {
    throw ConfigError("key '" + std::string(key) + "' needs three comma-separated reals");
  }
  return {parts[0], parts[1], parts[2]};
}

SyncMode parse_mode(std::string_view v, std::string_view key) {
  if (v == "complete") return SyncMode::complete;
  if (v == "anti") return SyncMode::anti;
  if (v == "projective") return SyncMode::projective;
  throw ConfigError("key '" + std::string(key) + "' expects complete|anti|projective, got '" +
                    std::string(v) + "'");
}

std::string real_to_string(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string state_to_string(const State3& s) {
  return real_to_string(s[0]) + ", " + real_to_string(s[1]) + ", " + real_to_string(s[2]);
}

}  // namespace

void apply_setting(SimConfig& cfg, std::string_view key, std::string_view raw) {
  const std::string_view value = trim(raw);
  try {
    if (key == "a") {
      cfg.params.a = parse_real(value, key);
    } else if (key == "b") {
      cfg.params.b = parse_real(value, key);
    } else if (key == "c") {
      cfg.params.c = parse_real(value, key);
    } else if (key == "order") {
      cfg.order = FractionalOrder(parse_real(value, key));
    } else if (key == "step") {
      cfg.step = parse_real(value, key);
    } else if (key == "t_end") {
      cfg.t_end = parse_real(value, key);
    } else if (key == "lambda") {
      cfg.lambda = parse_real(value, key);
    } else if (key == "scale") {
      cfg.scheme.scale = parse_real(value, key);
    } else if (key == "mode1" || key == "mode2" || key == "mode3") {
      cfg.scheme.modes[key.back() - '1'] = parse_mode(value, key);
    } else if (key == "case") {
      if (value == "split") {
        cfg.allocation = AllocationCase::split_equally;
      } else if (value == "first") {
        cfg.allocation = AllocationCase::first_response_only;
      } else {
        throw ConfigError("key 'case' expects split|first, got '" + std::string(value) + "'");
      }
    } else if (key == "memory") {
      if (value == "full") {
        cfg.memory = MemoryPolicy::full();
      } else {
        std::size_t window = 0;
        const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), window);
        if (value.empty() || ec != std::errc{} || ptr != value.data() + value.size()) {
          throw ConfigError("key 'memory' expects full or a positive integer window, got '" +
                            std::string(value) + "'");
        }
        cfg.memory = MemoryPolicy::truncated(window);
      }
    } else if (key == "solver") {
      if (value == "implicit") {
        cfg.solver = GLScheme::implicit;
      } else if (value == "explicit") {
        cfg.solver = GLScheme::explicit_lagged;
      } else {
        throw ConfigError("key 'solver' expects implicit|explicit, got '" + std::string(value) +
                          "'");
      }
    } else if (key == "controls") {
      if (value == "on") {
        cfg.controls_enabled = true;
      } else if (value == "off") {
        cfg.controls_enabled = false;
      } else {
        throw ConfigError("key 'controls' expects on|off, got '" + std::string(value) + "'");
      }
    } else if (key == "x0") {
      cfg.x0 = parse_state(value, key);
    } else if (key == "y0") {
      cfg.y0 = parse_state(value, key);
    } else if (key == "z0") {
      cfg.z0 = parse_state(value, key);
    } else if (key == "w0") {
      cfg.w0 = parse_state(value, key);
    } else if (key == "tol") {
      cfg.tol = parse_real(value, key);
    } else {
      throw ConfigError("unknown key '" + std::string(key) + "'");
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

SimConfig parse_config(std::string_view source, const SimConfig& base) {
  SimConfig cfg = base;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= source.size()) {
    const auto eol = source.find('\n', pos);
    const std::string_view raw =
        source.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    pos = eol == std::string_view::npos ? source.size() + 1 : eol + 1;
    ++line_no;

    std::string_view line = raw;
    if (const auto hash = line.find_first_of("#;"); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("malformed section header", line_no);
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError("expected 'key = value'", line_no);
    const std::string_view key = trim(line.substr(0, eq));
    try {
      apply_setting(cfg, key, line.substr(eq + 1));
    } catch (const ConfigError& e) {
      throw ConfigError(e.what(), line_no);
    }
  }

  try {
    validate(cfg);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return cfg;
}

std::string format_config(const SimConfig& cfg) {
  std::ostringstream out;
  out << "a = " << real_to_string(cfg.params.a) << '\n'
      << "b = " << real_to_string(cfg.params.b) << '\n'
      << "c = " << real_to_string(cfg.params.c) << '\n'
      << "order = " << real_to_string(cfg.order.value()) << '\n'
      << "step = " << real_to_string(cfg.step) << '\n'
      << "t_end = " << real_to_string(cfg.t_end) << '\n'
      << "lambda = " << real_to_string(cfg.lambda) << '\n'
      << "scale = " << real_to_string(cfg.scheme.scale) << '\n';
  for (int i = 0; i < 3; ++i) out << "mode" << i + 1 << " = " << to_string(cfg.scheme.modes[i]) << '\n';
  out << "case = " << to_string(cfg.allocation) << '\n'
      << "memory = "
      << (cfg.memory.is_full() ? std::string("full") : std::to_string(cfg.memory.window())) << '\n'
      << "solver = " << to_string(cfg.solver) << '\n'
      << "controls = " << (cfg.controls_enabled ? "on" : "off") << '\n'
      << "x0 = " << state_to_string(cfg.x0) << '\n'
      << "y0 = " << state_to_string(cfg.y0) << '\n'
      << "z0 = " << state_to_string(cfg.z0) << '\n'
      << "w0 = " << state_to_string(cfg.w0) << '\n'
      << "tol = " << real_to_string(cfg.tol) << '\n';
  return out.str();
}

std::optional<Preset> preset_from_string(std::string_view name) {
  if (name == "case1") return Preset::case1;
  if (name == "case2") return Preset::case2;
  if (name == "uncontrolled") return Preset::uncontrolled;
  if (name == "attractor") return Preset::attractor;
  return std::nullopt;
}

std::string_view to_string(Preset p) noexcept {
  switch (p) {
    case Preset::case1: return "case1";
    case Preset::case2: return "case2";
    case Preset::uncontrolled: return "uncontrolled";
    case Preset::attractor: return "attractor";
  }
  return "?";
}

SimConfig expand_preset(Preset p, SimConfig base) {
  switch (p) {
    case Preset::case1:
      base.allocation = AllocationCase::split_equally;
      break;
    case Preset::case2:
      base.allocation = AllocationCase::first_response_only;
      break;
    case Preset::uncontrolled:
      base.controls_enabled = false;
      break;
    case Preset::attractor:
      base.controls_enabled = false;
      base.t_end = 20.0;
      break;
  }
  return base;
}

}  // namespace fracsync
