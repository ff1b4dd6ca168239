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

#include "fracsync/cli.hpp"

#include <deque>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "fracsync/series_io.hpp"

namespace fracsync {

namespace {

std::string format_complex(const std::complex<double>& z) {
  if (z.imag() == 0.0) return format_number(z.real());
  std::string s = format_number(z.real());
  s += z.imag() < 0 ? "-" : "+";
  s += format_number(std::abs(z.imag())) + "i";
  return s;
}

template <class T, class F>
std::string join(const std::vector<T>& items, F&& fmt) {
  std::string s;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) s += ", ";
    s += fmt(items[i]);
  }
  return s;
}

std::string optional_number(const std::optional<double>& v) {
  return v ? format_number(*v) : std::string("none");
}

// Options shared by the simulation-driven subcommands; each is applied as a
// config key after the config file and preset.
struct Overrides {
  std::optional<std::string> config_path;
  std::optional<std::string> preset;
  std::deque<std::pair<std::string, std::optional<std::string>>> keys;

  std::optional<std::string>& add(CLI::App* app, const std::string& flag, const std::string& key,
                                  const std::string& help) {
    keys.emplace_back(key, std::nullopt);
    app->add_option(flag, keys.back().second, help);
    return keys.back().second;
  }
};

SimConfig resolve(const Overrides& o, SimConfig base) {
  SimConfig cfg = base;
  if (o.config_path) {
    std::ifstream in(*o.config_path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file '" + *o.config_path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    cfg = parse_config(text.str(), cfg);
  }
  if (o.preset) {
    const auto p = preset_from_string(*o.preset);
    if (!p) throw ConfigError("unknown preset '" + *o.preset + "'");
    cfg = expand_preset(*p, cfg);
  }
  for (const auto& [key, value] : o.keys) {
    if (value) apply_setting(cfg, key, *value);
  }
  try {
    validate(cfg);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return cfg;
}

RunReport stability_report(const SimConfig& cfg) {
  RunReport report;
  report.config = cfg;
  const GainSpec spec = gain_matrix(cfg.params, cfg.lambda);
  report.eigenvalues = closed_loop_spectrum(spec);
  report.verdict = stability_check(report.eigenvalues, cfg.order);
  return report;
}

}  // namespace

std::string render_report(const RunReport& r) {
  std::ostringstream out;
  out << "[config]\n" << format_config(r.config);
  out << "[stability]\n"
      << "eigenvalues = " << join(r.eigenvalues, format_complex) << '\n'
      << "verdicts = "
      << join(r.verdict.passes, [](bool b) { return std::string(b ? "pass" : "fail"); }) << '\n'
      << "stable = " << (r.verdict.stable ? "true" : "false") << '\n';
  if (r.metrics) {
    const auto& m = *r.metrics;
    const std::vector<std::optional<double>> settle(m.settle_time.begin(), m.settle_time.end());
    const std::vector<std::optional<double>> tail(m.max_after_settle.begin(),
                                                  m.max_after_settle.end());
    out << "[convergence]\n"
        << "tol = " << format_number(m.tol) << '\n'
        << "settle_time = " << join(settle, optional_number) << '\n'
        << "max_after_settle = " << join(tail, optional_number) << '\n'
        << "converged = " << (m.converged ? "true" : "false") << '\n'
        << "diverged = " << (r.diverged ? "true" : "false") << '\n';
    if (r.diverged_at) out << "diverged_at = " << *r.diverged_at << '\n';
  }
  if (!r.outputs.empty()) {
    out << "[output]\n";
    for (const auto& path : r.outputs) out << "file = " << path << '\n';
  }
  return out.str();
}

int run_command(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fractional-order Chen hybrid synchronization toolkit", "fracsync"};
  app.require_subcommand(1);

  // coeffs
  auto* coeffs = app.add_subcommand("coeffs", "Grünwald–Letnikov weights c_0..c_N");
  double coeff_order = 0.95;
  std::size_t coeff_count = 10;
  std::optional<std::string> coeff_output;
  coeffs->add_option("--order", coeff_order, "Fractional order q in (0, 1]");
  coeffs->add_option("--count", coeff_count, "Highest coefficient index N");
  coeffs->add_option("--output", coeff_output, "CSV destination (stdout when omitted)");

  // attractor
  auto* attractor = app.add_subcommand("attractor", "Uncontrolled phase trajectory from x0");
  Overrides attractor_opts;
  std::string attractor_output = "attractor.csv";
  attractor->add_option("--config", attractor_opts.config_path, "Config file");
  attractor->add_option("--preset", attractor_opts.preset, "case1|case2|uncontrolled|attractor");
  attractor->add_option("--output", attractor_output, "CSV destination");
  attractor_opts.add(attractor, "--order", "order", "Fractional order");
  attractor_opts.add(attractor, "--step", "step", "Time step");
  attractor_opts.add(attractor, "--t-end", "t_end", "Horizon");
  attractor_opts.add(attractor, "--memory", "memory", "full or window length");
  attractor_opts.add(attractor, "--solver", "solver", "implicit|explicit");

  // sync
  auto* sync = app.add_subcommand("sync", "Controlled drive/response run");
  Overrides sync_opts;
  std::string sync_output = "sync.csv";
  bool sync_require_stable = false;
  sync->add_option("--config", sync_opts.config_path, "Config file");
  sync->add_option("--preset", sync_opts.preset, "case1|case2|uncontrolled|attractor");
  sync->add_option("--output", sync_output, "CSV destination");
  sync->add_flag("--require-stable", sync_require_stable, "Exit 3 if the closed loop is unstable");
  sync_opts.add(sync, "--order", "order", "Fractional order");
  sync_opts.add(sync, "--step", "step", "Time step");
  sync_opts.add(sync, "--t-end", "t_end", "Horizon");
  sync_opts.add(sync, "--lambda", "lambda", "Gain design parameter");
  sync_opts.add(sync, "--scale", "scale", "Projective scale");
  sync_opts.add(sync, "--case", "case", "split|first");
  sync_opts.add(sync, "--memory", "memory", "full or window length");
  sync_opts.add(sync, "--solver", "solver", "implicit|explicit");
  sync_opts.add(sync, "--tol", "tol", "Convergence tolerance");

  // stability
  auto* stability = app.add_subcommand("stability", "Closed-loop eigenvalues and verdicts");
  Overrides stability_opts;
  bool stability_require_stable = false;
  stability->add_option("--config", stability_opts.config_path, "Config file");
  stability->add_option("--preset", stability_opts.preset, "case1|case2|uncontrolled|attractor");
  stability->add_flag("--require-stable", stability_require_stable,
                      "Exit 3 if the closed loop is unstable");
  stability_opts.add(stability, "--order", "order", "Fractional order");
  stability_opts.add(stability, "--lambda", "lambda", "Gain design parameter");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfigError;
  }

  try {
    if (*coeffs) {
      const GLCoeffTable table = gl_coeffs(FractionalOrder(coeff_order), coeff_count);
      const std::string text = render_coeffs(table);
      if (coeff_output) {
        write_text_atomic(*coeff_output, text);
        out << "wrote " << table.size() << " coefficients to " << *coeff_output << '\n';
      } else {
        out << text;
      }
      return kExitOk;
    }

    if (*attractor) {
      const SimConfig cfg = resolve(attractor_opts, expand_preset(Preset::attractor));
      try {
        const Trajectory traj =
            run_attractor(cfg.params, cfg.order, cfg.x0, cfg.step, cfg.t_end, cfg.memory,
                          cfg.solver);
        write_text_atomic(attractor_output, render_trajectory(traj, {"x1", "x2", "x3"}));
        out << "wrote " << traj.times.size() << " samples to " << attractor_output << '\n';
      } catch (const DivergenceError& e) {
        err << "error: " << e.what() << '\n';
        return kExitDiverged;
      }
      return kExitOk;
    }

    if (*stability) {
      const SimConfig cfg = resolve(stability_opts, SimConfig{});
      const RunReport report = stability_report(cfg);
      out << render_report(report);
      return stability_require_stable && !report.verdict.stable ? kExitUnstable : kExitOk;
    }

    if (*sync) {
      const SimConfig cfg = resolve(sync_opts, SimConfig{});
      RunReport report = stability_report(cfg);
      if (sync_require_stable && !report.verdict.stable) {
        out << render_report(report);
        err << "error: closed loop fails the fractional stability check\n";
        return kExitUnstable;
      }
      const SimResult result = run_sync(cfg);
      write_series(result, sync_output);
      report.metrics = result.metrics;
      report.diverged = result.diverged;
      report.diverged_at = result.diverged_at;
      report.outputs.push_back(sync_output);
      out << render_report(report);
      return result.diverged ? kExitDiverged : kExitOk;
    }
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const std::invalid_argument& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const IoError& e) {
    err << "io error: " << e.what() << '\n';
    return kExitConfigError;
  }
  return kExitConfigError;
}

}  // namespace fracsync
