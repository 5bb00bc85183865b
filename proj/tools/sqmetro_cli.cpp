// Copyright 2026 The sqmetro Authors
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

// sqmetro command-line interface.
//
//   sqmetro convert --squeezing-db 3.21 --antisqueezing-db 3.41
//   sqmetro bounds --r 0.37 --r-prime 0 --n-meas 1000 [--theta 0.4 ...]
//   sqmetro interval --r 0.37 --r-prime 0
//   sqmetro posterior|simulate|sweep|purity-scan --config run.json [overrides]
//
// Errors go to stderr as "error[<code>]: <message>", one line each, and the
// process exits nonzero.

#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "sqmetro/sqmetro.hpp"

namespace {

using namespace sqmetro;

struct StateFlags {
  double r = 0, r_prime = 0, squeezing_db = 0, antisqueezing_db = 0;
  CLI::Option* r_opt = nullptr;
  CLI::Option* r_prime_opt = nullptr;
  CLI::Option* sq_opt = nullptr;
  CLI::Option* asq_opt = nullptr;

  void add(CLI::App& app) {
    r_opt = app.add_option("--r", r, "squeezing parameter r");
    r_prime_opt = app.add_option("--r-prime", r_prime, "extra antisqueezing parameter r'");
    sq_opt = app.add_option("--squeezing-db", squeezing_db, "squeezing below vacuum noise, dB");
    asq_opt = app.add_option("--antisqueezing-db", antisqueezing_db, "antisqueezing above vacuum noise, dB");
  }

  void into(ConfigOverrides& o) const {
    if (r_opt->count()) o.r = r;
    if (r_prime_opt->count()) o.r_prime = r_prime;
    if (sq_opt->count()) o.squeezing_db = squeezing_db;
    if (asq_opt->count()) o.antisqueezing_db = antisqueezing_db;
  }

  /// State from flags alone, validated like a config "state" block.
  [[nodiscard]] SqueezedThermalState resolve() const {
    ConfigOverrides o;
    into(o);
    o.seed = 0;
    nlohmann::json doc = nlohmann::json::object();
    apply_overrides(doc, o);
    return config_from_json(doc).state->resolve();
  }
};

struct RunFlags {
  std::string config_path;
  std::vector<double> thetas;
  std::vector<std::size_t> n_samples;
  std::size_t repetitions = 0, grid_points = 0;
  std::uint64_t seed = 0;
  std::string out_path;
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  bool svg = false;
  StateFlags state;
  CLI::Option *rep_opt = nullptr, *grid_opt = nullptr, *seed_opt = nullptr, *out_opt = nullptr;

  void add(CLI::App& app) {
    app.add_option("--config", config_path, "JSON config file")->check(CLI::ExistingFile);
    state.add(app);
    app.add_option("--theta", thetas, "true phase(s) in [0, pi/2]; repeatable");
    app.add_option("--n-samples", n_samples, "homodyne samples per trial; repeatable for posterior");
    rep_opt = app.add_option("--repetitions", repetitions, "repetitions per phase");
    seed_opt = app.add_option("--seed", seed, "master seed");
    grid_opt = app.add_option("--grid-points", grid_points, "posterior grid size (>= 64)");
    out_opt = app.add_option("--out", out_path, "output directory");
    app.add_option("--threads", threads, "worker threads (output does not depend on this)");
    app.add_flag("--svg", svg, "also render SVG figures");
  }

  [[nodiscard]] ExperimentConfig load() const {
    std::string text;
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw std::runtime_error("cannot read config: " + config_path);
      std::ostringstream ss;
      ss << in.rdbuf();
      text = ss.str();
    }
    nlohmann::json doc = nlohmann::json::object();
    if (text.find_first_not_of(" \t\r\n") != std::string::npos) {
      try {
        doc = nlohmann::json::parse(text);
      } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError({std::string("config is not valid JSON: ") + e.what()});
      }
    }
    ConfigOverrides o;
    state.into(o);
    o.thetas = thetas;
    o.n_samples = n_samples;
    if (rep_opt->count()) o.repetitions = repetitions;
    if (seed_opt->count()) o.seed = seed;
    if (grid_opt->count()) o.grid_points = grid_points;
    if (out_opt->count()) o.out_path = out_path;
    apply_overrides(doc, o);
    return config_from_json(doc);
  }
};

SqueezedThermalState single_state(const ExperimentConfig& cfg) {
  if (!cfg.state) throw ConfigError({"this subcommand needs a single state (state), not states"});
  return cfg.state->resolve();
}

std::size_t single_n(const ExperimentConfig& cfg) {
  if (cfg.n_samples.size() != 1) throw ConfigError({"this subcommand needs a single run.n_samples"});
  return cfg.n_samples.front();
}

double single_theta(const ExperimentConfig& cfg) {
  if (cfg.theta) return *cfg.theta;
  if (cfg.thetas && cfg.thetas->size() == 1) return cfg.thetas->front();
  throw ConfigError({"missing required key: run.theta"});
}

std::vector<double> phase_list(const ExperimentConfig& cfg) {
  if (cfg.thetas) return *cfg.thetas;
  if (cfg.theta) return {*cfg.theta};
  return default_phase_list();
}

void announce(const std::vector<std::filesystem::path>& paths) {
  for (const auto& p : paths) std::cerr << "wrote " << p.string() << '\n';
}

int run_posterior(const RunFlags& f) {
  const auto cfg = f.load();
  const auto state = single_state(cfg);
  const auto curves = posterior_curves(state, single_theta(cfg), cfg.n_samples, cfg.seed, cfg.grid_points);
  if (cfg.out_path.empty()) {
    if (curves.size() != 1) throw ConfigError({"several run.n_samples values need out.path"});
    auto meta = make_meta("posterior", config_to_json(cfg));
    meta["n_samples"] = cfg.n_samples.front();
    write_posterior_csv(std::cout, meta, curves.front());
    return 0;
  }
  announce(emit_posterior_data(cfg.out_path, cfg, curves, cfg.n_samples, f.svg));
  return 0;
}

int run_sweep(const RunFlags& f, const std::string& stem, bool single) {
  const auto cfg = f.load();
  const auto state = single_state(cfg);
  const auto thetas = single ? std::vector<double>{single_theta(cfg)} : phase_list(cfg);
  const auto report =
      sweep_theta(state, thetas, single_n(cfg), cfg.repetitions, cfg.seed, cfg.grid_points, f.threads);
  if (cfg.out_path.empty()) {
    write_aggregate_csv(std::cout, make_meta(stem + "_aggregate", config_to_json(cfg)), report.aggregates);
    return 0;
  }
  announce(emit_report_data(cfg.out_path, stem, cfg, report, f.svg));
  return 0;
}

int run_purity_scan(const RunFlags& f) {
  const auto cfg = f.load();
  std::vector<SqueezedThermalState> states;
  if (cfg.state) states.push_back(cfg.state->resolve());
  for (const auto& s : cfg.states) states.push_back(s.resolve());
  const auto thetas = phase_list(cfg);
  const auto rows =
      purity_scan(states, thetas, single_n(cfg), cfg.repetitions, cfg.seed, cfg.grid_points, f.threads);
  if (cfg.out_path.empty()) {
    write_purity_csv(std::cout, make_meta("purity_scan", config_to_json(cfg)), rows);
    return 0;
  }
  announce(emit_purity_data(cfg.out_path, cfg, rows, f.svg));
  return 0;
}

void report_error(const std::string& code, const std::string& message) {
  std::cerr << "error[" << code << "]: " << message << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Squeezed-light phase estimation simulator"};
  app.set_version_flag("--version", version_string());
  app.require_subcommand(1, 1);

  auto* convert = app.add_subcommand("convert", "dB noise levels -> r, r', purity, mean photon number");
  double sq_db = 0, asq_db = 0;
  convert->add_option("--squeezing-db", sq_db, "squeezing below vacuum noise, dB")->required();
  convert->add_option("--antisqueezing-db", asq_db, "antisqueezing above vacuum noise, dB")->required();

  auto* bounds = app.add_subcommand("bounds", "Fisher information and SQL/OCRB/QCRB per phase");
  StateFlags bounds_state;
  bounds_state.add(*bounds);
  std::size_t n_meas = 1000;
  std::vector<double> bounds_thetas;
  std::string bounds_out;
  bounds->add_option("--n-meas", n_meas, "number of measurements N")->capture_default_str();
  bounds->add_option("--theta", bounds_thetas, "phase(s); default: 12 points across [0, pi/2]");
  bounds->add_option("--out", bounds_out, "output directory (bounds.csv); default stdout");

  auto* interval = app.add_subcommand("interval", "phase interval where homodyne beats the SQL");
  StateFlags interval_state;
  interval_state.add(*interval);

  RunFlags posterior_flags, simulate_flags, sweep_flags, scan_flags;
  auto* posterior_cmd = app.add_subcommand("posterior", "posterior curves for one or more record lengths");
  posterior_flags.add(*posterior_cmd);
  auto* simulate_cmd = app.add_subcommand("simulate", "repeated trials at one phase");
  simulate_flags.add(*simulate_cmd);
  auto* sweep_cmd = app.add_subcommand("sweep", "variance versus phase with the bound ladder");
  sweep_flags.add(*sweep_cmd);
  auto* scan_cmd = app.add_subcommand("purity-scan", "beyond-SQL interval width versus probe purity");
  scan_flags.add(*scan_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    report_error("usage", e.what());
    return 2;
  }

  try {
    if (*convert) {
      const auto s = from_db(sq_db, asq_db);
      std::cout << "r,r_prime,purity,mean_photon\n"
                << csv::format_double(s.r()) << ',' << csv::format_double(s.r_prime()) << ','
                << csv::format_double(purity(s)) << ',' << csv::format_double(mean_photon_number(s)) << '\n';
      return 0;
    }
    if (*bounds) {
      const auto state = bounds_state.resolve();
      const auto thetas = bounds_thetas.empty() ? default_phase_list() : bounds_thetas;
      std::vector<BoundsReport> rows;
      for (double t : thetas) rows.push_back(bounds_report(state, t, n_meas));
      nlohmann::ordered_json params = {{"r", state.r()}, {"r_prime", state.r_prime()},
                                       {"n_meas", n_meas}, {"thetas", thetas}};
      const auto meta = make_meta("bounds", params);
      if (bounds_out.empty()) {
        write_bounds_csv(std::cout, meta, rows);
      } else {
        const auto path = std::filesystem::path(bounds_out) / "bounds.csv";
        write_file(path, [&](std::ostream& os) { write_bounds_csv(os, meta, rows); });
        announce({path});
      }
      return 0;
    }
    if (*interval) {
      const auto state = interval_state.resolve();
      const auto iv = beyond_sql_interval(state);
      std::cout << "theta_low,theta_high,delta_theta,theta_opt,empty\n"
                << csv::format_double(iv.theta_low) << ',' << csv::format_double(iv.theta_high) << ','
                << csv::format_double(iv.width()) << ',' << csv::format_double(optimal_phase(state)) << ','
                << (iv.empty ? "true" : "false") << '\n';
      return 0;
    }
    if (*posterior_cmd) return run_posterior(posterior_flags);
    if (*simulate_cmd) return run_sweep(simulate_flags, "simulate", true);
    if (*sweep_cmd) return run_sweep(sweep_flags, "sweep", false);
    if (*scan_cmd) return run_purity_scan(scan_flags);
  } catch (const ConfigError& e) {
    for (const auto& msg : e.errors()) report_error("config", msg);
    return 1;
  } catch (const NoPhaseInformation& e) {
    report_error("no-phase-information", e.what());
    return 1;
  } catch (const UninformativePosterior& e) {
    report_error("uninformative-posterior", e.what());
    return 1;
  } catch (const std::invalid_argument& e) {
    report_error("invalid-argument", e.what());
    return 1;
  } catch (const std::exception& e) {
    report_error("runtime", e.what());
    return 1;
  }
  return 1;
}
