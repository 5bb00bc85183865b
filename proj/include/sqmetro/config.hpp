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

#pragma once

// Experiment configuration: JSON text <-> ExperimentConfig.
//
// Schema (all keys optional unless noted):
//   {
//     "state":  {"r": 0.37, "r_prime": 0.0}                       (or)
//               {"squeezing_db": 3.21, "antisqueezing_db": 3.41},
//     "states": [ <state>, ... ],              purity scans; replaces "state"
//     "run": {
//       "theta": 0.4  |  "thetas": [0.1, 0.2],  radians in [0, pi/2]
//       "n_samples": 1000  |  [100, 300],       default 1000
//       "repetitions": 20,                      default 20
//       "seed": 1,                              required
//       "grid_points": 2048                     default 2048, >= 64
//     },
//     "out": {"path": "results"}
//   }
// Exactly one of "state"/"states" is required. Validation collects every
// problem before failing.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "sqmetro/csv.hpp"
#include "sqmetro/experiments.hpp"

namespace sqmetro {

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> errors)
      : std::runtime_error(join(errors)), errors_(std::move(errors)) {}

  [[nodiscard]] const std::vector<std::string>& errors() const noexcept { return errors_; }

 private:
  static std::string join(const std::vector<std::string>& errors) {
    std::string out;
    for (const auto& e : errors) {
      if (!out.empty()) out += "; ";
      out += e;
    }
    return out;
  }
  std::vector<std::string> errors_;
};

namespace detail {

using json = nlohmann::json;

class ConfigReader {
 public:
  std::vector<std::string> errors;

  void unknown_keys(const json& obj, std::string_view where, std::initializer_list<std::string_view> known) {
    for (const auto& [key, value] : obj.items()) {
      bool ok = false;
      for (auto k : known) ok = ok || key == k;
      if (!ok) errors.push_back("unknown key: " + prefixed(where, key));
    }
  }

  std::optional<double> number(const json& obj, std::string_view where, const std::string& key) {
    if (!obj.contains(key)) return std::nullopt;
    const auto& v = obj.at(key);
    if (!v.is_number()) {
      errors.push_back(prefixed(where, key) + ": expected a number");
      return std::nullopt;
    }
    return v.get<double>();
  }

  std::optional<std::uint64_t> count(const json& obj, std::string_view where, const std::string& key,
                                     std::uint64_t minimum) {
    if (!obj.contains(key)) return std::nullopt;
    return count_value(obj.at(key), prefixed(where, key), minimum);
  }

  std::optional<std::uint64_t> count_value(const json& v, const std::string& name,
                                           std::uint64_t minimum) {
    if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() && v.get<std::int64_t>() < 0)) {
      errors.push_back(name + ": expected a non-negative integer");
      return std::nullopt;
    }
    const auto value = v.get<std::uint64_t>();
    if (value < minimum) {
      errors.push_back(name + ": must be >= " + std::to_string(minimum) + ", got " + std::to_string(value));
      return std::nullopt;
    }
    return value;
  }

  std::optional<double> phase(const json& v, const std::string& name) {
    if (!v.is_number()) {
      errors.push_back(name + ": expected a number");
      return std::nullopt;
    }
    const double t = v.get<double>();
    if (!(t >= 0.0 && t <= kHalfPi)) {
      errors.push_back(name + " = " + csv::format_double(t) + " outside [0, pi/2]");
      return std::nullopt;
    }
    return t;
  }

  std::optional<StateSpec> state(const json& obj, const std::string& where) {
    if (!obj.is_object()) {
      errors.push_back(where + ": expected an object");
      return std::nullopt;
    }
    unknown_keys(obj, where, {"r", "r_prime", "squeezing_db", "antisqueezing_db"});
    const bool model = obj.contains("r") || obj.contains("r_prime");
    const bool db = obj.contains("squeezing_db") || obj.contains("antisqueezing_db");
    if (model && db) {
      errors.push_back(where + ": both " + where + ".r/" + where + ".r_prime and " + where +
                       ".squeezing_db/" + where + ".antisqueezing_db given; use exactly one pair");
      return std::nullopt;
    }
    if (!model && !db) {
      errors.push_back(where + ": missing required keys " + where + ".r, " + where +
                       ".r_prime (or " + where + ".squeezing_db, " + where + ".antisqueezing_db)");
      return std::nullopt;
    }
    const std::string a = model ? "r" : "squeezing_db";
    const std::string b = model ? "r_prime" : "antisqueezing_db";
    const std::size_t before = errors.size();
    for (const auto& key : {a, b}) {
      if (!obj.contains(key)) errors.push_back("missing required key: " + where + "." + key);
    }
    const auto first = number(obj, where, a);
    const auto second = number(obj, where, b);
    if (errors.size() != before || !first || !second) return std::nullopt;
    StateSpec spec = model ? StateSpec{ModelParameters{*first, *second}}
                           : StateSpec{NoiseLevelsDb{*first, *second}};
    try {
      (void)spec.resolve();
    } catch (const std::invalid_argument& e) {
      errors.push_back(where + ": " + e.what());
      return std::nullopt;
    }
    return spec;
  }

  static std::string prefixed(std::string_view where, std::string_view key) {
    return where.empty() ? std::string(key) : std::string(where) + "." + std::string(key);
  }
};

}  // namespace detail

/// Parses and validates a config document. Throws ConfigError listing every problem.
[[nodiscard]] inline ExperimentConfig config_from_json(const nlohmann::json& doc) {
  detail::ConfigReader in;
  ExperimentConfig cfg;
  if (!doc.is_object()) throw ConfigError({"config: top level must be an object"});
  in.unknown_keys(doc, "", {"state", "states", "run", "out"});

  if (doc.contains("state") && doc.contains("states")) {
    in.errors.push_back("both state and states given; use exactly one");
  } else if (doc.contains("state")) {
    cfg.state = in.state(doc.at("state"), "state");
  } else if (doc.contains("states")) {
    const auto& list = doc.at("states");
    if (!list.is_array() || list.empty()) {
      in.errors.push_back("states: expected a non-empty array");
    } else {
      for (std::size_t i = 0; i < list.size(); ++i) {
        if (auto s = in.state(list[i], "states[" + std::to_string(i) + "]")) cfg.states.push_back(*s);
      }
    }
  } else {
    in.errors.push_back("missing required key: state (state.r, state.r_prime or state.squeezing_db, "
                        "state.antisqueezing_db)");
  }

  const nlohmann::json empty = nlohmann::json::object();
  const auto& run = doc.contains("run") ? doc.at("run") : empty;
  if (!run.is_object()) {
    in.errors.push_back("run: expected an object");
  } else {
    in.unknown_keys(run, "run", {"theta", "thetas", "n_samples", "repetitions", "seed", "grid_points"});
    if (run.contains("theta") && run.contains("thetas")) {
      in.errors.push_back("both run.theta and run.thetas given; use exactly one");
    } else if (run.contains("theta")) {
      cfg.theta = in.phase(run.at("theta"), "run.theta");
    } else if (run.contains("thetas")) {
      const auto& list = run.at("thetas");
      if (!list.is_array() || list.empty()) {
        in.errors.push_back("run.thetas: expected a non-empty array");
      } else {
        std::vector<double> thetas;
        for (std::size_t i = 0; i < list.size(); ++i) {
          if (auto t = in.phase(list[i], "run.thetas[" + std::to_string(i) + "]")) thetas.push_back(*t);
        }
        cfg.thetas = std::move(thetas);
      }
    }
    if (run.contains("n_samples")) {
      const auto& v = run.at("n_samples");
      cfg.n_samples.clear();
      if (v.is_array()) {
        if (v.empty()) in.errors.push_back("run.n_samples: expected a non-empty array");
        for (std::size_t i = 0; i < v.size(); ++i) {
          if (auto n = in.count_value(v[i], "run.n_samples[" + std::to_string(i) + "]", 1)) {
            cfg.n_samples.push_back(*n);
          }
        }
      } else if (auto n = in.count_value(v, "run.n_samples", 1)) {
        cfg.n_samples.push_back(*n);
      }
    }
    if (auto r = in.count(run, "run", "repetitions", 1)) cfg.repetitions = *r;
    if (auto g = in.count(run, "run", "grid_points", kMinGridPoints)) cfg.grid_points = *g;
    if (!run.contains("seed")) {
      in.errors.push_back("missing required key: run.seed");
    } else if (auto s = in.count(run, "run", "seed", 0)) {
      cfg.seed = *s;
    }
  }

  if (doc.contains("out")) {
    const auto& out = doc.at("out");
    if (!out.is_object()) {
      in.errors.push_back("out: expected an object");
    } else {
      in.unknown_keys(out, "out", {"path"});
      if (out.contains("path")) {
        if (out.at("path").is_string()) {
          cfg.out_path = out.at("path").get<std::string>();
        } else {
          in.errors.push_back("out.path: expected a string");
        }
      }
    }
  }

  if (!in.errors.empty()) throw ConfigError(std::move(in.errors));
  return cfg;
}

[[nodiscard]] inline nlohmann::ordered_json state_to_json(const StateSpec& spec) {
  if (const auto* p = std::get_if<ModelParameters>(&spec.form)) {
    return {{"r", p->r}, {"r_prime", p->r_prime}};
  }
  const auto& db = std::get<NoiseLevelsDb>(spec.form);
  return {{"squeezing_db", db.squeezing_db}, {"antisqueezing_db", db.antisqueezing_db}};
}

[[nodiscard]] inline nlohmann::ordered_json config_to_json(const ExperimentConfig& cfg) {
  nlohmann::ordered_json doc = nlohmann::ordered_json::object();
  if (cfg.state) doc["state"] = state_to_json(*cfg.state);
  if (!cfg.states.empty()) {
    doc["states"] = nlohmann::ordered_json::array();
    for (const auto& s : cfg.states) doc["states"].push_back(state_to_json(s));
  }
  nlohmann::ordered_json run = nlohmann::ordered_json::object();
  if (cfg.theta) run["theta"] = *cfg.theta;
  if (cfg.thetas) run["thetas"] = *cfg.thetas;
  if (cfg.n_samples.size() == 1) {
    run["n_samples"] = cfg.n_samples.front();
  } else {
    run["n_samples"] = cfg.n_samples;
  }
  run["repetitions"] = cfg.repetitions;
  run["seed"] = cfg.seed;
  run["grid_points"] = cfg.grid_points;
  doc["run"] = std::move(run);
  if (!cfg.out_path.empty()) doc["out"] = {{"path", cfg.out_path}};
  return doc;
}

/// Parses config text. Blank text is an empty document.
[[nodiscard]] inline ExperimentConfig parse_config(std::string_view text) {
  if (text.find_first_not_of(" \t\r\n") == std::string_view::npos) {
    return config_from_json(nlohmann::json::object());
  }
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError({std::string("config is not valid JSON: ") + e.what()});
  }
  return config_from_json(doc);
}

/// The "# meta:" payload written at the top of every CSV.
[[nodiscard]] inline nlohmann::ordered_json make_meta(std::string_view kind,
                                                      nlohmann::ordered_json config) {
  return {{"version", version_string()}, {"kind", kind}, {"config", std::move(config)}};
}

/// Recovers the config recorded in a "# meta:" line.
[[nodiscard]] inline ExperimentConfig config_from_meta(std::string_view line) {
  if (line.substr(0, csv::kMetaPrefix.size()) == csv::kMetaPrefix) line.remove_prefix(csv::kMetaPrefix.size());
  nlohmann::json meta;
  try {
    meta = nlohmann::json::parse(line);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError({std::string("meta line is not valid JSON: ") + e.what()});
  }
  if (!meta.is_object() || !meta.contains("config")) throw ConfigError({"meta line has no config"});
  return config_from_json(meta.at("config"));
}

/// Command-line values that take precedence over the config file.
struct ConfigOverrides {
  std::optional<double> r;
  std::optional<double> r_prime;
  std::optional<double> squeezing_db;
  std::optional<double> antisqueezing_db;
  std::vector<double> thetas;
  std::vector<std::size_t> n_samples;
  std::optional<std::size_t> repetitions;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> grid_points;
  std::optional<std::string> out_path;
};

/// Applies overrides key by key: flag > file > default. A state flag of the
/// other form (r/r_prime vs dB) replaces the file's state instead of merging;
/// giving both forms on the command line is left for validation to report.
inline void apply_overrides(nlohmann::json& doc, const ConfigOverrides& o) {
  if (!doc.is_object()) doc = nlohmann::json::object();
  const bool model = o.r || o.r_prime;
  const bool db = o.squeezing_db || o.antisqueezing_db;
  if (model || db) {
    auto& state = doc["state"];
    doc.erase("states");
    const bool file_model = state.is_object() && (state.contains("r") || state.contains("r_prime"));
    const bool file_db = state.is_object() && (state.contains("squeezing_db") || state.contains("antisqueezing_db"));
    const bool same_form = (model && !db && file_model && !file_db) || (db && !model && file_db && !file_model);
    if (!same_form) state = nlohmann::json::object();
    if (o.r) state["r"] = *o.r;
    if (o.r_prime) state["r_prime"] = *o.r_prime;
    if (o.squeezing_db) state["squeezing_db"] = *o.squeezing_db;
    if (o.antisqueezing_db) state["antisqueezing_db"] = *o.antisqueezing_db;
  }
  auto& run = doc["run"];
  if (!run.is_object()) run = nlohmann::json::object();
  if (o.thetas.size() == 1) {
    run.erase("thetas");
    run["theta"] = o.thetas.front();
  } else if (o.thetas.size() > 1) {
    run.erase("theta");
    run["thetas"] = o.thetas;
  }
  if (o.n_samples.size() == 1) {
    run["n_samples"] = o.n_samples.front();
  } else if (o.n_samples.size() > 1) {
    run["n_samples"] = o.n_samples;
  }
  if (o.repetitions) run["repetitions"] = *o.repetitions;
  if (o.seed) run["seed"] = *o.seed;
  if (o.grid_points) run["grid_points"] = *o.grid_points;
  if (o.out_path) doc["out"]["path"] = *o.out_path;
}

}  // namespace sqmetro
