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

#include "sqmetro/config.hpp"

#include <algorithm>
#include <string>

#include "gtest/gtest.h"

using namespace sqmetro;

namespace {

std::vector<std::string> errors_of(std::string_view text) {
  try {
    (void)parse_config(text);
  } catch (const ConfigError& e) {
    return e.errors();
  }
  return {};
}

bool any_contains(const std::vector<std::string>& errors, std::string_view needle) {
  return std::any_of(errors.begin(), errors.end(),
                     [&](const std::string& e) { return e.find(needle) != std::string::npos; });
}

}  // namespace

TEST(config, minimal_config_parses_with_defaults) {
  const auto cfg = parse_config(R"({"state": {"r": 0.37, "r_prime": 0}, "run": {"theta": 0.4, "n_samples": 1000, "seed": 1}})");
  ASSERT_TRUE(cfg.state.has_value());
  EXPECT_EQ(cfg.state->resolve(), SqueezedThermalState(0.37, 0.0));
  EXPECT_EQ(cfg.theta, 0.4);
  EXPECT_EQ(cfg.n_samples, std::vector<std::size_t>{1000});
  EXPECT_EQ(cfg.seed, 1u);
  EXPECT_EQ(cfg.repetitions, kDefaultRepetitions);
  EXPECT_EQ(cfg.grid_points, kDefaultGridPoints);
  EXPECT_TRUE(cfg.out_path.empty());
}

TEST(config, db_form_and_lists) {
  const auto cfg = parse_config(R"({
    "state": {"squeezing_db": 3.21, "antisqueezing_db": 3.41},
    "run": {"thetas": [0.1, 0.2], "n_samples": [100, 300], "seed": 18446744073709551615},
    "out": {"path": "res"}})");
  EXPECT_NEAR(purity(cfg.state->resolve()), 0.977, 1e-3);
  EXPECT_EQ(*cfg.thetas, (std::vector<double>{0.1, 0.2}));
  EXPECT_EQ(cfg.n_samples, (std::vector<std::size_t>{100, 300}));
  EXPECT_EQ(cfg.seed, 18446744073709551615ULL);
  EXPECT_EQ(cfg.out_path, "res");
}

TEST(config, both_state_forms_name_both_keys) {
  const auto errors = errors_of(R"({"state": {"r": 0.3, "r_prime": 0, "squeezing_db": 3}, "run": {"seed": 1}})");
  ASSERT_EQ(errors.size(), 1u);
  EXPECT_NE(errors[0].find("state.r"), std::string::npos);
  EXPECT_NE(errors[0].find("state.squeezing_db"), std::string::npos);
}

TEST(config, theta_out_of_range_cites_interval) {
  const auto errors = errors_of(R"({"state": {"r": 0.3, "r_prime": 0}, "run": {"theta": 2.0, "seed": 1}})");
  ASSERT_EQ(errors.size(), 1u);
  EXPECT_NE(errors[0].find("[0, pi/2]"), std::string::npos);
  EXPECT_NE(errors[0].find("run.theta"), std::string::npos);
}

TEST(config, all_errors_are_reported) {
  const auto errors = errors_of(R"({"run": {"theta": -1, "thetas": [0.1], "repetitions": 0, "grid_points": 10, "bogus": 1}, "extra": true})");
  EXPECT_TRUE(any_contains(errors, "missing required key: state"));
  EXPECT_TRUE(any_contains(errors, "missing required key: run.seed"));
  EXPECT_TRUE(any_contains(errors, "both run.theta and run.thetas"));
  EXPECT_TRUE(any_contains(errors, "run.repetitions"));
  EXPECT_TRUE(any_contains(errors, "run.grid_points"));
  EXPECT_TRUE(any_contains(errors, "unknown key: run.bogus"));
  EXPECT_TRUE(any_contains(errors, "unknown key: extra"));
  EXPECT_GE(errors.size(), 7u);
}

TEST(config, invalid_state_values) {
  EXPECT_TRUE(any_contains(errors_of(R"({"state": {"r": -0.1, "r_prime": 0}, "run": {"seed": 1}})"), "r must be"));
  EXPECT_TRUE(any_contains(errors_of(R"({"state": {"squeezing_db": 5, "antisqueezing_db": 3}, "run": {"seed": 1}})"),
                           "antisqueezing_db"));
  EXPECT_TRUE(any_contains(errors_of(R"({"state": {"r": 0.1}, "run": {"seed": 1}})"),
                           "missing required key: state.r_prime"));
  EXPECT_TRUE(any_contains(errors_of("{not json"), "not valid JSON"));
}

TEST(config, states_list_for_scans) {
  const auto cfg = parse_config(R"({"states": [{"r": 0.3, "r_prime": 0}, {"squeezing_db": 6.02, "antisqueezing_db": 10.96}],
                                    "run": {"seed": 4}})");
  EXPECT_FALSE(cfg.state);
  ASSERT_EQ(cfg.states.size(), 2u);
  EXPECT_TRUE(any_contains(errors_of(R"({"state": {"r": 0.3, "r_prime": 0}, "states": [], "run": {"seed": 1}})"),
                           "both state and states"));
}

TEST(config, meta_round_trip) {
  ExperimentConfig cfg;
  cfg.state = StateSpec{NoiseLevelsDb{3.21, 4.23}};
  cfg.thetas = default_phase_list();
  cfg.n_samples = {100, 300, 500, 1000};
  cfg.repetitions = 7;
  cfg.seed = 0xDEADBEEFCAFEULL;
  cfg.grid_points = 4096;
  cfg.out_path = "out/dir";
  const std::string line = std::string(csv::kMetaPrefix) + make_meta("sweep", config_to_json(cfg)).dump();
  EXPECT_EQ(config_from_meta(line), cfg);

  ExperimentConfig single;
  single.states = {StateSpec{ModelParameters{0.1 + 0.2, 1.0 / 3.0}}};
  single.theta = 0.1;
  single.seed = 3;
  EXPECT_EQ(config_from_meta(make_meta("x", config_to_json(single)).dump()), single);
}

TEST(config, overrides_take_precedence_per_key) {
  auto doc = nlohmann::json::parse(R"({"state": {"r": 0.3, "r_prime": 0.1},
    "run": {"theta": 0.4, "n_samples": 100, "repetitions": 5, "seed": 1, "grid_points": 512}, "out": {"path": "a"}})");
  const auto file_only = config_from_json(doc);

  const auto with = [&](auto mutate) {
    auto d = doc;
    ConfigOverrides o;
    mutate(o);
    apply_overrides(d, o);
    return config_from_json(d);
  };
  // No flags: file values survive.
  EXPECT_EQ(with([](ConfigOverrides&) {}), file_only);

  auto c = with([](ConfigOverrides& o) { o.r = 0.5; });
  EXPECT_EQ(c.state->resolve(), SqueezedThermalState(0.5, 0.1));
  c = with([](ConfigOverrides& o) { o.r_prime = 0.0; });
  EXPECT_EQ(c.state->resolve(), SqueezedThermalState(0.3, 0.0));
  c = with([](ConfigOverrides& o) { o.squeezing_db = 3.0, o.antisqueezing_db = 4.0; });
  EXPECT_EQ(c.state, (StateSpec{NoiseLevelsDb{3.0, 4.0}}));
  c = with([](ConfigOverrides& o) { o.thetas = {0.1}; });
  EXPECT_EQ(c.theta, 0.1);
  c = with([](ConfigOverrides& o) { o.thetas = {0.1, 0.2}; });
  EXPECT_FALSE(c.theta);
  EXPECT_EQ(*c.thetas, (std::vector<double>{0.1, 0.2}));
  c = with([](ConfigOverrides& o) { o.n_samples = {7}; });
  EXPECT_EQ(c.n_samples, std::vector<std::size_t>{7});
  c = with([](ConfigOverrides& o) { o.repetitions = 9; });
  EXPECT_EQ(c.repetitions, 9u);
  c = with([](ConfigOverrides& o) { o.seed = 42; });
  EXPECT_EQ(c.seed, 42u);
  c = with([](ConfigOverrides& o) { o.grid_points = 128; });
  EXPECT_EQ(c.grid_points, 128u);
  c = with([](ConfigOverrides& o) { o.out_path = "b"; });
  EXPECT_EQ(c.out_path, "b");

  // Defaults apply when neither file nor flag sets a key.
  auto bare = nlohmann::json::parse(R"({"state": {"r": 0.3, "r_prime": 0}, "run": {"seed": 1}})");
  apply_overrides(bare, {});
  EXPECT_EQ(config_from_json(bare).repetitions, kDefaultRepetitions);

  // Both state forms on the command line is a validation error.
  auto d = doc;
  ConfigOverrides o;
  o.r = 0.2;
  o.squeezing_db = 3.0;
  apply_overrides(d, o);
  EXPECT_THROW((void)config_from_json(d), ConfigError);
}
