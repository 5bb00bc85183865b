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

// Ideal homodyne measurement of a rotated squeezed thermal state.
//
// Integrating the Wigner function over p leaves a zero-mean Gaussian in x
// whose variance is the xx entry of the rotated covariance,
//   Var[x] = e^{2r'} Sigma^2 / 2,  Sigma^2 = e^{-2r-2r'} cos^2(theta) + e^{2r} sin^2(theta).

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "sqmetro/csv.hpp"
#include "sqmetro/gaussian_state.hpp"
#include "sqmetro/rng.hpp"

namespace sqmetro {

/// Sigma_theta^2 as it appears in the marginal likelihood.
[[nodiscard]] inline double marginal_sigma2(const SqueezedThermalState& state, double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return std::exp(-2.0 * state.r() - 2.0 * state.r_prime()) * c * c +
         std::exp(2.0 * state.r()) * s * s;
}

/// Variance of the homodyne outcome x at phase theta.
[[nodiscard]] inline double marginal_variance(const SqueezedThermalState& state, double theta) {
  return covariance_at_phase(state, theta).xx;
}

/// ln p(x | theta) for a single homodyne outcome.
[[nodiscard]] inline double log_likelihood(double x, double theta,
                                           const SqueezedThermalState& state) {
  const double two_var = 2.0 * marginal_variance(state, theta);
  return -0.5 * std::log(std::numbers::pi * two_var) - x * x / two_var;
}

/// P(X <= x | theta).
[[nodiscard]] inline double marginal_cdf(double x, double theta,
                                         const SqueezedThermalState& state) {
  return 0.5 * std::erfc(-x / std::sqrt(2.0 * marginal_variance(state, theta)));
}

/// A homodyne record plus everything needed to regenerate it.
struct SampleSet {
  std::vector<double> samples;
  SqueezedThermalState state;
  double theta_true = 0.0;
  std::uint64_t seed = 0;

  [[nodiscard]] std::size_t size() const noexcept { return samples.size(); }
};

/// Draws n i.i.d. outcomes x_k ~ N(0, marginal_variance(state, theta)).
[[nodiscard]] inline SampleSet sample_homodyne(const SqueezedThermalState& state, double theta,
                                               std::size_t n_samples, std::uint64_t seed) {
  if (n_samples == 0) throw std::invalid_argument("n_samples must be >= 1");
  if (!std::isfinite(theta)) throw std::invalid_argument("theta must be finite");
  SampleSet out{{}, state, theta, seed};
  out.samples.reserve(n_samples);
  const double sd = std::sqrt(marginal_variance(state, theta));
  NormalStream normal(seed);
  for (std::size_t k = 0; k < n_samples; ++k) out.samples.push_back(sd * normal());
  return out;
}

// CSV form: a "# meta: {json}" line carrying state, theta_true, seed and N,
// then "index,x" rows with 17 significant digits.

inline void write_samples_csv(std::ostream& os, const SampleSet& set) {
  const nlohmann::ordered_json meta = {
      {"kind", "samples"},
      {"version", version_string()},
      {"rng", kRngAlgorithm},
      {"r", set.state.r()},
      {"r_prime", set.state.r_prime()},
      {"theta_true", set.theta_true},
      {"seed", set.seed},
      {"n", set.samples.size()},
  };
  csv::write_meta(os, meta.dump());
  os << "index,x\n";
  for (std::size_t k = 0; k < set.samples.size(); ++k) {
    os << k << ',' << csv::format_double(set.samples[k]) << '\n';
  }
}

[[nodiscard]] inline SampleSet read_samples_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line.rfind(csv::kMetaPrefix, 0) != 0) {
    throw std::runtime_error("sample file: missing '# meta:' header line");
  }
  const auto meta = nlohmann::json::parse(line.substr(csv::kMetaPrefix.size()));
  SampleSet set{{},
                SqueezedThermalState(meta.at("r").get<double>(), meta.at("r_prime").get<double>()),
                meta.at("theta_true").get<double>(), meta.at("seed").get<std::uint64_t>()};
  const auto n = meta.at("n").get<std::size_t>();
  if (!std::getline(is, line) || line != "index,x") {
    throw std::runtime_error("sample file: expected 'index,x' column header");
  }
  set.samples.reserve(n);
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw std::runtime_error("sample file: malformed row: " + line);
    if (std::stoull(line.substr(0, comma)) != set.samples.size()) {
      throw std::runtime_error("sample file: rows out of order at: " + line);
    }
    set.samples.push_back(csv::parse_double(std::string_view(line).substr(comma + 1)));
  }
  if (set.samples.size() != n) {
    throw std::runtime_error("sample file: header says " + std::to_string(n) + " samples, found " +
                             std::to_string(set.samples.size()));
  }
  return set;
}

}  // namespace sqmetro
