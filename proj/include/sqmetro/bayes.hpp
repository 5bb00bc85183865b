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

// Grid posterior over the phase on [0, pi/2] with a flat prior 2/pi.
//
// Log densities are accumulated unnormalized; the normalized density is
// obtained by subtracting the maximum, exponentiating, and dividing by the
// trapezoidal integral.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sqmetro/gaussian_state.hpp"
#include "sqmetro/measurement.hpp"

namespace sqmetro {

inline constexpr std::size_t kDefaultGridPoints = 2048;
inline constexpr std::size_t kMinGridPoints = 64;

class UninformativePosterior : public std::domain_error {
 public:
  UninformativePosterior() : std::domain_error("uninformative posterior: density is flat") {}
};

/// n uniform points on [0, pi/2] with both endpoints exact.
[[nodiscard]] inline std::vector<double> uniform_phase_grid(std::size_t points) {
  if (points < 2) throw std::invalid_argument("phase grid needs at least 2 points");
  std::vector<double> grid(points);
  const double step = kHalfPi / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) grid[i] = static_cast<double>(i) * step;
  grid.back() = kHalfPi;
  return grid;
}

/// Trapezoidal integral of values sampled on an increasing grid.
[[nodiscard]] inline double trapezoid(std::span<const double> grid, std::span<const double> values) {
  double sum = 0.0;
  for (std::size_t i = 1; i < grid.size(); ++i) {
    sum += 0.5 * (grid[i] - grid[i - 1]) * (values[i] + values[i - 1]);
  }
  return sum;
}

class PosteriorGrid {
 public:
  PosteriorGrid(std::vector<double> thetas, std::vector<double> log_density)
      : thetas_(std::move(thetas)), log_density_(std::move(log_density)) {
    if (thetas_.size() < kMinGridPoints) {
      throw std::invalid_argument("posterior grid needs >= " + std::to_string(kMinGridPoints) +
                                  " points, got " + std::to_string(thetas_.size()));
    }
    if (log_density_.size() != thetas_.size()) {
      throw std::invalid_argument("log density and grid sizes differ");
    }
    if (thetas_.front() != 0.0 || thetas_.back() != kHalfPi ||
        !std::is_sorted(thetas_.begin(), thetas_.end(), std::less_equal<>{})) {
      throw std::invalid_argument("grid must increase strictly from 0 to pi/2");
    }
    normalize();
  }

  [[nodiscard]] std::span<const double> thetas() const noexcept { return thetas_; }
  [[nodiscard]] std::span<const double> log_density() const noexcept { return log_density_; }
  [[nodiscard]] std::span<const double> density() const noexcept { return density_; }
  [[nodiscard]] std::size_t grid_points() const noexcept { return thetas_.size(); }
  /// Trapezoidal integral of exp(log_density - max log_density).
  [[nodiscard]] double normalization() const noexcept { return norm_; }
  [[nodiscard]] double max_log_density() const noexcept { return max_log_; }

 private:
  void normalize() {
    max_log_ = *std::max_element(log_density_.begin(), log_density_.end());
    if (!std::isfinite(max_log_)) throw std::invalid_argument("log density has no finite maximum");
    density_.resize(log_density_.size());
    std::transform(log_density_.begin(), log_density_.end(), density_.begin(),
                   [this](double l) { return std::exp(l - max_log_); });
    norm_ = trapezoid(thetas_, density_);
    for (double& d : density_) d /= norm_;
  }

  std::vector<double> thetas_;
  std::vector<double> log_density_;
  std::vector<double> density_;
  double norm_ = 1.0;
  double max_log_ = 0.0;
};

/// Flat prior p(theta) = 2/pi; the posterior before any data.
[[nodiscard]] inline PosteriorGrid prior_grid(std::size_t grid_points = kDefaultGridPoints) {
  auto thetas = uniform_phase_grid(grid_points);
  std::vector<double> log_density(thetas.size(), std::log(2.0 / std::numbers::pi));
  return {std::move(thetas), std::move(log_density)};
}

/// Posterior after all samples in the record.
///
/// The sum of Gaussian log-likelihoods depends on the data only through N and
/// sum(x_k^2), so each grid point costs O(1) after one pass over the samples:
///   sum_k ln p(x_k|theta) = -N/2 ln(2 pi V) - sum(x^2) / (2V),  V = Var[x | theta].
[[nodiscard]] inline PosteriorGrid posterior(const SampleSet& samples,
                                             std::size_t grid_points = kDefaultGridPoints) {
  if (samples.samples.empty()) throw std::invalid_argument("posterior needs at least one sample");
  auto thetas = uniform_phase_grid(std::max<std::size_t>(grid_points, 2));
  const double n = static_cast<double>(samples.size());
  double sum_sq = 0.0;
  for (double x : samples.samples) sum_sq += x * x;
  const double log_prior = std::log(2.0 / std::numbers::pi);
  std::vector<double> log_density(thetas.size());
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    const double var = marginal_variance(samples.state, thetas[i]);
    log_density[i] = -0.5 * n * std::log(2.0 * std::numbers::pi * var) - sum_sq / (2.0 * var) + log_prior;
  }
  return {std::move(thetas), std::move(log_density)};
}

/// One Bayes step: the current posterior becomes the prior for outcome x.
[[nodiscard]] inline PosteriorGrid update(const PosteriorGrid& prior, double x,
                                          const SqueezedThermalState& state) {
  std::vector<double> thetas(prior.thetas().begin(), prior.thetas().end());
  std::vector<double> log_density(prior.log_density().begin(), prior.log_density().end());
  for (std::size_t i = 0; i < thetas.size(); ++i) log_density[i] += log_likelihood(x, thetas[i], state);
  return {std::move(thetas), std::move(log_density)};
}

/// Posterior mode, refined by a parabola through the argmax and its neighbours.
[[nodiscard]] inline double map_estimate(const PosteriorGrid& grid) {
  const auto density = grid.density();
  const auto thetas = grid.thetas();
  const auto [min_it, max_it] = std::minmax_element(density.begin(), density.end());
  if (*max_it - *min_it <= 1e-15 * *max_it) throw UninformativePosterior();
  const auto i = static_cast<std::size_t>(max_it - density.begin());
  if (i == 0 || i + 1 == density.size()) return thetas[i];
  const double left = density[i - 1];
  const double mid = density[i];
  const double right = density[i + 1];
  const double curvature = left - 2.0 * mid + right;
  if (!(curvature < 0.0)) return thetas[i];
  const double shift = 0.5 * (left - right) / curvature;
  // Uniform spacing assumed locally; shift is within half a step of the argmax.
  const double step = shift < 0 ? thetas[i] - thetas[i - 1] : thetas[i + 1] - thetas[i];
  return thetas[i] + shift * step;
}

[[nodiscard]] inline double posterior_mean(const PosteriorGrid& grid) {
  const auto thetas = grid.thetas();
  const auto density = grid.density();
  std::vector<double> first(thetas.size());
  for (std::size_t i = 0; i < thetas.size(); ++i) first[i] = thetas[i] * density[i];
  return trapezoid(thetas, first);
}

/// <theta^2> - <theta>^2 by the trapezoidal rule.
[[nodiscard]] inline double posterior_variance(const PosteriorGrid& grid) {
  const auto thetas = grid.thetas();
  const auto density = grid.density();
  std::vector<double> first(thetas.size());
  std::vector<double> second(thetas.size());
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    first[i] = thetas[i] * density[i];
    second[i] = thetas[i] * first[i];
  }
  const double mean = trapezoid(thetas, first);
  return std::max(0.0, trapezoid(thetas, second) - mean * mean);
}

}  // namespace sqmetro
