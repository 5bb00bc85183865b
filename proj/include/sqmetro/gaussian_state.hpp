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

// Single-mode squeezed thermal states and their phase-space algebra.
//
// Quadratures are scaled so that the vacuum variance is 1/2. A state is
// described by its squeezing r and the extra antisqueezing r' that makes it
// impure; the unrotated covariance is (1/2) diag(e^{-2r}, e^{2r+2r'}).

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

namespace sqmetro {

inline constexpr double kHalfPi = std::numbers::pi / 2.0;

/// Symmetric 2x2 covariance matrix in (x, p) quadrature space.
struct CovarianceMatrix2 {
  double xx = 0.5;
  double xp = 0.0;
  double pp = 0.5;

  [[nodiscard]] double determinant() const noexcept { return xx * pp - xp * xp; }
  [[nodiscard]] double trace() const noexcept { return xx + pp; }
};

class SqueezedThermalState {
 public:
  SqueezedThermalState() = default;

  SqueezedThermalState(double r, double r_prime) : r_(r), r_prime_(r_prime) {
    if (!std::isfinite(r) || r < 0.0) {
      throw std::invalid_argument("squeezing r must be finite and >= 0, got " + std::to_string(r));
    }
    if (!std::isfinite(r_prime) || r_prime < 0.0) {
      throw std::invalid_argument("extra antisqueezing r_prime must be finite and >= 0, got " +
                                  std::to_string(r_prime));
    }
  }

  [[nodiscard]] double r() const noexcept { return r_; }
  [[nodiscard]] double r_prime() const noexcept { return r_prime_; }

  /// Variance of the squeezed quadrature, e^{-2r}/2.
  [[nodiscard]] double squeezed_variance() const noexcept { return 0.5 * std::exp(-2.0 * r_); }
  /// Variance of the antisqueezed quadrature, e^{2r+2r'}/2.
  [[nodiscard]] double antisqueezed_variance() const noexcept {
    return 0.5 * std::exp(2.0 * r_ + 2.0 * r_prime_);
  }

  [[nodiscard]] CovarianceMatrix2 base_covariance() const noexcept {
    return {squeezed_variance(), 0.0, antisqueezed_variance()};
  }

  /// Photon number contributed by squeezing alone, sinh^2(r + r'/2).
  [[nodiscard]] double squeezing_photons() const noexcept {
    const double s = std::sinh(r_ + 0.5 * r_prime_);
    return s * s;
  }

  [[nodiscard]] bool is_vacuum() const noexcept { return r_ == 0.0 && r_prime_ == 0.0; }

  friend bool operator==(const SqueezedThermalState&, const SqueezedThermalState&) = default;

 private:
  double r_ = 0.0;
  double r_prime_ = 0.0;
};

/// Covariance of the state after a phase rotation by theta.
[[nodiscard]] inline CovarianceMatrix2 covariance_at_phase(const SqueezedThermalState& state,
                                                           double theta) {
  const double sq = std::exp(-2.0 * state.r());
  const double asq = std::exp(2.0 * state.r() + 2.0 * state.r_prime());
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const double c2 = c * c;
  const double s2 = s * s;
  return {
      0.5 * (sq * c2 + asq * s2),
      0.25 * (asq - sq) * std::sin(2.0 * theta),
      0.5 * (asq * c2 + sq * s2),
  };
}

/// n = e^{r'} n_r + (e^{r'} - 1)/2 with n_r = sinh^2(r + r'/2).
[[nodiscard]] inline double mean_photon_number(const SqueezedThermalState& state) noexcept {
  const double g = std::exp(state.r_prime());
  return g * state.squeezing_photons() + 0.5 * (g - 1.0);
}

/// Tr(rho^2) = 1 / (2 sqrt(det sigma)) = e^{-r'}.
[[nodiscard]] inline double purity(const SqueezedThermalState& state) noexcept {
  return std::exp(-state.r_prime());
}

/// Noise levels relative to the vacuum variance, both as positive dB magnitudes.
struct NoiseLevelsDb {
  double squeezing_db = 0.0;
  double antisqueezing_db = 0.0;
};

namespace detail {
inline constexpr double kNepersPerDb = std::numbers::ln10 / 20.0;
}  // namespace detail

/// Builds a state from measured squeezing (below vacuum) and antisqueezing
/// (above vacuum) levels. Rejects antisqueezing below squeezing, which would
/// need r' < 0.
[[nodiscard]] inline SqueezedThermalState from_db(double squeezing_db, double antisqueezing_db) {
  if (!std::isfinite(squeezing_db) || squeezing_db < 0.0) {
    throw std::invalid_argument("squeezing_db must be finite and >= 0, got " +
                                std::to_string(squeezing_db));
  }
  if (!std::isfinite(antisqueezing_db) || antisqueezing_db < squeezing_db) {
    throw std::invalid_argument("antisqueezing_db (" + std::to_string(antisqueezing_db) +
                                ") must be >= squeezing_db (" + std::to_string(squeezing_db) + ")");
  }
  return SqueezedThermalState(squeezing_db * detail::kNepersPerDb,
                              (antisqueezing_db - squeezing_db) * detail::kNepersPerDb);
}

[[nodiscard]] inline NoiseLevelsDb to_db(const SqueezedThermalState& state) noexcept {
  return {state.r() / detail::kNepersPerDb,
          (state.r() + state.r_prime()) / detail::kNepersPerDb};
}

/// Wigner function of the rotated state at phase-space point (x, p).
/// Used for plots and checks; the inference path works on marginals only.
[[nodiscard]] inline double wigner_value(const SqueezedThermalState& state, double theta, double x,
                                         double p) {
  const CovarianceMatrix2 cov = covariance_at_phase(state, theta);
  const double det = cov.determinant();
  // X^T sigma^{-1} X with the explicit 2x2 inverse.
  const double quad = (cov.pp * x * x - 2.0 * cov.xp * x * p + cov.xx * p * p) / det;
  return std::exp(-0.5 * quad) / (2.0 * std::numbers::pi * std::sqrt(det));
}

}  // namespace sqmetro
