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

// Precision limits for homodyne phase estimation with a squeezed thermal
// probe: homodyne Fisher information, its optimum, the quantum Fisher
// information, and the SQL / OCRB / QCRB variance ladder.
//
// Per-measurement quantities (fisher_information, max_fisher, qfi) never take
// N; the variance bounds always do.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "sqmetro/gaussian_state.hpp"
#include "sqmetro/measurement.hpp"

namespace sqmetro {

/// Raised when a bound diverges because the probe carries no phase information.
class NoPhaseInformation : public std::domain_error {
 public:
  explicit NoPhaseInformation(const std::string& what) : std::domain_error(what) {}
};

namespace detail {
inline void require_measurements(std::size_t n_meas) {
  if (n_meas == 0) throw std::invalid_argument("number of measurements N must be >= 1");
}
inline double squeezing_information(const SqueezedThermalState& state) {
  const double nr = state.squeezing_photons();
  if (!(nr > 0.0)) throw NoPhaseInformation("no phase information: vacuum probe (n_r = 0)");
  return 8.0 * nr * (nr + 1.0);
}
}  // namespace detail

/// Homodyne Fisher information per measurement at phase theta.
[[nodiscard]] inline double fisher_information(const SqueezedThermalState& state, double theta) {
  const double spread = std::exp(2.0 * state.r()) - std::exp(-2.0 * state.r() - 2.0 * state.r_prime());
  const double s2t = std::sin(2.0 * theta);
  const double sigma2 = marginal_sigma2(state, theta);
  return s2t * s2t * spread * spread / (2.0 * sigma2 * sigma2);
}

/// Phase at which the homodyne Fisher information peaks, in (0, pi/4].
[[nodiscard]] inline double optimal_phase(const SqueezedThermalState& state) {
  return 0.5 * std::acos(std::tanh(2.0 * state.r() + state.r_prime()));
}

/// 2 sinh^2(2r + r').
[[nodiscard]] inline double max_fisher(const SqueezedThermalState& state) {
  const double s = std::sinh(2.0 * state.r() + state.r_prime());
  return 2.0 * s * s;
}

/// Quantum Fisher information per measurement. Zero for the vacuum.
[[nodiscard]] inline double qfi(const SqueezedThermalState& state) {
  const double nr = state.squeezing_photons();
  return 8.0 * nr * (nr + 1.0) * 2.0 / (1.0 + std::exp(-2.0 * state.r_prime()));
}

/// Best variance reachable with homodyne detection, 1 / (8 N n_r (n_r + 1)).
[[nodiscard]] inline double ocrb(const SqueezedThermalState& state, std::size_t n_meas) {
  detail::require_measurements(n_meas);
  return 1.0 / (static_cast<double>(n_meas) * detail::squeezing_information(state));
}

/// Measurement-independent bound: the OCRB scaled by (1 + e^{-2r'}) / 2.
[[nodiscard]] inline double qcrb(const SqueezedThermalState& state, std::size_t n_meas) {
  return ocrb(state, n_meas) * 0.5 * (1.0 + std::exp(-2.0 * state.r_prime()));
}

/// Coherent-probe limit 1 / (4 N n) for mean photon number n.
[[nodiscard]] inline double sql(double mean_photon, std::size_t n_meas) {
  detail::require_measurements(n_meas);
  if (!(mean_photon > 0.0)) {
    throw NoPhaseInformation("no photons: SQL diverges for mean photon number " +
                             std::to_string(mean_photon));
  }
  return 1.0 / (4.0 * static_cast<double>(n_meas) * mean_photon);
}

/// Cramer-Rao variance 1 / (N F(theta)); +inf where F vanishes.
[[nodiscard]] inline double inverse_fisher_bound(const SqueezedThermalState& state, double theta,
                                                 std::size_t n_meas) {
  detail::require_measurements(n_meas);
  const double f = fisher_information(state, theta);
  if (!(f > 0.0)) return std::numeric_limits<double>::infinity();
  return 1.0 / (static_cast<double>(n_meas) * f);
}

struct BoundsReport {
  double theta = 0.0;
  double fisher = 0.0;
  double inv_nf = 0.0;
  double sql = 0.0;
  double ocrb = 0.0;
  double qcrb = 0.0;
  std::size_t n_meas = 1;
  double mean_photon = 0.0;
};

/// All bounds at one phase. Throws NoPhaseInformation for the vacuum.
[[nodiscard]] inline BoundsReport bounds_report(const SqueezedThermalState& state, double theta,
                                                std::size_t n_meas) {
  const double n = mean_photon_number(state);
  return {theta,
          fisher_information(state, theta),
          inverse_fisher_bound(state, theta, n_meas),
          sql(n, n_meas),
          ocrb(state, n_meas),
          qcrb(state, n_meas),
          n_meas,
          n};
}

/// Phase interval on [0, pi/2] around the optimum where homodyne estimation
/// beats the SQL of an equal-energy coherent probe, i.e. F(theta) > 4n.
struct PhaseInterval {
  double theta_low = 0.0;
  double theta_high = 0.0;
  bool empty = true;

  [[nodiscard]] double width() const noexcept { return empty ? 0.0 : theta_high - theta_low; }
  [[nodiscard]] bool contains(double theta) const noexcept {
    return !empty && theta >= theta_low && theta <= theta_high;
  }
};

inline constexpr std::size_t kIntervalScanPoints = 10000;

[[nodiscard]] inline PhaseInterval beyond_sql_interval(const SqueezedThermalState& state,
                                                       double tolerance = 1e-10) {
  const double threshold = 4.0 * mean_photon_number(state);
  const auto excess = [&](double theta) { return fisher_information(state, theta) - threshold; };

  // Dense pre-scan seeds the brackets; the run containing theta_opt is kept.
  const double step = kHalfPi / static_cast<double>(kIntervalScanPoints);
  const auto at = [&](std::size_t i) {
    return i == kIntervalScanPoints ? kHalfPi : static_cast<double>(i) * step;
  };
  const double theta_opt = optimal_phase(state);
  if (!(excess(theta_opt) > 0.0)) return {};

  const auto bisect = [&](double outside, double inside) {
    while (std::abs(inside - outside) > tolerance) {
      const double mid = 0.5 * (inside + outside);
      (excess(mid) > 0.0 ? inside : outside) = mid;
    }
    return inside;
  };

  PhaseInterval out{0.0, kHalfPi, false};
  const std::size_t below = std::min(static_cast<std::size_t>(theta_opt / step), kIntervalScanPoints - 1);
  // Walk out from theta_opt to the last grid point on each side that beats the
  // SQL; a negative "inside" marks a run that reaches the domain edge.
  std::size_t lo = below;
  double lo_inside = theta_opt;
  if (excess(at(lo)) > 0.0) {
    while (lo > 0 && excess(at(lo - 1)) > 0.0) --lo;
    lo_inside = at(lo);
    if (lo == 0) lo_inside = -1.0;
  } else {
    ++lo;
  }
  if (lo_inside >= 0.0) out.theta_low = bisect(at(lo - 1), lo_inside);

  std::size_t hi = below + 1;
  double hi_inside = theta_opt;
  if (excess(at(hi)) > 0.0) {
    while (hi < kIntervalScanPoints && excess(at(hi + 1)) > 0.0) ++hi;
    hi_inside = hi == kIntervalScanPoints ? -1.0 : at(hi);
  } else {
    --hi;
  }
  if (hi_inside >= 0.0) out.theta_high = bisect(at(hi + 1), hi_inside);
  return out;
}

}  // namespace sqmetro
