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

// Seeded Monte Carlo harness: single trials, repetitions at one phase, phase
// sweeps with the bound ladder attached, and beyond-SQL interval scans over
// probes of different purity.
//
// Seeding: repetition k at a phase with seed s uses substream(s, k). A sweep
// gives phase i the seed substream(seed, i); a purity scan gives state j the
// seed substream(seed, j). Results are stored by (phase, repetition) index,
// so reports do not depend on thread count or completion order.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include "sqmetro/bayes.hpp"
#include "sqmetro/bounds.hpp"
#include "sqmetro/gaussian_state.hpp"
#include "sqmetro/measurement.hpp"
#include "sqmetro/rng.hpp"

namespace sqmetro {

/// State given either by model parameters or by measured noise levels.
struct ModelParameters {
  double r = 0.0;
  double r_prime = 0.0;
  friend bool operator==(const ModelParameters&, const ModelParameters&) = default;
};

struct StateSpec {
  std::variant<ModelParameters, NoiseLevelsDb> form;

  [[nodiscard]] SqueezedThermalState resolve() const {
    if (const auto* p = std::get_if<ModelParameters>(&form)) return {p->r, p->r_prime};
    const auto& db = std::get<NoiseLevelsDb>(form);
    return from_db(db.squeezing_db, db.antisqueezing_db);
  }

  friend bool operator==(const StateSpec& a, const StateSpec& b) {
    if (a.form.index() != b.form.index()) return false;
    if (const auto* p = std::get_if<ModelParameters>(&a.form)) {
      return *p == std::get<ModelParameters>(b.form);
    }
    const auto& x = std::get<NoiseLevelsDb>(a.form);
    const auto& y = std::get<NoiseLevelsDb>(b.form);
    return x.squeezing_db == y.squeezing_db && x.antisqueezing_db == y.antisqueezing_db;
  }
};

inline constexpr std::size_t kDefaultSamples = 1000;
inline constexpr std::size_t kDefaultRepetitions = 20;
inline constexpr std::size_t kDefaultPhaseCount = 12;

struct ExperimentConfig {
  std::optional<StateSpec> state;
  std::vector<StateSpec> states;  // purity scans only
  std::optional<double> theta;
  std::optional<std::vector<double>> thetas;
  std::vector<std::size_t> n_samples{kDefaultSamples};
  std::size_t repetitions = kDefaultRepetitions;
  std::uint64_t seed = 0;
  std::size_t grid_points = kDefaultGridPoints;
  std::string out_path;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

/// Phase list used when none is configured: 12 cell midpoints (k + 1/2) pi/24.
[[nodiscard]] inline std::vector<double> default_phase_list(std::size_t count = kDefaultPhaseCount) {
  std::vector<double> out(count);
  for (std::size_t k = 0; k < count; ++k) {
    out[k] = (static_cast<double>(k) + 0.5) * kHalfPi / static_cast<double>(count);
  }
  return out;
}

/// Runs body(i) for i in [0, count) on up to `threads` workers. If any call
/// throws, the exception from the lowest index is rethrown.
template <typename Body>
void parallel_for(std::size_t count, unsigned threads, Body&& body) {
  std::vector<std::exception_ptr> errors(count);
  const auto guarded = [&](std::size_t i) {
    try {
      body(i);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };
  const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(count)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) guarded(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < count; i = next++) guarded(i);
      });
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

struct TrialResult {
  double map_estimate = 0.0;
  double posterior_variance = 0.0;
  friend bool operator==(const TrialResult&, const TrialResult&) = default;
};

/// sample_homodyne -> posterior -> MAP and posterior variance.
[[nodiscard]] inline TrialResult run_trial(const SqueezedThermalState& state, double theta_true,
                                           std::size_t n_samples, std::uint64_t seed,
                                           std::size_t grid_points = kDefaultGridPoints) {
  const auto grid = posterior(sample_homodyne(state, theta_true, n_samples, seed), grid_points);
  return {map_estimate(grid), posterior_variance(grid)};
}

/// Aggregates over R repetitions at one phase.
struct RepeatedResult {
  double theta = 0.0;
  std::vector<TrialResult> trials;
  double mean_estimate = 0.0;
  /// Sample variance (R - 1 denominator) of the MAP estimates.
  double empirical_variance = 0.0;
  double mean_posterior_variance = 0.0;
  /// Jackknife standard error of empirical_variance.
  double standard_error = 0.0;
};

namespace detail {

inline double sample_variance(std::span<const double> values, std::size_t skip = std::numeric_limits<std::size_t>::max()) {
  double n = 0.0;
  double mean = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i == skip) continue;
    n += 1.0;
    mean += values[i];
  }
  mean /= n;
  double ss = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i == skip) continue;
    ss += (values[i] - mean) * (values[i] - mean);
  }
  return ss / (n - 1.0);
}

inline void check_repetitions(std::size_t repetitions) {
  if (repetitions < 2) {
    throw std::invalid_argument("variance aggregates need repetitions >= 2, got " +
                                std::to_string(repetitions));
  }
}

}  // namespace detail

/// Sample variance of `values` and its jackknife standard error.
struct VarianceEstimate {
  double variance = 0.0;
  double standard_error = 0.0;
};

[[nodiscard]] inline VarianceEstimate jackknife_variance(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n < 3) {
    return {n < 2 ? 0.0 : detail::sample_variance(values), 0.0};
  }
  std::vector<double> leave_one_out(n);
  for (std::size_t i = 0; i < n; ++i) leave_one_out[i] = detail::sample_variance(values, i);
  double mean = 0.0;
  for (double v : leave_one_out) mean += v;
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (double v : leave_one_out) ss += (v - mean) * (v - mean);
  return {detail::sample_variance(values),
          std::sqrt(static_cast<double>(n - 1) / static_cast<double>(n) * ss)};
}

[[nodiscard]] inline RepeatedResult summarize(double theta, std::vector<TrialResult> trials) {
  RepeatedResult out{theta, std::move(trials)};
  std::vector<double> maps;
  maps.reserve(out.trials.size());
  for (const auto& t : out.trials) {
    maps.push_back(t.map_estimate);
    out.mean_estimate += t.map_estimate;
    out.mean_posterior_variance += t.posterior_variance;
  }
  const auto count = static_cast<double>(out.trials.size());
  out.mean_estimate /= count;
  out.mean_posterior_variance /= count;
  const auto jk = jackknife_variance(maps);
  out.empirical_variance = jk.variance;
  out.standard_error = jk.standard_error;
  return out;
}

[[nodiscard]] inline RepeatedResult run_repeated(const SqueezedThermalState& state,
                                                 double theta_true, std::size_t n_samples,
                                                 std::size_t repetitions, std::uint64_t seed,
                                                 std::size_t grid_points = kDefaultGridPoints,
                                                 unsigned threads = 1) {
  detail::check_repetitions(repetitions);
  std::vector<TrialResult> trials(repetitions);
  parallel_for(repetitions, threads, [&](std::size_t k) {
    trials[k] = run_trial(state, theta_true, n_samples, substream(seed, k), grid_points);
  });
  return summarize(theta_true, std::move(trials));
}

struct TrialRow {
  double theta = 0.0;
  std::size_t rep = 0;
  double map_estimate = 0.0;
  double posterior_variance = 0.0;
};

struct AggregateRow {
  double theta = 0.0;
  double mean_estimate = 0.0;
  double empirical_variance = 0.0;
  double mean_posterior_variance = 0.0;
  double standard_error = 0.0;
  double sql = 0.0;
  double ocrb = 0.0;
  double qcrb = 0.0;
  double inv_nf = 0.0;
};

struct ExperimentReport {
  SqueezedThermalState state;
  std::size_t n_samples = 0;
  std::size_t repetitions = 0;
  std::vector<TrialRow> trials;
  std::vector<AggregateRow> aggregates;
};

namespace detail {
inline void check_phases(std::span<const double> thetas) {
  if (thetas.empty()) throw std::invalid_argument("theta list is empty");
  for (double t : thetas) {
    if (!(t >= 0.0 && t <= kHalfPi)) {
      throw std::invalid_argument("theta " + std::to_string(t) + " outside [0, pi/2]");
    }
  }
}
}  // namespace detail

/// Variance-versus-phase experiment. Rows follow the input phase order.
[[nodiscard]] inline ExperimentReport sweep_theta(const SqueezedThermalState& state,
                                                  std::span<const double> thetas,
                                                  std::size_t n_samples, std::size_t repetitions,
                                                  std::uint64_t seed,
                                                  std::size_t grid_points = kDefaultGridPoints,
                                                  unsigned threads = 1) {
  detail::check_phases(thetas);
  detail::check_repetitions(repetitions);
  const std::size_t units = thetas.size() * repetitions;
  std::vector<TrialResult> results(units);
  parallel_for(units, threads, [&](std::size_t u) {
    const std::size_t i = u / repetitions;
    const std::size_t k = u % repetitions;
    results[u] = run_trial(state, thetas[i], n_samples, substream(substream(seed, i), k), grid_points);
  });

  ExperimentReport report{state, n_samples, repetitions, {}, {}};
  const auto bound_ocrb = ocrb(state, n_samples);
  const auto bound_qcrb = qcrb(state, n_samples);
  const auto bound_sql = sql(mean_photon_number(state), n_samples);
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    const auto first = results.begin() + static_cast<std::ptrdiff_t>(i * repetitions);
    std::vector<TrialResult> trials(first, first + static_cast<std::ptrdiff_t>(repetitions));
    for (std::size_t k = 0; k < repetitions; ++k) {
      report.trials.push_back({thetas[i], k, trials[k].map_estimate, trials[k].posterior_variance});
    }
    const auto s = summarize(thetas[i], std::move(trials));
    report.aggregates.push_back({thetas[i], s.mean_estimate, s.empirical_variance,
                                 s.mean_posterior_variance, s.standard_error, bound_sql, bound_ocrb,
                                 bound_qcrb, inverse_fisher_bound(state, thetas[i], n_samples)});
  }
  return report;
}

/// Width covered by the widest contiguous run of flagged phases. Each phase
/// owns the span between the midpoints to its neighbours, clamped to
/// [0, pi/2]. `thetas` must be increasing.
[[nodiscard]] inline double widest_run_width(std::span<const double> thetas,
                                             const std::vector<bool>& flagged) {
  const std::size_t n = thetas.size();
  const auto lower = [&](std::size_t i) { return i == 0 ? 0.0 : 0.5 * (thetas[i - 1] + thetas[i]); };
  const auto upper = [&](std::size_t i) {
    return i + 1 == n ? kHalfPi : 0.5 * (thetas[i] + thetas[i + 1]);
  };
  double best = 0.0;
  std::size_t i = 0;
  while (i < n) {
    if (!flagged[i]) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < n && flagged[j + 1]) ++j;
    best = std::max(best, upper(j) - lower(i));
    i = j + 1;
  }
  return best;
}

struct PurityRow {
  double purity = 0.0;
  double r = 0.0;
  double r_prime = 0.0;
  PhaseInterval interval;
  double delta_theta_theory = 0.0;
  /// Resolution-limited by the phase list spacing; the theory value is authoritative.
  double delta_theta_empirical = 0.0;
};

/// Beyond-SQL interval width per probe, from theory and from a phase sweep.
[[nodiscard]] inline std::vector<PurityRow> purity_scan(std::span<const SqueezedThermalState> states,
                                                        std::span<const double> thetas,
                                                        std::size_t n_samples,
                                                        std::size_t repetitions, std::uint64_t seed,
                                                        std::size_t grid_points = kDefaultGridPoints,
                                                        unsigned threads = 1) {
  if (states.empty()) throw std::invalid_argument("purity scan needs at least one state");
  std::vector<double> sorted(thetas.begin(), thetas.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<PurityRow> rows;
  for (std::size_t j = 0; j < states.size(); ++j) {
    const auto& state = states[j];
    const auto report = sweep_theta(state, sorted, n_samples, repetitions, substream(seed, j),
                                    grid_points, threads);
    std::vector<bool> beats(sorted.size());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
      beats[i] = report.aggregates[i].empirical_variance < report.aggregates[i].sql;
    }
    const auto interval = beyond_sql_interval(state);
    rows.push_back({purity(state), state.r(), state.r_prime(), interval, interval.width(),
                    widest_run_width(sorted, beats)});
  }
  return rows;
}

/// Posteriors for increasing record lengths at one phase. Each record is a
/// prefix of a single sample stream of the longest length, as when the first
/// N points of one acquisition are analysed.
[[nodiscard]] inline std::vector<PosteriorGrid> posterior_curves(
    const SqueezedThermalState& state, double theta_true, std::span<const std::size_t> n_list,
    std::uint64_t seed, std::size_t grid_points = kDefaultGridPoints) {
  if (n_list.empty()) throw std::invalid_argument("posterior_curves needs at least one N");
  const auto longest = *std::max_element(n_list.begin(), n_list.end());
  const auto record = sample_homodyne(state, theta_true, longest, seed);
  std::vector<PosteriorGrid> out;
  out.reserve(n_list.size());
  for (const auto n : n_list) {
    SampleSet prefix = record;
    prefix.samples.resize(n);
    out.push_back(posterior(prefix, grid_points));
  }
  return out;
}

}  // namespace sqmetro
