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

// Figure analogues: per-figure CSV files plus optional SVG renderings,
// written into one output directory.
//
//   posterior     posterior_N<N>.csv ...      posterior.svg
//   simulate      simulate_trials.csv, simulate_aggregate.csv
//   sweep         sweep_trials.csv, sweep_aggregate.csv   sweep.svg
//   purity scan   purity_scan.csv             purity_scan.svg

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "sqmetro/bayes.hpp"
#include "sqmetro/config.hpp"
#include "sqmetro/experiments.hpp"
#include "sqmetro/report_io.hpp"
#include "sqmetro/svg_plot.hpp"

namespace sqmetro {

namespace detail {
inline const char* palette(std::size_t i) {
  static constexpr const char* colours[] = {"black", "green", "blue", "red", "purple", "orange"};
  return colours[i % std::size(colours)];
}
}  // namespace detail

[[nodiscard]] inline svg::Chart posterior_chart(std::span<const PosteriorGrid> curves,
                                                std::span<const std::size_t> n_list) {
  svg::Chart chart{"Posterior over phase", "theta (rad)", "p(theta | x)", false, {}, {}};
  for (std::size_t c = 0; c < curves.size(); ++c) {
    svg::Line line{"N = " + std::to_string(n_list[c]), detail::palette(c), {}, c > 0};
    const auto& g = curves[c];
    for (std::size_t i = 0; i < g.grid_points(); ++i) line.points.emplace_back(g.thetas()[i], g.density()[i]);
    chart.lines.push_back(std::move(line));
  }
  return chart;
}

/// Empirical variance with jackknife error bars against SQL, OCRB and QCRB.
[[nodiscard]] inline svg::Chart sweep_chart(const ExperimentReport& report) {
  svg::Chart chart{"Estimation variance versus phase", "theta (rad)", "Var[theta]", true, {}, {}};
  if (report.aggregates.empty()) return chart;
  const auto& a0 = report.aggregates.front();
  const auto flat = [](double y) { return std::vector<std::pair<double, double>>{{0.0, y}, {kHalfPi, y}}; };
  chart.lines.push_back({"SQL", "blue", flat(a0.sql), true});
  chart.lines.push_back({"OCRB", "orange", flat(a0.ocrb), true});
  chart.lines.push_back({"QCRB", "green", flat(a0.qcrb), true});
  svg::Scatter points{"empirical", "red", {}, false};
  for (const auto& a : report.aggregates) points.markers.push_back({a.theta, a.empirical_variance, a.standard_error});
  chart.scatters.push_back(std::move(points));
  return chart;
}

[[nodiscard]] inline svg::Chart purity_chart(std::span<const PurityRow> rows) {
  svg::Chart chart{"Beyond-SQL phase interval versus purity", "purity", "delta theta (rad)", false, {}, {}};
  svg::Scatter theory{"theory", "black", {}, false};
  svg::Scatter empirical{"simulated", "red", {}, true};
  for (const auto& r : rows) {
    theory.markers.push_back({r.purity, r.delta_theta_theory, 0.0});
    empirical.markers.push_back({r.purity, r.delta_theta_empirical, 0.0});
  }
  chart.scatters.push_back(std::move(theory));
  chart.scatters.push_back(std::move(empirical));
  return chart;
}

namespace detail {
inline void write_svg(const std::filesystem::path& path, const svg::Chart& chart) {
  write_file(path, [&](std::ostream& os) { os << svg::render(chart); });
}
}  // namespace detail

/// Returns the paths written.
inline std::vector<std::filesystem::path> emit_posterior_data(const std::filesystem::path& dir,
                                                              const ExperimentConfig& cfg,
                                                              std::span<const PosteriorGrid> curves,
                                                              std::span<const std::size_t> n_list,
                                                              bool with_svg) {
  std::vector<std::filesystem::path> out;
  for (std::size_t c = 0; c < curves.size(); ++c) {
    auto meta = make_meta("posterior", config_to_json(cfg));
    meta["n_samples"] = n_list[c];
    out.push_back(dir / ("posterior_N" + std::to_string(n_list[c]) + ".csv"));
    write_file(out.back(), [&](std::ostream& os) { write_posterior_csv(os, meta, curves[c]); });
  }
  if (with_svg) {
    out.push_back(dir / "posterior.svg");
    detail::write_svg(out.back(), posterior_chart(curves, n_list));
  }
  return out;
}

inline std::vector<std::filesystem::path> emit_report_data(const std::filesystem::path& dir,
                                                           const std::string& stem,
                                                           const ExperimentConfig& cfg,
                                                           const ExperimentReport& report,
                                                           bool with_svg) {
  const auto config = config_to_json(cfg);
  std::vector<std::filesystem::path> out{dir / (stem + "_trials.csv"), dir / (stem + "_aggregate.csv")};
  write_file(out[0], [&](std::ostream& os) {
    write_trials_csv(os, make_meta(stem + "_trials", config), report.trials);
  });
  write_file(out[1], [&](std::ostream& os) {
    write_aggregate_csv(os, make_meta(stem + "_aggregate", config), report.aggregates);
  });
  if (with_svg) {
    out.push_back(dir / (stem + ".svg"));
    detail::write_svg(out.back(), sweep_chart(report));
  }
  return out;
}

inline std::vector<std::filesystem::path> emit_purity_data(const std::filesystem::path& dir,
                                                           const ExperimentConfig& cfg,
                                                           std::span<const PurityRow> rows,
                                                           bool with_svg) {
  std::vector<std::filesystem::path> out{dir / "purity_scan.csv"};
  write_file(out[0], [&](std::ostream& os) {
    write_purity_csv(os, make_meta("purity_scan", config_to_json(cfg)), rows);
  });
  if (with_svg) {
    out.push_back(dir / "purity_scan.svg");
    detail::write_svg(out.back(), purity_chart(rows));
  }
  return out;
}

}  // namespace sqmetro
