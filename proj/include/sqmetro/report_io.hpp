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

// CSV emitters. Every file starts with a "# meta: {json}" line holding the
// artifact version, the file kind and the full configuration, followed by a
// fixed column header. Floats use 17 significant digits, so output bytes are
// a pure function of the inputs.

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>

#include "json.hpp"
#include "sqmetro/bayes.hpp"
#include "sqmetro/bounds.hpp"
#include "sqmetro/csv.hpp"
#include "sqmetro/experiments.hpp"

namespace sqmetro {

namespace columns {
inline constexpr const char* kBounds = "theta,fisher,inv_NF,sql,ocrb,qcrb";
inline constexpr const char* kPosterior = "theta,density";
inline constexpr const char* kTrials = "theta,rep,map,post_var";
inline constexpr const char* kAggregate = "theta,emp_var,mean_post_var,stderr,sql,ocrb,qcrb";
inline constexpr const char* kPurityScan = "purity,r,r_prime,delta_theta_theory,delta_theta_empirical";
}  // namespace columns

namespace detail {

inline void header(std::ostream& os, const nlohmann::ordered_json& meta, const char* cols) {
  csv::write_meta(os, meta.dump());
  os << cols << '\n';
}

template <typename... Ts>
void row(std::ostream& os, const Ts&... values) {
  bool first = true;
  const auto put = [&](const auto& v) {
    if (!first) os << ',';
    first = false;
    if constexpr (std::is_floating_point_v<std::decay_t<decltype(v)>>) {
      os << csv::format_double(v);
    } else {
      os << v;
    }
  };
  (put(values), ...);
  os << '\n';
}

}  // namespace detail

inline void write_bounds_csv(std::ostream& os, const nlohmann::ordered_json& meta,
                             std::span<const BoundsReport> rows) {
  detail::header(os, meta, columns::kBounds);
  for (const auto& b : rows) detail::row(os, b.theta, b.fisher, b.inv_nf, b.sql, b.ocrb, b.qcrb);
}

inline void write_posterior_csv(std::ostream& os, const nlohmann::ordered_json& meta,
                                const PosteriorGrid& grid) {
  detail::header(os, meta, columns::kPosterior);
  for (std::size_t i = 0; i < grid.grid_points(); ++i) {
    detail::row(os, grid.thetas()[i], grid.density()[i]);
  }
}

inline void write_trials_csv(std::ostream& os, const nlohmann::ordered_json& meta,
                             std::span<const TrialRow> rows) {
  detail::header(os, meta, columns::kTrials);
  for (const auto& t : rows) detail::row(os, t.theta, t.rep, t.map_estimate, t.posterior_variance);
}

inline void write_aggregate_csv(std::ostream& os, const nlohmann::ordered_json& meta,
                                std::span<const AggregateRow> rows) {
  detail::header(os, meta, columns::kAggregate);
  for (const auto& a : rows) {
    detail::row(os, a.theta, a.empirical_variance, a.mean_posterior_variance, a.standard_error, a.sql,
                a.ocrb, a.qcrb);
  }
}

inline void write_purity_csv(std::ostream& os, const nlohmann::ordered_json& meta,
                             std::span<const PurityRow> rows) {
  detail::header(os, meta, columns::kPurityScan);
  for (const auto& p : rows) {
    detail::row(os, p.purity, p.r, p.r_prime, p.delta_theta_theory, p.delta_theta_empirical);
  }
}

/// Opens `path` for writing (creating parent directories) and hands the
/// stream to `fill`. Throws std::runtime_error naming the path on failure.
inline void write_file(const std::filesystem::path& path,
                       const std::function<void(std::ostream&)>& fill) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("unwritable path: " + path.string());
  fill(out);
  out.flush();
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace sqmetro
