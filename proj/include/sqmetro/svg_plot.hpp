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

// Minimal static SVG charts for the figure analogues. The CSV files are the
// data contract; these renderings are a convenience.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "sqmetro/csv.hpp"

namespace sqmetro::svg {

struct Line {
  std::string label;
  std::string colour;
  std::vector<std::pair<double, double>> points;
  bool dashed = false;
};

struct Marker {
  double x = 0.0;
  double y = 0.0;
  double error = 0.0;  // symmetric vertical error bar; 0 draws none
};

struct Scatter {
  std::string label;
  std::string colour;
  std::vector<Marker> markers;
  bool square = false;
};

struct Chart {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_y = false;
  std::vector<Line> lines;
  std::vector<Scatter> scatters;
};

namespace detail {
inline std::string num(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}
}  // namespace detail

[[nodiscard]] inline std::string render(const Chart& chart, int width = 640, int height = 420) {
  constexpr double left = 70, right = 150, top = 40, bottom = 50;
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  const auto grow = [&](double x, double y) {
    if (!std::isfinite(x) || !std::isfinite(y) || (chart.log_y && y <= 0.0)) return;
    x0 = std::min(x0, x);
    x1 = std::max(x1, x);
    y0 = std::min(y0, y);
    y1 = std::max(y1, y);
  };
  for (const auto& l : chart.lines) {
    for (const auto& [x, y] : l.points) grow(x, y);
  }
  for (const auto& s : chart.scatters) {
    for (const auto& m : s.markers) {
      grow(m.x, m.y + m.error);
      grow(m.x, chart.log_y && m.y - m.error <= 0.0 ? m.y : m.y - m.error);
    }
  }
  if (!(x0 <= x1)) x0 = 0, x1 = 1, y0 = chart.log_y ? 0.1 : 0.0, y1 = 1;
  if (x0 == x1) x0 -= 0.5, x1 += 0.5;
  const auto ty = [&](double y) { return chart.log_y ? std::log10(y) : y; };
  double ly0 = ty(y0), ly1 = ty(y1);
  if (ly0 == ly1) ly0 -= 0.5, ly1 += 0.5;
  const double pad = 0.05 * (ly1 - ly0);
  ly0 -= pad;
  ly1 += pad;
  const double pw = width - left - right, ph = height - top - bottom;
  const auto px = [&](double x) { return left + (x - x0) / (x1 - x0) * pw; };
  const auto py = [&](double y) { return top + (ly1 - ty(y)) / (ly1 - ly0) * ph; };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
     << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
  os << "<text x=\"" << width / 2 << "\" y=\"22\" text-anchor=\"middle\">" << chart.title << "</text>\n";
  os << "<g stroke=\"black\"><line x1=\"" << left << "\" y1=\"" << top + ph << "\" x2=\"" << left + pw
     << "\" y2=\"" << top + ph << "\"/><line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left
     << "\" y2=\"" << top + ph << "\"/></g>\n";
  for (int k = 0; k <= 4; ++k) {
    const double fx = x0 + (x1 - x0) * k / 4.0;
    const double fy = ly0 + (ly1 - ly0) * k / 4.0;
    const double yv = chart.log_y ? std::pow(10.0, fy) : fy;
    os << "<text x=\"" << px(fx) << "\" y=\"" << top + ph + 16 << "\" text-anchor=\"middle\">"
       << detail::num(fx) << "</text>\n";
    os << "<text x=\"" << left - 6 << "\" y=\"" << py(yv) + 4 << "\" text-anchor=\"end\">"
       << detail::num(yv) << "</text>\n";
  }
  os << "<text x=\"" << left + pw / 2 << "\" y=\"" << height - 10 << "\" text-anchor=\"middle\">"
     << chart.x_label << "</text>\n";
  os << "<text x=\"16\" y=\"" << top + ph / 2 << "\" transform=\"rotate(-90 16 " << top + ph / 2
     << ")\" text-anchor=\"middle\">" << chart.y_label << "</text>\n";

  double legend_y = top + 10;
  const auto legend = [&](const std::string& label, const std::string& colour) {
    os << "<text x=\"" << left + pw + 12 << "\" y=\"" << legend_y << "\" fill=\"" << colour << "\">"
       << label << "</text>\n";
    legend_y += 16;
  };
  for (const auto& l : chart.lines) {
    os << "<polyline fill=\"none\" stroke=\"" << l.colour << "\" stroke-width=\"1.5\""
       << (l.dashed ? " stroke-dasharray=\"6 4\"" : "") << " points=\"";
    for (const auto& [x, y] : l.points) {
      if (!std::isfinite(y) || (chart.log_y && y <= 0.0)) continue;
      os << px(x) << ',' << py(y) << ' ';
    }
    os << "\"/>\n";
    legend(l.label, l.colour);
  }
  for (const auto& s : chart.scatters) {
    for (const auto& m : s.markers) {
      if (!std::isfinite(m.y) || (chart.log_y && m.y <= 0.0)) continue;
      if (m.error > 0.0) {
        const double lo = chart.log_y && m.y - m.error <= 0.0 ? m.y : m.y - m.error;
        os << "<line stroke=\"" << s.colour << "\" x1=\"" << px(m.x) << "\" x2=\"" << px(m.x) << "\" y1=\""
           << py(lo) << "\" y2=\"" << py(m.y + m.error) << "\"/>\n";
      }
      if (s.square) {
        os << "<rect fill=\"" << s.colour << "\" x=\"" << px(m.x) - 4 << "\" y=\"" << py(m.y) - 4
           << "\" width=\"8\" height=\"8\"/>\n";
      } else {
        os << "<circle fill=\"none\" stroke=\"" << s.colour << "\" cx=\"" << px(m.x) << "\" cy=\""
           << py(m.y) << "\" r=\"4\"/>\n";
      }
    }
    legend(s.label, s.colour);
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace sqmetro::svg
