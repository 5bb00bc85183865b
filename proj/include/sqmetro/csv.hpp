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

#include <charconv>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>

namespace sqmetro {

inline constexpr const char* kVersion = "1.0.0";
inline constexpr const char* kArtifactName = "sqmetro";

/// "sqmetro/1.0.0", embedded in every emitted file.
[[nodiscard]] inline std::string version_string() {
  return std::string(kArtifactName) + "/" + kVersion;
}

namespace csv {

/// Locale-independent %.17g; enough digits to round-trip any double.
[[nodiscard]] inline std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
  return {buf, res.ptr};
}

[[nodiscard]] inline double parse_double(std::string_view text) {
  double value = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
    throw std::invalid_argument("not a number: '" + std::string(text) + "'");
  }
  return value;
}

/// Writes "# meta: <payload>\n".
inline void write_meta(std::ostream& os, std::string_view payload) {
  os << "# meta: " << payload << '\n';
}

inline constexpr std::string_view kMetaPrefix = "# meta: ";

}  // namespace csv
}  // namespace sqmetro
