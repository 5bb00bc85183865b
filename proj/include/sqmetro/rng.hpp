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

// Deterministic random streams for synthetic homodyne data.
//
// Generator: SplitMix64 (Steele, Lea & Flood 2014). The state is a 64-bit
// counter advanced by the golden-ratio increment 0x9E3779B97F4A7C15 and each
// output is the counter passed through the variant-13 finalizer. Uniform
// doubles take the top 53 bits. Normal deviates use the Box-Muller transform,
// consuming two uniforms per pair and returning the cosine branch first.
//
// Substreams: substream(seed, i) = mix(seed ^ mix(i + 0x632BE59BD9B4E019)).
// Every stream is fully defined by these formulas, so sample records can be
// regenerated bit for bit by any implementation with IEEE doubles and a
// correctly rounded libm.

#include <cmath>
#include <cstdint>
#include <numbers>

namespace sqmetro {

inline constexpr const char* kRngAlgorithm = "splitmix64+box-muller/v1";

[[nodiscard]] constexpr std::uint64_t splitmix64_mix(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Seed of the index-th independent substream derived from a parent seed.
[[nodiscard]] constexpr std::uint64_t substream(std::uint64_t seed, std::uint64_t index) noexcept {
  return splitmix64_mix(seed ^ splitmix64_mix(index + 0x632BE59BD9B4E019ULL));
}

class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return ~result_type{0}; }

  constexpr result_type operator()() noexcept {
    state_ += 0x9E3779B97F4A7C15ULL;
    return splitmix64_mix(state_);
  }

  /// Uniform in [0, 1).
  constexpr double uniform() noexcept {
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
  }

  /// Uniform in (0, 1]; safe to take the log of.
  constexpr double uniform_open0() noexcept {
    return static_cast<double>(((*this)() >> 11) + 1) * 0x1.0p-53;
  }

 private:
  std::uint64_t state_;
};

/// Standard normal deviates via Box-Muller on a SplitMix64 stream.
class NormalStream {
 public:
  explicit NormalStream(std::uint64_t seed) noexcept : rng_(seed) {}

  double operator()() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = rng_.uniform_open0();
    const double u2 = rng_.uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
  }

 private:
  SplitMix64 rng_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace sqmetro
