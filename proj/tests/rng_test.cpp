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

#include "sqmetro/rng.hpp"

#include <cmath>
#include <cstdint>
#include <set>

#include "gtest/gtest.h"

using namespace sqmetro;

TEST(rng, splitmix64_reference_stream) {
  // Reference outputs of the published SplitMix64 for seed 1234567.
  SplitMix64 g(1234567);
  EXPECT_EQ(g(), 6457827717110365317ULL);
  EXPECT_EQ(g(), 3203168211198807973ULL);
  EXPECT_EQ(g(), 9817491932198370423ULL);
  EXPECT_EQ(g(), 4593380528125082431ULL);
  EXPECT_EQ(g(), 16408922859458223821ULL);
}

TEST(rng, uniform_ranges) {
  SplitMix64 g(9);
  for (int i = 0; i < 100000; ++i) {
    const double u = g.uniform();
    const double v = g.uniform_open0();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    ASSERT_GT(v, 0.0);
    ASSERT_LE(v, 1.0);
  }
}

TEST(rng, substreams_are_distinct) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t s = 0; s < 8; ++s) {
    for (std::uint64_t i = 0; i < 256; ++i) seen.insert(substream(s, i));
  }
  EXPECT_EQ(seen.size(), 8u * 256u);
}

TEST(rng, normal_stream_moments) {
  NormalStream z(2024);
  const int n = 200000;
  double m1 = 0, m2 = 0, m4 = 0;
  for (int i = 0; i < n; ++i) {
    const double x = z();
    m1 += x;
    m2 += x * x;
    m4 += x * x * x * x;
  }
  m1 /= n;
  m2 /= n;
  m4 /= n;
  EXPECT_NEAR(m1, 0.0, 5.0 / std::sqrt(n));
  EXPECT_NEAR(m2, 1.0, 5.0 * std::sqrt(2.0 / n));
  EXPECT_NEAR(m4, 3.0, 5.0 * std::sqrt(96.0 / n));
}

TEST(rng, normal_stream_is_deterministic) {
  NormalStream a(77), b(77);
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(a(), b());
}
