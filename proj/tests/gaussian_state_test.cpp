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

#include "sqmetro/gaussian_state.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "gtest/gtest.h"

using namespace sqmetro;

// Expected values below were evaluated independently at 30 digits with mpmath.

TEST(gaussian_state, rejects_negative_parameters) {
  EXPECT_THROW(SqueezedThermalState(-0.1, 0.0), std::invalid_argument);
  EXPECT_THROW(SqueezedThermalState(0.1, -1e-9), std::invalid_argument);
  EXPECT_THROW(SqueezedThermalState(NAN, 0.0), std::invalid_argument);
  EXPECT_NO_THROW(SqueezedThermalState(0.0, 0.0));
}

TEST(gaussian_state, covariance_examples) {
  const auto vac = covariance_at_phase({0.0, 0.0}, 0.7);
  EXPECT_DOUBLE_EQ(vac.xx, 0.5);
  EXPECT_DOUBLE_EQ(vac.pp, 0.5);
  EXPECT_NEAR(vac.xp, 0.0, 1e-17);

  const auto sq = covariance_at_phase({0.37, 0.0}, 0.0);
  EXPECT_NEAR(sq.xx, 0.238556957760517194, 1e-15);
  EXPECT_NEAR(sq.pp, 1.04796775724718228, 1e-15);
  EXPECT_EQ(sq.xp, 0.0);

  const auto diag = covariance_at_phase({0.3696, 0.0230}, std::numbers::pi / 4);
  EXPECT_NEAR(diag.xp, 0.428837426650449628, 1e-15);
}

TEST(gaussian_state, rotation_invariants) {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> r_dist(0.0, 1.5), rp_dist(0.0, 1.0), t_dist(-4.0, 4.0);
  for (int i = 0; i < 200; ++i) {
    const SqueezedThermalState s(r_dist(gen), rp_dist(gen));
    const double t = t_dist(gen);
    const auto c = covariance_at_phase(s, t);
    const auto c_pi = covariance_at_phase(s, t + std::numbers::pi);
    const double det0 = std::exp(2.0 * s.r_prime()) / 4.0;
    EXPECT_NEAR(c.determinant(), det0, 1e-12 * std::max(1.0, det0));
    EXPECT_GE(c.determinant(), 0.25 - 1e-12);
    EXPECT_NEAR(c.xx, c_pi.xx, 1e-12);
    EXPECT_NEAR(c.xp, c_pi.xp, 1e-12);
    EXPECT_NEAR(c.pp, c_pi.pp, 1e-12);
    EXPECT_GT(c.xx, 0.0);
    EXPECT_GT(c.pp, 0.0);
    // Trace is rotation invariant and fixes the photon number.
    const double trace0 = 0.5 * (std::exp(-2.0 * s.r()) + std::exp(2.0 * s.r() + 2.0 * s.r_prime()));
    EXPECT_NEAR(c.trace(), trace0, 1e-12 * trace0);
    EXPECT_NEAR(mean_photon_number(s), 0.5 * c.trace() - 0.5, 1e-10);
  }
}

TEST(gaussian_state, photon_number) {
  EXPECT_EQ(mean_photon_number({0.0, 0.0}), 0.0);
  EXPECT_NEAR(mean_photon_number({0.37, 0.0}), 0.143262357503849738, 1e-15);
  EXPECT_NEAR(mean_photon_number({0.3696, 0.0230}), 0.167585306335762651, 1e-15);
  for (double r = 0.0; r < 1.5; r += 0.1) {
    EXPECT_NEAR(mean_photon_number({r, 0.0}), std::sinh(r) * std::sinh(r), 1e-14);
  }
}

TEST(gaussian_state, photon_number_monotone_in_each_parameter) {
  for (double r = 0.0; r <= 1.5; r += 0.05) {
    for (double rp = 0.0; rp <= 1.0; rp += 0.05) {
      const double n = mean_photon_number({r, rp});
      EXPECT_LT(n, mean_photon_number({r + 0.05, rp}));
      EXPECT_LT(n, mean_photon_number({r, rp + 0.05}));
    }
  }
}

TEST(gaussian_state, purity) {
  EXPECT_EQ(purity({0.8, 0.0}), 1.0);
  EXPECT_NEAR(purity({0.3696, 0.0230}), 0.9772, 1e-4);
  EXPECT_NEAR(purity({0.6931, 0.5687}), 0.5663, 1e-4);
  // 1 / (2 sqrt(det sigma)) route.
  const SqueezedThermalState s(0.4, 0.3);
  EXPECT_NEAR(purity(s), 1.0 / (2.0 * std::sqrt(s.base_covariance().determinant())), 1e-14);
}

TEST(gaussian_state, from_db_examples) {
  const auto a = from_db(3.21, 3.41);
  EXPECT_NEAR(a.r(), 0.369564907425544, 1e-12);
  EXPECT_NEAR(a.r_prime(), 0.0230258509299405, 1e-12);
  const auto c = from_db(6.02, 10.96);
  EXPECT_NEAR(c.r(), 0.693078112991208, 1e-12);
  EXPECT_NEAR(c.r_prime(), 0.568738517969530, 1e-12);
  EXPECT_TRUE(from_db(0.0, 0.0).is_vacuum());
  EXPECT_THROW((void)from_db(3.0, 2.0), std::invalid_argument);
  EXPECT_THROW((void)from_db(-1.0, 2.0), std::invalid_argument);
}

TEST(gaussian_state, db_round_trip_and_purity_depends_on_difference) {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> sq(0.0, 12.0), extra(0.0, 8.0), shift(0.0, 5.0);
  for (int i = 0; i < 200; ++i) {
    const double s = sq(gen), a = s + extra(gen);
    const auto back = to_db(from_db(s, a));
    EXPECT_NEAR(back.squeezing_db, s, 1e-12);
    EXPECT_NEAR(back.antisqueezing_db, a, 1e-12);
    const double d = shift(gen);
    EXPECT_NEAR(purity(from_db(s, a)), purity(from_db(s + d, a + d)), 1e-12);
  }
}

TEST(gaussian_state, wigner_values) {
  EXPECT_NEAR(wigner_value({0.0, 0.0}, 0.0, 0.0, 0.0), 1.0 / std::numbers::pi, 1e-15);
  EXPECT_NEAR(wigner_value({0.37, 0.0}, 0.0, 0.0, 0.0), 1.0 / std::numbers::pi, 1e-14);
  EXPECT_NEAR(wigner_value({0.3696, 0.0230}, 0.0, 0.0, 0.0), 0.311072309981560403, 1e-14);
}

TEST(gaussian_state, wigner_integrates_to_one) {
  // Midpoint rule on a box wide enough for the antisqueezed direction.
  const SqueezedThermalState s(0.5, 0.3);
  const double theta = 0.6, half = 9.0;
  const int cells = 600;
  const double h = 2.0 * half / cells;
  double total = 0.0;
  for (int i = 0; i < cells; ++i) {
    for (int j = 0; j < cells; ++j) {
      total += wigner_value(s, theta, -half + (i + 0.5) * h, -half + (j + 0.5) * h);
    }
  }
  EXPECT_NEAR(total * h * h, 1.0, 1e-8);
}
