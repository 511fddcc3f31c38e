// Copyright 2026 The maxcov Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "maxcov/normal.hpp"

using namespace maxcov;

TEST(Normal, CdfAndInverse) {
  EXPECT_EQ(phi_cdf(0.0), 0.5);
  EXPECT_NEAR(phi_inv(0.5), 0.0, 1e-15);
  EXPECT_NEAR(phi_cdf(1.96), 0.97500210485177956, 1e-12);
  EXPECT_NEAR(phi_cdf(-8.0), 6.220960574271784e-16, 1e-25);
  EXPECT_NEAR(phi_inv(0.975), 1.959963984540054, 1e-12);
  EXPECT_NEAR(phi_inv(0.3), -0.5244005127080408, 1e-12);
  EXPECT_NEAR(phi_inv(1e-10), -6.361340902404056, 1e-9);
  for (double p = 0.001; p < 1.0; p += 0.001) {
    ASSERT_NEAR(phi_cdf(phi_inv(p)), p, 1e-12) << p;
  }
  EXPECT_THROW(phi_inv(0.0), InputError);
  EXPECT_THROW(phi_inv(1.0), InputError);
}

TEST(Phi2, IndependenceAndLimits) {
  for (int a = 1; a <= 20; ++a) {
    for (int b = 1; b <= 20; ++b) {
      const double x = a / 21.0, y = b / 21.0;
      ASSERT_NEAR(phi2(0.0, x, y), x * y, 1e-8);
      ASSERT_NEAR(phi2(1.0, x, x), x, 1e-8);
      ASSERT_NEAR(phi2(-1.0, x, y), std::max(0.0, x + y - 1.0), 1e-8);
    }
  }
  EXPECT_THROW(phi2(1.5, 0.5, 0.5), InputError);
}

TEST(Phi2, AgainstHighPrecisionQuadrature) {
  EXPECT_NEAR(phi2(0.3, 0.5, 0.5), 0.29849334201033915, 1e-10);
  EXPECT_NEAR(phi2(0.5, 0.3, 0.7), 0.2669038488673631, 1e-10);
  EXPECT_NEAR(phi2(-0.7, 0.4, 0.8), 0.2354223021315106, 1e-10);
  EXPECT_NEAR(phi2(0.9, 0.2, 0.25), 0.1677645717448906, 1e-10);
  EXPECT_NEAR(phi2(-0.3, 0.05, 0.6), 0.01759455357928967, 1e-10);
  EXPECT_NEAR(phi2(0.99, 0.5, 0.5), 0.4774732931777939, 1e-10);
  EXPECT_NEAR(phi2(-0.5, 0.9, 0.95), 0.8502181339377728, 1e-10);
}

TEST(Phi2, OrthantArcsineIdentity) {
  for (double r = -0.95; r <= 0.95; r += 0.05) {
    EXPECT_NEAR(phi2(r, 0.5, 0.5), 0.25 + std::asin(r) / (2.0 * M_PI), 1e-10) << r;
  }
}

TEST(Phi2, CorrelationBound) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0.0, 1.0), r(-1.0, 1.0);
  for (int t = 0; t < 1000; ++t) {
    const double rho = r(rng), a = u(rng), b = u(rng);
    const double v = phi2(rho, a, b);
    ASSERT_LE(v, a * b + 2.0 * std::fabs(rho) + 1e-12);
    ASSERT_GE(v, std::max(0.0, a + b - 1.0) - 1e-12);
    ASSERT_LE(v, std::min(a, b) + 1e-12);
    ASSERT_NEAR(v, phi2(rho, b, a), 1e-12);
  }
}

TEST(Phi2, MonteCarloSpotCheck) {
  std::mt19937_64 rng(99);
  std::normal_distribution<double> nd;
  const double rho = -0.4, e1 = 0.35, e2 = 0.6;
  const double h1 = phi_inv(e1), h2 = phi_inv(e2);
  const int draws = 200000;
  int hits = 0;
  for (int t = 0; t < draws; ++t) {
    const double x = nd(rng);
    const double y = rho * x + std::sqrt(1 - rho * rho) * nd(rng);
    hits += (x < h1 && y < h2);
  }
  const double p = phi2(rho, e1, e2);
  const double sd = std::sqrt(p * (1 - p) / draws);
  EXPECT_NEAR(static_cast<double>(hits) / draws, p, 4 * sd);
}
