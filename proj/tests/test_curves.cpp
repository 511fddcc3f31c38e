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

#include "maxcov/curves.hpp"

using namespace maxcov;

TEST(Sigma, EndpointsAndValue) {
  for (int m = 1; m <= 6; ++m) {
    EXPECT_NEAR(sigma(1.0, m, 0.3), std::pow(0.7, m), 1e-15);
    EXPECT_NEAR(sigma(0.0, m, 0.3), std::pow(1.0 - 1.0 / m, m), 1e-15);
  }
  EXPECT_NEAR(sigma(1.0 - std::log(2.0), 3, 0.5), 0.23320405394616327, 1e-14);
  EXPECT_THROW(sigma(1.5, 2, 0.5), InputError);
  EXPECT_THROW(sigma(0.5, 0, 0.5), InputError);
}

TEST(Sigma, LogConcaveInM) {
  for (double c : {0.2, 1.0 / 3, 0.5, 0.7}) {
    for (double a = 0.0; a <= 1.0; a += 0.1) {
      for (int m = 2; m < 40; ++m) {
        const double l0 = std::log(sigma(a, m - 1, c));
        const double l1 = std::log(sigma(a, m, c));
        const double l2 = std::log(sigma(a, m + 1, c));
        if (!std::isfinite(l0)) continue;
        EXPECT_GE(l1 - l0, l2 - l1 - 1e-12) << c << " " << a << " " << m;
      }
    }
  }
}

TEST(AlphaStar, ReciprocalAndInterior) {
  EXPECT_NEAR(alpha_star(Rational(1, 2)), 0.30685281944005469, 1e-14);
  EXPECT_NEAR(alpha_star(Rational(1, 3)), 0.18906978378367124, 1e-14);
  EXPECT_NEAR(alpha_star(Rational(3, 5)), 0.50510257216821902, 1e-12);
  EXPECT_NEAR(alpha_star(Rational(2, 5)), 0.24472275942579644, 1e-12);
  EXPECT_NEAR(alpha_star(Rational(2, 7)), 0.16243408860041288, 1e-12);
  EXPECT_NEAR(alpha_star(Rational(3, 4)), 0.53589838486224541, 1e-12);
  EXPECT_EQ(alpha_star(Rational(1, 1)), 1.0);
  EXPECT_THROW(alpha_star(Rational(3, 2)), InputError);
  EXPECT_THROW(alpha_star(Rational(0, 1)), InputError);
}

TEST(AlphaStar, BalancesNeighbouringMultiplicities) {
  for (int d = 3; d <= 40; ++d) {
    for (int nn = 1; nn < d; ++nn) {
      const Rational c(nn, d);
      if (c.is_reciprocal() || c.num() != nn) continue;
      const int s = regime_index(c);
      const double a = alpha_star(c);
      EXPECT_NEAR(sigma(a, s + 1, c.value()), sigma(a, s, c.value()), 1e-12) << c.str();
    }
  }
}

TEST(AlphaStar, ClosedFormAgreesOnUpperHalf) {
  for (int t = 1; t <= 50; ++t) {
    const Rational c(50 + t, 101);  // 50 points inside (1/2, 1)
    if (c.is_reciprocal()) continue;
    EXPECT_NEAR(alpha_star(c), alpha_star_closed_form(c.value()), 1e-8) << c.str();
  }
}

TEST(Rho, KnownValues) {
  EXPECT_EQ(rho(Rational(1, 2)).rho, 0.75);
  EXPECT_EQ(rho(Rational(1, 1)).rho, 1.0);
  EXPECT_NEAR(rho(Rational(3, 5)).rho, 0.79795897113271239, 1e-12);
  EXPECT_NEAR(rho(Rational(2, 5)).rho, 0.72492883176761059, 1e-12);
  EXPECT_NEAR(rho(Rational(2, 7)).rho, 0.69327030635080192, 1e-12);
  EXPECT_NEAR(rho(Rational(3, 4)).rho, 0.86602540378443865, 1e-12);
  EXPECT_NEAR(rho(Rational(5, 7)).rho, 0.84990118229705748, 1e-12);
  EXPECT_NEAR(rho(Rational(37, 100)).rho, 0.71593371028446851, 1e-12);
  EXPECT_NEAR(rho(Rational(9, 10)).rho, 0.9375, 1e-12);
  EXPECT_EQ(rho(Rational(2, 5)).regime, Regime::kInterior);
  EXPECT_EQ(rho(Rational(2, 5)).s, 2);
  EXPECT_EQ(rho(Rational(1, 4)).regime, Regime::kReciprocal);
}

TEST(Rho, ReciprocalPointsMatchSmRatio) {
  for (int s = 2; s <= 10; ++s) {
    const double want = 1.0 - std::pow(1.0 - 1.0 / s, s);
    EXPECT_NEAR(rho(Rational(1, s)).rho, want, 1e-10);
    EXPECT_NEAR(sm_ratio(1.0 / s), want, 1e-10);
  }
}

TEST(SmRatio, Values) {
  EXPECT_NEAR(sm_ratio(0.5), 0.75, 1e-15);
  EXPECT_NEAR(sm_ratio(1.0 / 3), 19.0 / 27, 1e-14);
  EXPECT_NEAR(sm_ratio(1e-6), 1.0 - std::exp(-1.0), 1e-5);
  EXPECT_EQ(sm_ratio(1.0), 1.0);
}

TEST(MOfC, Values) {
  EXPECT_EQ(m_of_c(Rational(1, 2)), 8);
  EXPECT_EQ(m_of_c(Rational(9, 10)), 3);
  EXPECT_THROW(m_of_c(Rational(1, 1)), InputError);
  // Defining property: M is the first index that clears rho.
  for (const Rational c : {Rational(1, 3), Rational(2, 5), Rational(3, 4)}) {
    const int m = m_of_c(c);
    const double q = 1.0 - alpha_star(c) * c.value();
    EXPECT_GE(1.0 - std::pow(q, m + 1), rho(c).rho - 1e-12);
    if (m > 1) {
      EXPECT_LT(1.0 - std::pow(q, m), rho(c).rho);
    }
  }
}

TEST(RhoExcluding, Values) {
  EXPECT_NEAR(rho_excluding(Rational(1, 2), 2), 0.76679594605383673, 1e-12);
  EXPECT_NEAR(rho_excluding(Rational(1, 2), 7), 0.75, 1e-12);
  // c = 1/3: minimum over m in {2, 4, ...}, attained at m = 4.
  EXPECT_NEAR(rho_excluding(Rational(1, 3), 3), 0.709355531367, 1e-11);
}

TEST(RAlpha1, Values) {
  EXPECT_EQ(r_alpha_1(0.0, 0.5), 1.0);
  EXPECT_EQ(r_alpha_1(1.0, 0.5), 0.5);
  EXPECT_NEAR(r_alpha_1(0.3, 0.5), 0.85, 1e-15);
}

TEST(RAlpha2, AntitheticPointClosedForm) {
  // mu = 1/2: rho = 0, correlation -1, denominator 1.
  for (double a : {0.0, 0.2, 0.6}) {
    const double eta = a * 0.5 + (1 - a) * 0.5;
    EXPECT_NEAR(r2_ratio(a, 0.5, 0.5), 1.0 - std::max(0.0, 1.0 - 2 * eta), 1e-10);
  }
}

TEST(RAlpha2, RestrictedMinimumIsAGridLowerEnvelope) {
  const double a = 0.06, c = 0.5;
  const auto r = r_alpha_2(a, c, 1e-3);
  for (int t = 1; t < 100; ++t) EXPECT_LE(r.value, r2_ratio(a, c, t / 100.0) + 1e-12);
  EXPECT_GT(r.mu, 0.0);
  EXPECT_LT(r.mu, 1.0);
}

TEST(RhoSdp, HalfIsAboveTarget) {
  const auto r = rho_sdp(0.5);
  EXPECT_GE(r.value, 0.93);
  EXPECT_NEAR(r.value, 0.9401, 5e-4);
  EXPECT_NEAR(r.alpha, 0.0598, 2e-3);
  EXPECT_LE(r.value, 1.0);
  EXPECT_THROW(rho_sdp(0.4), InputError);
}

TEST(RhoSdp, BeatsLpCurve) {
  for (const Rational c : {Rational(11, 20), Rational(3, 4)}) {
    EXPECT_GT(rho_sdp(c.value(), 1e-3).value, rho(c).rho) << c.str();
  }
}
