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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "maxcov/curves.hpp"
#include "maxcov/generators.hpp"
#include "maxcov/rounding.hpp"
#include "reference.hpp"

using namespace maxcov;

TEST(Mix, Endpoints) {
  const std::vector<double> y{1.0, 0.0, 0.4};
  EXPECT_EQ(mix(y, 0.0, 0.5), y);
  for (double v : mix(y, 1.0, 0.5)) EXPECT_DOUBLE_EQ(v, 0.5);
  const auto z = mix(std::vector<double>{1.0, 0.0}, 1.0 - std::log(2.0), 0.5);
  EXPECT_NEAR(z[0], 0.846573590279973, 1e-14);
  EXPECT_NEAR(z[1], 0.153426409720027, 1e-14);
  EXPECT_THROW(mix(y, 1.5, 0.5), InputError);
  EXPECT_THROW(mix(std::vector<double>{1.5}, 0.5, 0.5), InputError);
}

TEST(Mix, PreservesBudget) {
  const std::vector<double> y{1.0, 1.0, 0.0, 0.0, 0.5, 0.5};
  const auto z = mix(y, 0.3, 0.5);
  EXPECT_LE(std::accumulate(z.begin(), z.end(), 0.0), 3.0 + 1e-12);
}

TEST(Pipage, IntegralInputUnchanged) {
  const auto inst = gen_random(5, 8, 3, 2, 1);
  EXPECT_EQ(pipage_round(inst, {1, 0, 0, 1, 0}, 2), (std::vector<int>{0, 3}));
}

TEST(Pipage, TwoSetSymmetricPoint) {
  PipageTrace tr;
  const auto out = pipage_round(ref::two_set(), {0.5, 0.5}, 1, &tr);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_DOUBLE_EQ(tr.start_value, 0.75);
  EXPECT_DOUBLE_EQ(tr.end_value, 1.0);
}

TEST(Pipage, RejectsBudgetViolation) {
  EXPECT_THROW(pipage_round(ref::two_set(), {0.8, 0.8}, 1), InputError);
  EXPECT_THROW(pipage_round(ref::two_set(), {0.5}, 1), InputError);
}

TEST(Pipage, NeverLosesValueAndRespectsBudget) {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const int n = 3 + static_cast<int>(seed % 8);
    const int k = 1 + static_cast<int>(seed % (n - 1));
    const auto inst = gen_random(n, 2 * n, std::min(4, n), k, seed);
    Rng rng(seed * 31);
    std::vector<double> z(static_cast<std::size_t>(n));
    for (auto& v : z) v = uniform01(rng);
    const double total = std::accumulate(z.begin(), z.end(), 0.0);
    if (total > k) {
      for (auto& v : z) v *= k / total;
    }
    PipageTrace tr;
    const auto out = pipage_round(inst, z, k, &tr);
    EXPECT_LE(static_cast<int>(out.size()), k);
    EXPECT_GE(coverage_value(inst, out), ref::multilinear(inst, z) - 1e-8);
    EXPECT_LE(tr.steps, n);
  }
}

TEST(RoundMc, TakesEverythingWhenKIsN) {
  const auto inst = gen_random(6, 10, 3, 6, 3);
  const auto out = round_mc(inst);
  EXPECT_NEAR(out.integral_value, inst.total_weight(), 1e-12);
}

TEST(RoundMc, IntegralityGapInstance) {
  const auto inst = gen_integrality_gap(Rational(1, 2), 3);
  const auto out = round_mc(inst);
  EXPECT_NEAR(out.lp_value, 15.0, 1e-8);
  const double ratio = out.integral_value / out.lp_value;
  EXPECT_GE(ratio, 0.75 - 1e-12);
  EXPECT_LE(ratio, 12.0 / 15.0 + 1e-12);
}

TEST(RoundMc, MixingGuaranteeElementwise) {
  const Rational cs[] = {Rational(1, 4), Rational(1, 3), Rational(9, 20), Rational(1, 2),
                         Rational(3, 5), Rational(3, 4)};
  int checked = 0;
  for (std::uint64_t seed = 1; seed <= 120; ++seed) {
    const Rational c = cs[seed % 6];
    const int n = static_cast<int>(c.den()) * (1 + static_cast<int>(seed % 3));
    if (n > 12) continue;
    const int k = static_cast<int>(c.num()) * n / static_cast<int>(c.den());
    const auto inst = gen_random(n, 2 * n, std::min(5, n), k, seed);
    const auto out = round_mc(inst);
    const double r = rho(c).rho;
    EXPECT_GE(out.fractional_value, r * out.lp_value - 1e-8);
    EXPECT_GE(out.integral_value, out.fractional_value - 1e-8);
    EXPECT_LE(static_cast<int>(out.chosen.size()), k);
    const auto canon = canonicalize(inst);
    for (std::size_t e = 0; e < canon.n_elements(); ++e) {
      double miss = 1.0;
      for (const int s : canon.element(e).covering_sets) miss *= 1.0 - out.z[static_cast<std::size_t>(s)];
      EXPECT_GE(1.0 - miss, r * out.x[e] - 1e-9);
    }
    ++checked;
  }
  EXPECT_GT(checked, 60);
}

TEST(RoundMcOracle, AgreesWithExplicitPipeline) {
  for (std::uint64_t seed = 1; seed <= 15; ++seed) {
    const auto inst = gen_random(8, 14, 2, 4, seed);
    const auto oracle = ValueOracle::wrap(inst);
    const auto a = round_mc(inst);
    const auto b = round_mc_oracle(oracle, 8, 4);
    EXPECT_NEAR(a.integral_value, b.integral_value, 1e-8);
    EXPECT_NEAR(a.lp_value, b.lp_value, 1e-8);
    EXPECT_GT(b.oracle_queries, 0);
  }
}

TEST(RoundMcOracle, ElementCoveredByAllSets) {
  const SetSystemInstance inst(5, 2, {{4.0, {0, 1, 2, 3, 4}}});
  const auto out = round_mc_oracle(ValueOracle::wrap(inst), 5, 2);
  EXPECT_DOUBLE_EQ(out.integral_value, 4.0);
}

TEST(RoundMcOracle, QueryCountGrowsPolynomially) {
  // c = 1/2 fixes M = 8; for n <= 8 the table is complete, so queries stay
  // below 2^n plus the pipage-free measurements.
  for (int n : {4, 6, 8}) {
    const auto inst = gen_random(n, 2 * n, 2, n / 2, 5);
    const auto oracle = ValueOracle::wrap(inst);
    const auto out = round_mc_oracle(oracle, n, n / 2);
    EXPECT_LE(out.oracle_queries, (std::int64_t{1} << n) + 2) << n;
  }
  // c = 9/10 has M = 3: the table costs O(n^3) queries, pipage none.
  const int M = m_of_c(Rational(9, 10));
  ASSERT_EQ(M, 3);
  for (int n : {10, 20, 30}) {
    const auto inst = gen_random(n, 2 * n, 5, 9 * n / 10, 9);
    const auto out = round_mc_oracle(ValueOracle::wrap(inst), n, 9 * n / 10);
    EXPECT_LE(static_cast<double>(out.oracle_queries), 2.0 * std::pow(n, M) + 2) << n;
  }
}
