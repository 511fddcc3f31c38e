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
#include <limits>
#include <numeric>
#include <vector>

#include "maxcov/curves.hpp"
#include "maxcov/generators.hpp"
#include "maxcov/greedy.hpp"
#include "reference.hpp"

using namespace maxcov;

TEST(ClassicGreedy, SmallCases) {
  EXPECT_EQ(coverage_value(ref::two_set(), classic_greedy(ref::two_set(), 1)), 1.0);
  const auto gap = gen_integrality_gap(Rational(1, 2), 2);
  EXPECT_EQ(coverage_value(gap, classic_greedy(gap, 2)), 5.0);
  EXPECT_TRUE(classic_greedy(gap, 0).empty());
  EXPECT_THROW(classic_greedy(gap, 5), InputError);
}

TEST(ClassicGreedy, OracleAndInstanceAgree) {
  const auto inst = gen_random(9, 20, 4, 4, 12);
  const auto oracle = ValueOracle::wrap(inst);
  EXPECT_EQ(classic_greedy(oracle, 9, 4), classic_greedy(inst, 4));
  EXPECT_GT(oracle.query_count(), 0);
}

TEST(ClassicGreedy, WithinOneMinusOneOverE) {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    const int n = 4 + static_cast<int>(seed % 8);
    const int k = 1 + static_cast<int>(seed % (n - 1));
    const auto inst = gen_random(n, 3 * n, std::min(4, n), k, seed);
    const double v = coverage_value(inst, classic_greedy(inst, k));
    EXPECT_GE(v, (1.0 - std::exp(-1.0)) * ref::opt(inst) - 1e-9);
  }
}

TEST(GreedyPad, FillsToK) {
  const SetSystemInstance inst(4, 3, {{1.0, {0}}, {3.0, {1}}, {2.0, {2}}, {0.5, {3}}});
  EXPECT_EQ(greedy_pad(inst, {3}, 3), (std::vector<int>{1, 2, 3}));
  EXPECT_EQ(greedy_pad(inst, {0, 1, 2}, 3), (std::vector<int>{0, 1, 2}));
}

TEST(StoppingTime, Values) {
  EXPECT_NEAR(stopping_time(0.5), 1.3862943611198906, 1e-14);
  EXPECT_NEAR(stopping_time(1e-9), 1.0, 1e-8);
  EXPECT_EQ(stopping_time(1.0), std::numeric_limits<double>::infinity());
  for (double c : {0.1, 0.5, 1.0 - std::exp(-1.0), 0.9}) {
    EXPECT_NEAR(1.0 - std::exp(-c * stopping_time(c)), c, 1e-12);
  }
  EXPECT_THROW(stopping_time(0.0), InputError);
}

TEST(Mcg, UnitInstance) {
  const auto inst = ref::two_set();
  const auto tr = measured_continuous_greedy(inst, 1, 2.0 * std::log(2.0), 2000);
  EXPECT_GE(tr.final_value, 0.74);
  EXPECT_LE(tr.final_value, 0.76);
  EXPECT_LE(tr.max_budget_sum(), 1.0 + 0.01 * 2);
}

TEST(Mcg, ZeroHorizon) {
  const auto inst = gen_random(5, 8, 3, 2, 4);
  const auto tr = measured_continuous_greedy(inst, 2, 0.0, 10);
  EXPECT_EQ(tr.final_value, 0.0);
  for (double v : tr.final_y) EXPECT_EQ(v, 0.0);
}

TEST(Mcg, TrajectoryInvariants) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const int n = 4 + static_cast<int>(seed % 7);
    const int k = n / 2;
    const double c = static_cast<double>(k) / n;
    const auto inst = gen_random(n, 3 * n, std::min(4, n), k, seed);
    const int steps = 1000;
    const auto tr = measured_continuous_greedy(ExactCoverageModel(inst), k, stopping_time(c), steps, 10);
    for (std::size_t s = 0; s < tr.snapshots.size(); ++s) {
      for (std::size_t i = 0; i < tr.snapshots[s].size(); ++i) {
        ASSERT_GE(tr.snapshots[s][i], 0.0);
        ASSERT_LE(tr.snapshots[s][i], 1.0);
        if (s > 0) {
          ASSERT_GE(tr.snapshots[s][i], tr.snapshots[s - 1][i]);
        }
      }
      if (s > 0) {
        ASSERT_GE(tr.values[s], tr.values[s - 1] - 1e-12);
      }
      const double bound = n * (1.0 - std::exp(-c * tr.times[s]));
      const double sum = std::accumulate(tr.snapshots[s].begin(), tr.snapshots[s].end(), 0.0);
      EXPECT_LE(sum, bound + tr.delta * n);
    }
    EXPECT_LE(tr.max_budget_sum(), k + 0.01 * n);
    const double opt = ref::opt(inst);
    EXPECT_GE(tr.final_value, sm_ratio(c) * opt - 5.0 * tr.delta * opt);
  }
}

TEST(SmMaximize, UnitInstanceReachesOne) {
  const auto out = sm_maximize(ref::two_set(), 1);
  EXPECT_EQ(out.value, 1.0);
  EXPECT_EQ(out.chosen.size(), 1u);
}

TEST(SmMaximize, EdgeBudgets) {
  const auto inst = gen_random(6, 10, 3, 3, 8);
  EXPECT_EQ(sm_maximize(inst, 6).chosen, (std::vector<int>{0, 1, 2, 3, 4, 5}));
  EXPECT_TRUE(sm_maximize(inst, 0).chosen.empty());
}

TEST(SmMaximize, RatioOnRandomInstances) {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const int n = 2 * (2 + static_cast<int>(seed % 4));
    const auto inst = gen_random(n, 2 * n, std::min(4, n), n / 2, seed);
    const auto out = sm_maximize(inst, n / 2);
    EXPECT_LE(static_cast<int>(out.chosen.size()), n / 2);
    EXPECT_GE(out.value, 0.73 * ref::opt(inst)) << seed;
    EXPECT_GE(out.value, out.fractional_value - 1e-8);
  }
}

TEST(SampledModel, EstimatesAreUnbiasedAndSeeded) {
  const auto inst = gen_random(6, 12, 3, 3, 21);
  const auto oracle = ValueOracle::wrap(inst);
  const SampledOracleModel model(oracle, 4000, 77);
  const std::vector<double> y{0.2, 0.7, 0.5, 0.1, 0.9, 0.3};
  const double exact = multilinear_exact(inst, y);
  EXPECT_NEAR(model.value(y, 3), exact, 4.0 * inst.total_weight() / std::sqrt(4000.0) / 2);
  EXPECT_EQ(model.value(y, 3), model.value(y, 3));
  const auto g = model.gradient(y, 1);
  const auto ge = multilinear_gradient(inst, y);
  for (std::size_t i = 0; i < 6; ++i) EXPECT_NEAR(g[i], ge[i], 0.1 * inst.total_weight());
  // n + 1 queries per gradient sample.
  const auto before = oracle.query_count();
  (void)SampledOracleModel(oracle, 10, 1).gradient(y, 0);
  EXPECT_EQ(oracle.query_count() - before, 10 * 7);
}

TEST(SmMaximize, SampledOracleFindsOptimumOnSmallInstance) {
  const auto inst = gen_random(8, 16, 3, 4, 3);
  const auto oracle = ValueOracle::wrap(inst);
  const auto a = sm_maximize(oracle, 4, 300, 64, 5);
  const auto b = sm_maximize(oracle, 4, 300, 64, 5);
  EXPECT_EQ(a.chosen, b.chosen);
  EXPECT_GE(a.value, 0.73 * ref::opt(inst));
}
