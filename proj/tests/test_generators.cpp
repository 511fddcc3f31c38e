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
#include "reference.hpp"

using namespace maxcov;

namespace {

double choose(int n, int r) {
  if (r < 0 || r > n) return 0.0;
  double v = 1.0;
  for (int i = 1; i <= r; ++i) v = v * (n - r + i) / i;
  return std::round(v);
}

}  // namespace

TEST(UnitGap, Shapes) {
  const auto two = gen_unit_gap(2);
  EXPECT_EQ(two.n_sets(), 2);
  EXPECT_EQ(two.k(), 1);
  EXPECT_DOUBLE_EQ(multilinear_exact(two, std::vector<double>{0.5, 0.5}), 0.75);
  EXPECT_EQ(brute_force_opt(gen_unit_gap(1)).value, 1.0);
  const auto five = gen_unit_gap(5);
  EXPECT_NEAR(multilinear_exact(five, std::vector<double>(5, 0.2)), 1.0 - std::pow(0.8, 5), 1e-15);
  EXPECT_THROW(gen_unit_gap(0), InputError);
}

TEST(GeneralGap, TwoFifths) {
  const auto [inst, g] = gen_general_gap(Rational(2, 5));
  EXPECT_EQ(g.s, 2);
  EXPECT_EQ(g.a, 1);
  EXPECT_EQ(g.b, 1);
  EXPECT_EQ(inst.n_sets(), 5);
  EXPECT_EQ(inst.k(), 2);
  EXPECT_NEAR(brute_force_opt(inst).value, 1.0, 1e-9);
  EXPECT_THROW(gen_general_gap(Rational(1, 3)), InputError);
}

TEST(GeneralGap, FamilyInvariants) {
  int tested = 0;
  for (int D = 3; D <= 12; ++D) {
    for (int N = 1; N < D; ++N) {
      const Rational c(N, D);
      if (c.num() != N || c.is_reciprocal()) continue;
      const auto g = gap_family_params(c);
      if (g.a > 4 || g.b > 4) continue;
      const auto [inst, params] = gen_general_gap(c);
      const double cv = c.value();
      EXPECT_GT(g.a, 0);
      EXPECT_GT(g.b, 0);
      EXPECT_EQ(g.a + g.b, N);
      EXPECT_EQ(g.s * g.a + (g.s + 1) * g.b, D);
      EXPECT_GE(g.x_star, cv - 1e-12);
      EXPECT_LE(g.x_star, 1.0 / g.s + 1e-12);
      EXPECT_GE(g.y_star, 1.0 / (g.s + 1) - 1e-12);
      EXPECT_LE(g.y_star, cv + 1e-12);
      EXPECT_GT(g.p, 0.0);
      EXPECT_LT(g.p, 1.0);
      EXPECT_NEAR(g.p * g.b / (1 - g.x_star), (1 - g.p) * g.a / (1 - g.y_star), 1e-10);
      // The symmetric point has value rho(c).
      std::vector<double> pt(static_cast<std::size_t>(inst.n_sets()));
      for (int i = 0; i < inst.n_sets(); ++i) {
        pt[static_cast<std::size_t>(i)] = i < g.s * g.a ? g.x_star : g.y_star;
      }
      EXPECT_NEAR(multilinear_exact(inst, pt), rho(c).rho, 1e-8) << c.str();
      EXPECT_LE(std::accumulate(pt.begin(), pt.end(), 0.0), inst.k() + 1e-9);
      if (choose(inst.n_sets(), inst.k()) <= 2e6) {
        EXPECT_NEAR(brute_force_opt(inst).value, 1.0, 1e-9) << c.str();
      }
      ++tested;
    }
  }
  EXPECT_GE(tested, 10);
}

TEST(IntegralityGap, HalfFamily) {
  const auto inst = gen_integrality_gap(Rational(1, 2), 2);
  EXPECT_EQ(inst.n_sets(), 4);
  EXPECT_EQ(inst.n_elements(), 6u);
  EXPECT_EQ(inst.k(), 2);
  EXPECT_EQ(brute_force_opt(inst).value, 5.0);
  const auto r = gap_ratio(gen_integrality_gap(Rational(1, 2), 4));
  EXPECT_NEAR(r.lp_value, 28.0, 1e-8);
  EXPECT_NEAR(r.integral_value, 22.0, 1e-12);
  EXPECT_NEAR(r.ratio, 22.0 / 28.0, 1e-10);
}

TEST(IntegralityGap, ReciprocalFormula) {
  for (int s = 2; s <= 3; ++s) {
    double prev = 2.0;
    for (int M = 2; M <= 4; ++M) {
      const auto inst = gen_integrality_gap(Rational(1, s), M);
      const double lp = choose(M * s, s);
      const double opt = lp - choose(M * (s - 1), s);
      EXPECT_EQ(inst.n_elements(), static_cast<std::size_t>(lp));
      const auto r = gap_ratio(inst);
      EXPECT_NEAR(r.lp_value, lp, 1e-8);
      EXPECT_NEAR(r.integral_value, opt, 1e-9);
      EXPECT_LT(r.ratio, prev);
      EXPECT_GT(r.ratio, 1.0 - std::pow(1.0 - 1.0 / s, s));
      prev = r.ratio;
    }
  }
}

TEST(IntegralityGap, InteriorFamilyIsAboveRho) {
  const auto inst = gen_integrality_gap(Rational(2, 5), 1);
  const auto g = gap_family_params(Rational(2, 5));
  EXPECT_EQ(inst.n_sets(), static_cast<int>(g.s * g.a + (g.s + 1) * g.b));
  EXPECT_NEAR(inst.total_weight(), 1.0, 1e-12);
  EXPECT_GE(gap_ratio(inst).ratio, rho(Rational(2, 5)).rho - 1e-8);
}

TEST(IntegralityGap, CapacityGuard) {
  EXPECT_THROW(gen_integrality_gap(Rational(1, 2), 1000), CapacityError);
  EXPECT_THROW(gen_integrality_gap(Rational(1, 2), 0), InputError);
}

TEST(Kvc, Examples) {
  const Graph tri{3, {{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 1.0}}};
  EXPECT_EQ(brute_force_opt(gen_kvc(tri, 1)).value, 2.0);
  const Graph star{4, {{0, 1, 1.0}, {0, 2, 1.0}, {0, 3, 1.0}}};
  const auto best = brute_force_opt(gen_kvc(star, 1));
  EXPECT_EQ(best.value, 3.0);
  EXPECT_EQ(best.chosen, std::vector<int>{0});
  const auto empty = gen_kvc(Graph{5, {}}, 2);
  EXPECT_EQ(empty.n_elements(), 0u);
  EXPECT_EQ(brute_force_opt(empty).value, 0.0);
  EXPECT_THROW(gen_kvc(Graph{2, {{1, 1, 1.0}}}, 1), InputError);
  const auto kvc = gen_kvc(gen_random_graph(10, 0.5, 3), 5);
  for (const auto& el : kvc.elements()) {
    EXPECT_EQ(el.covering_sets.size(), 2u);
  }
}

TEST(Random, SeededAndBounded) {
  const auto a = gen_random(9, 30, 4, 3, 42, 2);
  EXPECT_EQ(a, gen_random(9, 30, 4, 3, 42, 2));
  EXPECT_FALSE(a == gen_random(9, 30, 4, 3, 43, 2));
  for (const auto& el : a.elements()) {
    EXPECT_GE(el.covering_sets.size(), 2u);
    EXPECT_LE(el.covering_sets.size(), 4u);
    EXPECT_GT(el.weight, 0.0);
    EXPECT_LE(el.weight, 1.0);
  }
  EXPECT_THROW(gen_random(3, 5, 4, 1, 1), InputError);
  const auto g1 = gen_random_graph(12, 0.4, 9), g2 = gen_random_graph(12, 0.4, 9);
  ASSERT_EQ(g1.edges.size(), g2.edges.size());
  for (std::size_t e = 0; e < g1.edges.size(); ++e) EXPECT_EQ(g1.edges[e].w, g2.edges[e].w);
}

TEST(BruteForce, MatchesEnumerationAndBreaksTiesLexicographically) {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const int n = 4 + static_cast<int>(seed % 9);
    const auto inst = gen_random(n, 2 * n, std::min(4, n), n / 2, seed);
    const auto r = brute_force_opt(inst);
    EXPECT_NEAR(r.value, ref::opt(inst), 1e-12);
    EXPECT_NEAR(coverage_value(inst, r.chosen), r.value, 1e-12);
  }
  const SetSystemInstance tie(3, 2, {{1.0, {0}}, {1.0, {1}}, {1.0, {2}}});
  EXPECT_EQ(brute_force_opt(tie).chosen, (std::vector<int>{0, 1}));
  EXPECT_EQ(brute_force_opt(ref::two_set()).value, 1.0);
  const auto full = gen_random(6, 9, 3, 6, 2);
  EXPECT_NEAR(brute_force_opt(full).value, full.total_weight(), 1e-12);
  EXPECT_THROW(brute_force_opt(gen_random(40, 5, 2, 20, 1)), CapacityError);
}

TEST(GapRatio, NeverBelowRho) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const int n = 6 + static_cast<int>(seed % 4) * 2;
    const auto inst = gen_random(n, 2 * n, 3, n / 2, seed);
    EXPECT_GE(gap_ratio(inst).ratio, 0.75 - 1e-8);
  }
  EXPECT_NEAR(gap_ratio(gen_random(6, 8, 3, 6, 4)).ratio, 1.0, 1e-9);
}
