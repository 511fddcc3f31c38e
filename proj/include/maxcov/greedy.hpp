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

#ifndef MAXCOV_GREEDY_HPP_
#define MAXCOV_GREEDY_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <vector>

#include "maxcov/errors.hpp"
#include "maxcov/instance.hpp"
#include "maxcov/multilinear.hpp"
#include "maxcov/oracle.hpp"
#include "maxcov/rounding.hpp"

namespace maxcov {

// k rounds of best marginal gain; ties go to the lowest index.
template <class SetFn>
std::vector<int> classic_greedy_with(SetFn&& f, int n, int k) {
  detail::require(k >= 0 && k <= n, "greedy needs 0 <= k <= n");
  std::vector<int> chosen;
  std::vector<char> taken(static_cast<std::size_t>(n), 0);
  std::vector<int> probe;
  for (int round = 0; round < k; ++round) {
    int best = -1;
    double best_val = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
      if (taken[static_cast<std::size_t>(i)] != 0) continue;
      probe = chosen;
      probe.insert(std::upper_bound(probe.begin(), probe.end(), i), i);
      const double v = f(std::span<const int>(probe));
      if (best < 0 || v > best_val + 1e-12 * std::max(1.0, std::fabs(best_val))) {
        best = i;
        best_val = v;
      }
    }
    chosen.insert(std::upper_bound(chosen.begin(), chosen.end(), best), best);
    taken[static_cast<std::size_t>(best)] = 1;
  }
  return chosen;
}

inline std::vector<int> classic_greedy(const ValueOracle& oracle, int n, int k) {
  detail::require(n == oracle.ground_size(), "n does not match the oracle");
  return classic_greedy_with([&](std::span<const int> s) { return oracle(s); }, n, k);
}

inline std::vector<int> classic_greedy(const SetSystemInstance& inst, int k) {
  return classic_greedy_with(
      [&](std::span<const int> s) { return coverage_value(inst, s); },
      inst.n_sets(), k);
}

// Extends `chosen` greedily (best marginal gain, lowest index on ties)
// until it holds k sets.
inline std::vector<int> greedy_pad(const SetSystemInstance& inst,
                                   std::vector<int> chosen, int k) {
  detail::require(k >= 0 && k <= inst.n_sets(), "pad target outside [0, n]");
  std::sort(chosen.begin(), chosen.end());
  std::vector<char> taken(static_cast<std::size_t>(inst.n_sets()), 0);
  for (const int i : chosen) taken[static_cast<std::size_t>(i)] = 1;
  std::vector<char> covered(inst.n_elements(), 0);
  for (const int i : chosen) {
    for (const int e : inst.members(i)) covered[static_cast<std::size_t>(e)] = 1;
  }
  while (static_cast<int>(chosen.size()) < k) {
    int best = -1;
    double best_gain = -1.0;
    for (int i = 0; i < inst.n_sets(); ++i) {
      if (taken[static_cast<std::size_t>(i)] != 0) continue;
      double gain = 0.0;
      for (const int e : inst.members(i)) {
        if (covered[static_cast<std::size_t>(e)] == 0) gain += inst.element(static_cast<std::size_t>(e)).weight;
      }
      if (gain > best_gain) {
        best = i;
        best_gain = gain;
      }
    }
    taken[static_cast<std::size_t>(best)] = 1;
    for (const int e : inst.members(best)) covered[static_cast<std::size_t>(e)] = 1;
    chosen.insert(std::upper_bound(chosen.begin(), chosen.end(), best), best);
  }
  return chosen;
}

// T_c = ln(1/(1-c))/c, the time at which the measured process has spent
// budget cn. Returns +infinity at c = 1.
inline double stopping_time(double c) {
  detail::require(c > 0.0 && c <= 1.0, "stopping time needs c in (0,1]");
  if (c == 1.0) return std::numeric_limits<double>::infinity();
  return -std::log1p(-c) / c;
}

struct McgTrajectory {
  double delta = 0.0;
  double horizon = 0.0;
  int steps = 0;
  std::vector<double> times;                // snapshot times
  std::vector<FractionalPoint> snapshots;   // y at those times
  std::vector<double> values;               // F at those times
  std::vector<double> budget_sums;          // sum y after every step (index 0: t=0)
  FractionalPoint final_y;
  double final_value = 0.0;

  double max_budget_sum() const {
    return budget_sums.empty() ? 0.0
                               : *std::max_element(budget_sums.begin(), budget_sums.end());
  }
};

namespace detail {

// Indices of the k largest entries, ties to the lower index.
inline std::vector<int> top_k(std::span<const double> g, int k) {
  std::vector<int> idx(g.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
    return g[static_cast<std::size_t>(a)] > g[static_cast<std::size_t>(b)];
  });
  idx.resize(static_cast<std::size_t>(std::min<std::size_t>(g.size(), static_cast<std::size_t>(k))));
  return idx;
}

}  // namespace detail

// Euler discretization of dy_i/dt = (1 - y_i) x_i(t), x(t) the indicator of
// the k largest gradient coordinates, from y(0) = 0 to time T. Snapshots are
// kept every `stride` steps (0 picks a stride giving at most ~256).
template <MultilinearModel Model>
McgTrajectory measured_continuous_greedy(const Model& model, int k, double T,
                                         int steps, int stride = 0) {
  const int n = model.n();
  detail::require(steps >= 1, "continuous greedy needs at least one step");
  detail::require(T >= 0.0 && std::isfinite(T), "horizon T must be finite and >= 0");
  detail::require(k >= 0 && k <= n, "continuous greedy needs 0 <= k <= n");
  if (stride <= 0) stride = std::max(1, steps / 256);

  McgTrajectory tr;
  tr.horizon = T;
  tr.steps = steps;
  tr.delta = T / steps;
  FractionalPoint y(static_cast<std::size_t>(n), 0.0);
  auto snapshot = [&](int step) {
    tr.times.push_back(step * tr.delta);
    tr.snapshots.push_back(y);
    tr.values.push_back(model.value(y, 0));
  };
  snapshot(0);
  tr.budget_sums.push_back(0.0);
  for (int step = 1; step <= steps; ++step) {
    const auto g = model.gradient(y, static_cast<std::uint64_t>(step));
    for (const int i : detail::top_k(g, k)) {
      auto& yi = y[static_cast<std::size_t>(i)];
      yi += tr.delta * (1.0 - yi);
    }
    tr.budget_sums.push_back(std::accumulate(y.begin(), y.end(), 0.0));
    if (step % stride == 0 || step == steps) snapshot(step);
  }
  tr.final_y = y;
  tr.final_value = tr.values.back();
  return tr;
}

inline McgTrajectory measured_continuous_greedy(const SetSystemInstance& inst,
                                                int k, double T, int steps) {
  return measured_continuous_greedy(ExactCoverageModel(inst), k, T, steps);
}

inline McgTrajectory measured_continuous_greedy(const ValueOracle& oracle, int k,
                                                double T, int steps, int samples,
                                                std::uint64_t seed) {
  return measured_continuous_greedy(SampledOracleModel(oracle, samples, seed), k,
                                    T, steps);
}

struct SmResult {
  std::vector<int> chosen;
  double value = 0.0;
  double fractional_value = 0.0;  // F(y(T_c)) after overshoot repair
  double horizon = 0.0;
  int steps = 0;
  bool rescaled = false;
};

inline int default_mcg_steps(int n) { return std::max(1000, 10 * n); }
inline int default_mcg_samples(int n) { return 64 * n; }

// Measured continuous greedy to T_{k/n}, then pipage rounding. If the
// discretization overshoots the budget, y is scaled down to sum k.
template <MultilinearModel Model>
SmResult sm_maximize(const Model& model, int k, int steps = 0) {
  const int n = model.n();
  detail::require(k >= 0 && k <= n, "sm_maximize needs 0 <= k <= n");
  if (steps <= 0) steps = default_mcg_steps(n);
  SmResult out;
  out.steps = steps;
  if (k == 0 || k == n) {
    if (k == n) out.chosen = detail::all_sets(n);
    out.value = model.set_value(out.chosen);
    out.fractional_value = out.value;
    return out;
  }
  const double c = static_cast<double>(k) / n;
  out.horizon = stopping_time(c);
  McgTrajectory tr = measured_continuous_greedy(model, k, out.horizon, steps);
  FractionalPoint y = std::move(tr.final_y);
  const double total = std::accumulate(y.begin(), y.end(), 0.0);
  if (total > k) {
    for (auto& v : y) v *= k / total;
    out.rescaled = true;
  }
  // A fixed stream makes the estimated F a deterministic function.
  auto F = [&](const FractionalPoint& p) { return model.value(p, 0); };
  out.fractional_value = F(y);
  out.chosen = pipage_round_with(F, std::move(y), k, nullptr, Model::kExact);
  out.value = model.set_value(out.chosen);
  return out;
}

inline SmResult sm_maximize(const SetSystemInstance& inst, int k, int steps = 0) {
  return sm_maximize(ExactCoverageModel(inst), k, steps);
}

inline SmResult sm_maximize(const ValueOracle& oracle, int k, int steps,
                            int samples, std::uint64_t seed) {
  if (samples <= 0) samples = default_mcg_samples(oracle.ground_size());
  return sm_maximize(SampledOracleModel(oracle, samples, seed), k, steps);
}

}  // namespace maxcov

#endif  // MAXCOV_GREEDY_HPP_
