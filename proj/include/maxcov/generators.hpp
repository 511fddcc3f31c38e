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

#ifndef MAXCOV_GENERATORS_HPP_
#define MAXCOV_GENERATORS_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "maxcov/curves.hpp"
#include "maxcov/errors.hpp"
#include "maxcov/instance.hpp"
#include "maxcov/lp.hpp"
#include "maxcov/random.hpp"
#include "maxcov/rational.hpp"

namespace maxcov {

inline constexpr std::size_t kMaxGeneratedElements = 100000;
inline constexpr double kMaxBruteForceSubsets = 1e7;

// s sets sharing one element of weight 1, k = 1.
inline SetSystemInstance gen_unit_gap(int s) {
  detail::require(s >= 1, "unit gap instance needs s >= 1");
  std::vector<int> all(static_cast<std::size_t>(s));
  std::iota(all.begin(), all.end(), 0);
  return SetSystemInstance(s, 1, {Element{1.0, std::move(all)}});
}

// Parameters of the two-type symmetry-gap family for 1/(s+1) < c = N/D < 1/s.
struct GapFamilyParams {
  Rational c;
  int s = 0;
  std::int64_t N = 0, D = 0;
  std::int64_t a = 0, b = 0;  // a = (s+1)N - D, b = D - sN
  double alpha = 0.0;
  double x_star = 0.0;  // per-set value on type-A sets
  double y_star = 0.0;  // per-set value on type-B sets
  double p = 0.0;       // total weight of type A
};

inline GapFamilyParams gap_family_params(const Rational& c) {
  detail::require(c.num() > 0 && c.num() < c.den(), "gap family needs 0 < c < 1");
  detail::require(!c.is_reciprocal(),
                  "c = " + c.str() + " is reciprocal; use the unit gap instance");
  GapFamilyParams g;
  g.c = c;
  g.s = static_cast<int>(c.den() / c.num());
  g.N = c.num();
  g.D = c.den();
  g.a = (g.s + 1) * g.N - g.D;
  g.b = g.D - g.s * g.N;
  const double s = g.s;
  const double cv = c.value();
  g.alpha = alpha_star(c);
  g.x_star = 1.0 / s - g.alpha * (1.0 / s - cv);
  g.y_star = 1.0 / (s + 1.0) + g.alpha * (cv - 1.0 / (s + 1.0));
  // p b / (1 - x*) = (1 - p) a / (1 - y*) is linear in p.
  const double lhs = static_cast<double>(g.b) / (1.0 - g.x_star);
  const double rhs = static_cast<double>(g.a) / (1.0 - g.y_star);
  g.p = rhs / (lhs + rhs);
  return g;
}

// Type-A elements (weight p/a) each get s dedicated sets, type-B elements
// (weight (1-p)/b) get s+1. Sets are numbered type A first. k = a + b.
inline std::pair<SetSystemInstance, GapFamilyParams> gen_general_gap(const Rational& c) {
  const GapFamilyParams g = gap_family_params(c);
  const std::int64_t n64 = g.s * g.a + (g.s + 1) * g.b;
  if (n64 > 1'000'000 || static_cast<std::size_t>(g.a + g.b) > kMaxGeneratedElements) {
    throw CapacityError("general gap instance for c = " + c.str() + " is too large");
  }
  std::vector<Element> elements;
  int next = 0;
  for (std::int64_t e = 0; e < g.a; ++e) {
    std::vector<int> sets(static_cast<std::size_t>(g.s));
    std::iota(sets.begin(), sets.end(), next);
    next += g.s;
    elements.push_back(Element{g.p / static_cast<double>(g.a), std::move(sets)});
  }
  for (std::int64_t e = 0; e < g.b; ++e) {
    std::vector<int> sets(static_cast<std::size_t>(g.s + 1));
    std::iota(sets.begin(), sets.end(), next);
    next += g.s + 1;
    elements.push_back(Element{(1.0 - g.p) / static_cast<double>(g.b), std::move(sets)});
  }
  return {SetSystemInstance(static_cast<int>(n64), static_cast<int>(g.a + g.b),
                            std::move(elements)),
          g};
}

namespace detail {

inline double binom(std::int64_t n, std::int64_t r) {
  if (r < 0 || r > n) return 0.0;
  r = std::min(r, n - r);
  double v = 1.0;
  for (std::int64_t i = 1; i <= r; ++i) {
    v = v * static_cast<double>(n - r + i) / static_cast<double>(i);
  }
  return std::round(v);
}

// One element per r-subset of {offset, ..., offset + m - 1}.
inline void append_subset_family(int offset, int m, int r, double weight,
                                 std::vector<Element>& out) {
  std::vector<int> idx(static_cast<std::size_t>(r));
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    std::vector<int> sets(idx);
    for (auto& v : sets) v += offset;
    out.push_back(Element{weight, std::move(sets)});
    int t = r - 1;
    while (t >= 0 && idx[static_cast<std::size_t>(t)] == m - r + t) --t;
    if (t < 0) break;
    ++idx[static_cast<std::size_t>(t)];
    for (int u = t + 1; u < r; ++u) {
      idx[static_cast<std::size_t>(u)] = idx[static_cast<std::size_t>(u - 1)] + 1;
    }
  }
}

}  // namespace detail

// Integrality-gap family. For c = 1/s: Ms sets, one unit element per
// s-subset of the sets, k = M. Otherwise two families: s-subsets of Msa
// type-A sets with total weight p and (s+1)-subsets of M(s+1)b type-B sets
// with total weight 1 - p, k = M(a+b).
inline SetSystemInstance gen_integrality_gap(const Rational& c, int M) {
  detail::require(M >= 1, "integrality gap scale M must be >= 1");
  detail::require(c.num() > 0 && c.num() <= c.den(), "c must be in (0,1]");
  std::vector<Element> elements;
  auto check = [&](double count) {
    if (count > static_cast<double>(kMaxGeneratedElements)) {
      throw CapacityError("integrality gap instance would have " +
                          std::to_string(static_cast<long long>(count)) +
                          " elements (cap " + std::to_string(kMaxGeneratedElements) + ")");
    }
  };
  if (c.is_reciprocal()) {
    const int s = static_cast<int>(c.den());
    const int n = M * s;
    check(detail::binom(n, s));
    detail::append_subset_family(0, n, s, 1.0, elements);
    return SetSystemInstance(n, M, std::move(elements));
  }
  const GapFamilyParams g = gap_family_params(c);
  const std::int64_t na = static_cast<std::int64_t>(M) * g.s * g.a;
  const std::int64_t nb = static_cast<std::int64_t>(M) * (g.s + 1) * g.b;
  const double ca = detail::binom(na, g.s);
  const double cb = detail::binom(nb, g.s + 1);
  check(ca + cb);
  detail::append_subset_family(0, static_cast<int>(na), g.s, g.p / ca, elements);
  detail::append_subset_family(static_cast<int>(na), static_cast<int>(nb), g.s + 1,
                               (1.0 - g.p) / cb, elements);
  return SetSystemInstance(static_cast<int>(na + nb), M * static_cast<int>(g.a + g.b),
                           std::move(elements));
}

struct WeightedEdge {
  int u = 0, v = 0;
  double w = 1.0;
};

struct Graph {
  int n = 0;
  std::vector<WeightedEdge> edges;
};

// Max k-vertex-cover as coverage: vertices are sets, edges are elements.
inline SetSystemInstance gen_kvc(const Graph& g, int k) {
  std::vector<Element> elements;
  elements.reserve(g.edges.size());
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    const auto& ed = g.edges[e];
    detail::require(ed.u != ed.v, "edge " + std::to_string(e) + " is a self-loop");
    elements.push_back(Element{ed.w, {std::min(ed.u, ed.v), std::max(ed.u, ed.v)}});
  }
  return SetSystemInstance(g.n, k, std::move(elements));
}

// G(n, p) with weights uniform in (0,1].
inline Graph gen_random_graph(int n, double edge_prob, std::uint64_t seed) {
  detail::require(n >= 1, "graph needs at least one vertex");
  detail::require(edge_prob >= 0.0 && edge_prob <= 1.0, "edge probability outside [0,1]");
  Rng rng(derive_seed(seed, {0x6b7663}));
  Graph g;
  g.n = n;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (uniform01(rng) < edge_prob) g.edges.push_back({u, v, 1.0 - uniform01(rng)});
    }
  }
  return g;
}

// Weights uniform in (0,1]; each element is covered by a uniformly random
// number of sets in [1, max_cover], chosen uniformly without replacement.
inline SetSystemInstance gen_random(int n, int n_elements, int max_cover, int k,
                                    std::uint64_t seed, int min_cover = 1) {
  detail::require(n >= 1, "random instance needs n >= 1");
  detail::require(n_elements >= 0, "element count must be nonnegative");
  detail::require(min_cover >= 1 && min_cover <= max_cover && max_cover <= n,
                  "cover sizes need 1 <= min_cover <= max_cover <= n");
  Rng rng(seed);
  std::vector<Element> elements;
  std::vector<int> pool(static_cast<std::size_t>(n));
  for (int e = 0; e < n_elements; ++e) {
    const int span = max_cover - min_cover + 1;
    const int m = min_cover + static_cast<int>(uniform01(rng) * span);
    std::iota(pool.begin(), pool.end(), 0);
    for (int t = 0; t < m; ++t) {
      const int j = t + static_cast<int>(uniform01(rng) * (n - t));
      std::swap(pool[static_cast<std::size_t>(t)], pool[static_cast<std::size_t>(j)]);
    }
    std::vector<int> sets(pool.begin(), pool.begin() + m);
    elements.push_back(Element{1.0 - uniform01(rng), std::move(sets)});
  }
  return SetSystemInstance(n, k, std::move(elements));
}

struct BruteForceResult {
  std::vector<int> chosen;
  double value = 0.0;
};

// Exact optimum over all k-subsets in lexicographic order; the first
// maximizer wins ties.
inline BruteForceResult brute_force_opt(const SetSystemInstance& inst) {
  const int n = inst.n_sets();
  const int k = inst.k();
  if (detail::binom(n, k) > kMaxBruteForceSubsets) {
    throw CapacityError("brute force over C(" + std::to_string(n) + "," +
                        std::to_string(k) + ") subsets exceeds the 1e7 cap");
  }
  BruteForceResult best;
  if (k == 0) return best;
  const double scale = std::max(1.0, inst.total_weight());
  std::vector<int> count(inst.n_elements(), 0);
  std::vector<int> cur;
  double covered = 0.0;
  double best_val = -1.0;
  auto add = [&](int i) {
    for (const int e : inst.members(i)) {
      if (count[static_cast<std::size_t>(e)]++ == 0) covered += inst.element(static_cast<std::size_t>(e)).weight;
    }
  };
  auto remove = [&](int i) {
    for (const int e : inst.members(i)) {
      if (--count[static_cast<std::size_t>(e)] == 0) covered -= inst.element(static_cast<std::size_t>(e)).weight;
    }
  };
  auto rec = [&](auto&& self, int start) -> void {
    if (static_cast<int>(cur.size()) == k) {
      if (covered > best_val + 1e-12 * scale) {
        best_val = covered;
        best.chosen = cur;
      }
      return;
    }
    const int need = k - static_cast<int>(cur.size());
    for (int i = start; i <= n - need; ++i) {
      cur.push_back(i);
      add(i);
      self(self, i + 1);
      remove(i);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  best.value = coverage_value(inst, best.chosen);
  return best;
}

struct GapReport {
  double lp_value = 0.0;
  double integral_value = 0.0;
  double ratio = 1.0;
};

// Integral optimum over LP optimum.
inline GapReport gap_ratio(const SetSystemInstance& inst) {
  GapReport r;
  const LpSolution sol = solve_lp(build_mc_lp(inst).problem);
  if (sol.status != LpStatus::kOptimal) {
    throw NumericError(std::string("coverage LP not solved: ") + to_string(sol.status));
  }
  r.lp_value = sol.objective;
  r.integral_value = brute_force_opt(inst).value;
  r.ratio = r.lp_value > 0.0 ? r.integral_value / r.lp_value : 1.0;
  return r;
}

}  // namespace maxcov

#endif  // MAXCOV_GENERATORS_HPP_
