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

#ifndef MAXCOV_ORACLE_HPP_
#define MAXCOV_ORACLE_HPP_

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "maxcov/errors.hpp"
#include "maxcov/instance.hpp"

namespace maxcov {

// Query-counted black-box access to a set function over {0, ..., n-1}.
// Algorithms that take a ValueOracle see only ground_size() and values; the
// backing instance (if any) is captured inside the closure. The counter is
// atomic so concurrent evaluators may share one oracle.
class ValueOracle {
 public:
  using Function = std::function<double(std::span<const int>)>;

  ValueOracle(int ground_size, Function f)
      : n_(ground_size),
        f_(std::move(f)),
        queries_(std::make_unique<std::atomic<std::int64_t>>(0)) {
    detail::require(n_ >= 1, "oracle ground set must be nonempty");
  }

  static ValueOracle wrap(SetSystemInstance inst) {
    auto shared = std::make_shared<const SetSystemInstance>(std::move(inst));
    const int n = shared->n_sets();
    return ValueOracle(n, [shared](std::span<const int> s) {
      return coverage_value(*shared, s);
    });
  }

  double operator()(std::span<const int> set) const {
    queries_->fetch_add(1, std::memory_order_relaxed);
    return f_(set);
  }

  int ground_size() const { return n_; }
  std::int64_t query_count() const {
    return queries_->load(std::memory_order_relaxed);
  }

 private:
  int n_;
  Function f_;
  std::unique_ptr<std::atomic<std::int64_t>> queries_;
};

// Per-class weights recovered from value queries.
//
// `signed_coefficients` holds the literal inclusion-exclusion sums
//   w_I = sum_{J subset of I} (-1)^{|I \ J|} f(J),
// which for a coverage function equal (-1)^{|I|+1} times the weight of
// elements whose covering list contains I. `class_weights` holds the weight
// of elements covered by exactly the sets in I, obtained by the same
// inclusion-exclusion applied to h(J) = f([n]) - f([n] \ J). Only entries
// with |I| <= max_order and nonzero value are stored; lookups of absent keys
// return 0. `residual` is f([n]) minus all stored class weights, i.e. the
// weight of elements covered by more than max_order sets.
struct MobiusTable {
  int n = 0;
  int max_order = 0;
  double full_value = 0.0;
  std::map<std::vector<int>, double> signed_coefficients;
  std::map<std::vector<int>, double> class_weights;
  double residual = 0.0;

  double signed_at(const std::vector<int>& set) const {
    const auto it = signed_coefficients.find(set);
    return it == signed_coefficients.end() ? 0.0 : it->second;
  }
  double class_at(const std::vector<int>& set) const {
    const auto it = class_weights.find(set);
    return it == class_weights.end() ? 0.0 : it->second;
  }
};

namespace detail {

inline std::vector<int> mask_to_set(std::uint64_t mask) {
  std::vector<int> s;
  while (mask != 0) {
    s.push_back(std::countr_zero(mask));
    mask &= mask - 1;
  }
  return s;
}

// Calls fn(mask) for every subset of {0..n-1} with 1 <= size <= max_size,
// ordered by size and then lexicographically.
template <class Fn>
void for_each_small_subset(int n, int max_size, Fn&& fn) {
  std::vector<int> idx;
  for (int size = 1; size <= max_size; ++size) {
    idx.resize(static_cast<std::size_t>(size));
    for (int t = 0; t < size; ++t) idx[static_cast<std::size_t>(t)] = t;
    while (true) {
      std::uint64_t mask = 0;
      for (const int i : idx) mask |= std::uint64_t{1} << i;
      fn(mask);
      int t = size - 1;
      while (t >= 0 && idx[static_cast<std::size_t>(t)] == n - size + t) --t;
      if (t < 0) break;
      ++idx[static_cast<std::size_t>(t)];
      for (int u = t + 1; u < size; ++u) {
        idx[static_cast<std::size_t>(u)] = idx[static_cast<std::size_t>(u - 1)] + 1;
      }
    }
  }
}

}  // namespace detail

// Extracts the Moebius table of order M from a value oracle. Every distinct
// subset is queried at most once: the subsets J with |J| <= M and their
// complements [n] \ J.
//
// Throws InputError when M < 1, n > 62, or a class weight is negative beyond
// 1e-7 (relative to f([n])), which means the oracle is not a coverage
// function.
inline MobiusTable mobius_weights(const ValueOracle& oracle, int max_order) {
  const int n = oracle.ground_size();
  detail::require(max_order >= 1, "Moebius order M must be >= 1");
  detail::require(n <= 62, "Moebius extraction supports at most 62 sets");
  const int m = std::min(max_order, n);
  const std::uint64_t full = (n == 64) ? ~std::uint64_t{0}
                                       : (std::uint64_t{1} << n) - 1;

  std::unordered_map<std::uint64_t, double> memo;
  auto f = [&](std::uint64_t mask) {
    const auto it = memo.find(mask);
    if (it != memo.end()) return it->second;
    const auto set = detail::mask_to_set(mask);
    const double v = oracle(set);
    memo.emplace(mask, v);
    return v;
  };

  MobiusTable table;
  table.n = n;
  table.max_order = max_order;
  table.full_value = f(full);
  const double scale = std::max(1.0, std::fabs(table.full_value));
  const double zero_tol = 1e-12 * scale;

  const double empty_value = f(0);
  double class_sum = 0.0;
  detail::for_each_small_subset(n, m, [&](std::uint64_t mask) {
    double signed_sum = 0.0;
    double class_sum_i = 0.0;
    const int size = std::popcount(mask);
    // Enumerate J subset of I, including the empty set.
    std::uint64_t sub = mask;
    while (true) {
      const int sign = ((size - std::popcount(sub)) % 2 == 0) ? 1 : -1;
      signed_sum += sign * (sub == 0 ? empty_value : f(sub));
      const double h = (sub == 0) ? 0.0 : table.full_value - f(full & ~sub);
      class_sum_i += sign * h;
      if (sub == 0) break;
      sub = (sub - 1) & mask;
    }
    const auto key = detail::mask_to_set(mask);
    if (std::fabs(signed_sum) > zero_tol) {
      table.signed_coefficients.emplace(key, signed_sum);
    }
    if (class_sum_i < -1e-7 * scale) {
      throw InputError("oracle is not a coverage function: class weight " +
                       std::to_string(class_sum_i) + " is negative");
    }
    if (class_sum_i > zero_tol) {
      table.class_weights.emplace(key, class_sum_i);
      class_sum += class_sum_i;
    }
  });
  table.residual = table.full_value - class_sum;
  if (std::fabs(table.residual) <= zero_tol) table.residual = 0.0;
  if (table.residual < -1e-7 * scale) {
    throw InputError("oracle is not a coverage function: negative residual " +
                     std::to_string(table.residual));
  }
  table.residual = std::max(table.residual, 0.0);
  return table;
}

// The coverage instance an oracle is equivalent to under a Moebius table:
// one element per stored class, plus the residual mass as an element covered
// by every set.
inline SetSystemInstance surrogate_instance(const MobiusTable& table, int k) {
  std::vector<Element> elements;
  elements.reserve(table.class_weights.size() + 1);
  for (const auto& [sets, w] : table.class_weights) {
    elements.push_back(Element{w, sets});
  }
  if (table.residual > 0.0) {
    std::vector<int> all(static_cast<std::size_t>(table.n));
    for (int i = 0; i < table.n; ++i) all[static_cast<std::size_t>(i)] = i;
    elements.push_back(Element{table.residual, std::move(all)});
  }
  return canonicalize(SetSystemInstance(table.n, k, std::move(elements)));
}

}  // namespace maxcov

#endif  // MAXCOV_ORACLE_HPP_
