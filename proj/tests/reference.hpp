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

// Independent reference computations for the tests. Nothing here calls into
// the algorithms under test: coverage, optima and multilinear values are
// recomputed by plain bitmask enumeration.

#ifndef MAXCOV_TESTS_REFERENCE_HPP_
#define MAXCOV_TESTS_REFERENCE_HPP_

#include <bit>
#include <cstdint>
#include <vector>

#include "maxcov/instance.hpp"

namespace ref {

inline double value(const maxcov::SetSystemInstance& inst, std::uint32_t mask) {
  double v = 0.0;
  for (const auto& el : inst.elements()) {
    std::uint32_t cover = 0;
    for (const int s : el.covering_sets) cover |= 1u << s;
    if (cover & mask) v += el.weight;
  }
  return v;
}

inline std::uint32_t to_mask(const std::vector<int>& sets) {
  std::uint32_t m = 0;
  for (const int s : sets) m |= 1u << s;
  return m;
}

// max f(T) over |T| <= k.
inline double opt(const maxcov::SetSystemInstance& inst) {
  const int n = inst.n_sets();
  double best = 0.0;
  for (std::uint32_t m = 0; m < (1u << n); ++m) {
    if (std::popcount(m) > inst.k()) continue;
    const double v = value(inst, m);
    if (v > best) best = v;
  }
  return best;
}

// E[f(R)] with R ~ x, summed over all 2^n outcomes.
inline double multilinear(const maxcov::SetSystemInstance& inst, const std::vector<double>& x) {
  const int n = inst.n_sets();
  double total = 0.0;
  for (std::uint32_t m = 0; m < (1u << n); ++m) {
    double p = 1.0;
    for (int i = 0; i < n; ++i) p *= (m >> i & 1u) ? x[static_cast<std::size_t>(i)] : 1.0 - x[static_cast<std::size_t>(i)];
    if (p != 0.0) total += p * value(inst, m);
  }
  return total;
}

// Two sets sharing one unit element.
inline maxcov::SetSystemInstance two_set(int k = 1) {
  return maxcov::SetSystemInstance(2, k, {{1.0, {0, 1}}});
}

}  // namespace ref

#endif  // MAXCOV_TESTS_REFERENCE_HPP_
