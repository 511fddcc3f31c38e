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

#ifndef MAXCOV_MULTILINEAR_HPP_
#define MAXCOV_MULTILINEAR_HPP_

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "maxcov/errors.hpp"
#include "maxcov/instance.hpp"
#include "maxcov/oracle.hpp"
#include "maxcov/random.hpp"

namespace maxcov {

// Anything the continuous algorithms can climb: a set function on n items
// with (possibly estimated) multilinear value and gradient. `stream` selects
// the random stream for estimated quantities and is ignored by exact models.
template <class M>
concept MultilinearModel = requires(const M& m, std::span<const double> y,
                                    std::span<const int> s, std::uint64_t stream) {
  { m.n() } -> std::convertible_to<int>;
  { m.set_value(s) } -> std::convertible_to<double>;
  { m.value(y, stream) } -> std::convertible_to<double>;
  { m.gradient(y, stream) } -> std::convertible_to<std::vector<double>>;
  { M::kExact } -> std::convertible_to<bool>;
};

class ExactCoverageModel {
 public:
  static constexpr bool kExact = true;

  explicit ExactCoverageModel(const SetSystemInstance& inst) : inst_(&inst) {}

  int n() const { return inst_->n_sets(); }
  double set_value(std::span<const int> s) const { return coverage_value(*inst_, s); }
  double value(std::span<const double> y, std::uint64_t = 0) const {
    return multilinear_exact(*inst_, y);
  }
  std::vector<double> gradient(std::span<const double> y, std::uint64_t = 0) const {
    return multilinear_gradient(*inst_, y);
  }

 private:
  const SetSystemInstance* inst_;
};

// Monte Carlo estimates over a value oracle. Each estimate draws `samples`
// random sets R ~ y from the stream derive_seed(seed, {stream}). The gradient
// shares each R across coordinates: d_i += f(R + i) - f(R - i), which costs
// n + 1 queries per sample.
class SampledOracleModel {
 public:
  static constexpr bool kExact = false;

  SampledOracleModel(const ValueOracle& oracle, int samples, std::uint64_t seed)
      : oracle_(&oracle), samples_(samples), seed_(seed) {
    detail::require(samples >= 1, "sample count must be positive");
  }

  int n() const { return oracle_->ground_size(); }
  double set_value(std::span<const int> s) const { return (*oracle_)(s); }

  double value(std::span<const double> y, std::uint64_t stream = 0) const {
    Rng rng(derive_seed(seed_, {0, stream}));
    std::vector<int> r;
    double total = 0.0;
    for (int s = 0; s < samples_; ++s) {
      draw(y, rng, r);
      total += (*oracle_)(r);
    }
    return total / samples_;
  }

  std::vector<double> gradient(std::span<const double> y,
                               std::uint64_t stream = 0) const {
    const int n_items = n();
    Rng rng(derive_seed(seed_, {1, stream}));
    std::vector<double> g(static_cast<std::size_t>(n_items), 0.0);
    std::vector<int> r;
    std::vector<char> in(static_cast<std::size_t>(n_items));
    std::vector<int> probe;
    for (int s = 0; s < samples_; ++s) {
      draw(y, rng, r);
      std::fill(in.begin(), in.end(), 0);
      for (const int i : r) in[static_cast<std::size_t>(i)] = 1;
      const double base = (*oracle_)(r);
      for (int i = 0; i < n_items; ++i) {
        probe.clear();
        if (in[static_cast<std::size_t>(i)] != 0) {
          for (const int j : r) {
            if (j != i) probe.push_back(j);
          }
          g[static_cast<std::size_t>(i)] += base - (*oracle_)(probe);
        } else {
          probe = r;
          probe.insert(std::upper_bound(probe.begin(), probe.end(), i), i);
          g[static_cast<std::size_t>(i)] += (*oracle_)(probe) - base;
        }
      }
    }
    for (auto& v : g) v /= samples_;
    return g;
  }

 private:
  static void draw(std::span<const double> y, Rng& rng, std::vector<int>& out) {
    out.clear();
    for (std::size_t i = 0; i < y.size(); ++i) {
      if (uniform01(rng) < y[i]) out.push_back(static_cast<int>(i));
    }
  }

  const ValueOracle* oracle_;
  int samples_;
  std::uint64_t seed_;
};

static_assert(MultilinearModel<ExactCoverageModel>);
static_assert(MultilinearModel<SampledOracleModel>);

}  // namespace maxcov

#endif  // MAXCOV_MULTILINEAR_HPP_
