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

#ifndef MAXCOV_INSTANCE_HPP_
#define MAXCOV_INSTANCE_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "maxcov/errors.hpp"
#include "maxcov/rational.hpp"

namespace maxcov {

// A point of [0,1]^n indexed by set.
using FractionalPoint = std::vector<double>;

struct Element {
  double weight = 0.0;
  std::vector<int> covering_sets;  // sorted, duplicate-free, nonempty

  friend bool operator==(const Element&, const Element&) = default;
};

// Weighted set system: n sets over a ground set of weighted elements, with a
// cardinality bound k. Elements are stored by their covering-set lists; the
// set -> element incidence is derived on construction.
class SetSystemInstance {
 public:
  SetSystemInstance() = default;

  SetSystemInstance(int n_sets, int k, std::vector<Element> elements)
      : n_sets_(n_sets), k_(k), elements_(std::move(elements)) {
    detail::require(n_sets_ >= 1, "instance needs at least one set");
    detail::require(k_ >= 0 && k_ <= n_sets_,
                    "cardinality bound k=" + std::to_string(k_) +
                        " outside [0, n_sets=" + std::to_string(n_sets_) + "]");
    members_.assign(static_cast<std::size_t>(n_sets_), {});
    for (std::size_t e = 0; e < elements_.size(); ++e) {
      auto& el = elements_[e];
      detail::require(el.weight >= 0.0 && std::isfinite(el.weight),
                      "element " + std::to_string(e) +
                          " has negative or non-finite weight");
      detail::require(!el.covering_sets.empty(),
                      "element " + std::to_string(e) + " is covered by no set");
      std::sort(el.covering_sets.begin(), el.covering_sets.end());
      for (std::size_t t = 0; t < el.covering_sets.size(); ++t) {
        const int s = el.covering_sets[t];
        detail::require(s >= 0 && s < n_sets_,
                        "element " + std::to_string(e) + " references set " +
                            std::to_string(s) + " out of range");
        detail::require(t == 0 || el.covering_sets[t - 1] != s,
                        "element " + std::to_string(e) +
                            " lists set " + std::to_string(s) + " twice");
        members_[static_cast<std::size_t>(s)].push_back(static_cast<int>(e));
      }
    }
  }

  int n_sets() const { return n_sets_; }
  int k() const { return k_; }
  Rational ratio() const { return Rational(k_, n_sets_); }
  const std::vector<Element>& elements() const { return elements_; }
  std::size_t n_elements() const { return elements_.size(); }
  const Element& element(std::size_t e) const { return elements_[e]; }

  // Element indices contained in set i.
  std::span<const int> members(int i) const {
    return members_[static_cast<std::size_t>(i)];
  }

  double total_weight() const {
    double t = 0.0;
    for (const auto& el : elements_) t += el.weight;
    return t;
  }

  int max_cover() const {
    std::size_t m = 0;
    for (const auto& el : elements_) m = std::max(m, el.covering_sets.size());
    return static_cast<int>(m);
  }

  SetSystemInstance with_k(int k) const {
    return SetSystemInstance(n_sets_, k, elements_);
  }

  friend bool operator==(const SetSystemInstance& a,
                         const SetSystemInstance& b) {
    return a.n_sets_ == b.n_sets_ && a.k_ == b.k_ && a.elements_ == b.elements_;
  }

 private:
  int n_sets_ = 1;
  int k_ = 0;
  std::vector<Element> elements_;
  std::vector<std::vector<int>> members_ = {{}};
};

// Merges elements with identical covering lists (weights summed), drops
// zero-weight classes and orders elements lexicographically by covering list.
inline SetSystemInstance canonicalize(const SetSystemInstance& inst) {
  std::map<std::vector<int>, double> classes;
  for (const auto& el : inst.elements()) classes[el.covering_sets] += el.weight;
  std::vector<Element> merged;
  merged.reserve(classes.size());
  for (auto& [sets, w] : classes) {
    if (w > 0.0) merged.push_back(Element{w, sets});
  }
  return SetSystemInstance(inst.n_sets(), inst.k(), std::move(merged));
}

namespace detail {

inline std::vector<char> chosen_mask(const SetSystemInstance& inst,
                                     std::span<const int> chosen) {
  std::vector<char> mask(static_cast<std::size_t>(inst.n_sets()), 0);
  for (const int i : chosen) {
    require(i >= 0 && i < inst.n_sets(),
            "set index " + std::to_string(i) + " out of range");
    mask[static_cast<std::size_t>(i)] = 1;
  }
  return mask;
}

inline void require_point(const SetSystemInstance& inst,
                          std::span<const double> x) {
  require(x.size() == static_cast<std::size_t>(inst.n_sets()),
          "fractional point has length " + std::to_string(x.size()) +
              ", expected " + std::to_string(inst.n_sets()));
}

}  // namespace detail

// f(T): total weight of elements covered by at least one chosen set.
inline double coverage_value(const SetSystemInstance& inst,
                             std::span<const int> chosen) {
  const auto mask = detail::chosen_mask(inst, chosen);
  double v = 0.0;
  for (const auto& el : inst.elements()) {
    for (const int s : el.covering_sets) {
      if (mask[static_cast<std::size_t>(s)]) {
        v += el.weight;
        break;
      }
    }
  }
  return v;
}

// F(x) = sum_e w_e (1 - prod_{i covers e} (1 - x_i)).
inline double multilinear_exact(const SetSystemInstance& inst,
                                std::span<const double> x) {
  detail::require_point(inst, x);
  double v = 0.0;
  for (const auto& el : inst.elements()) {
    double miss = 1.0;
    for (const int s : el.covering_sets) miss *= 1.0 - x[static_cast<std::size_t>(s)];
    v += el.weight * (1.0 - miss);
  }
  return v;
}

// dF/dx_i = sum_{e in S_i} w_e prod_{j covers e, j != i} (1 - x_j).
// Leave-one-out products use prefix/suffix sweeps so x_j = 1 is exact.
inline std::vector<double> multilinear_gradient(const SetSystemInstance& inst,
                                                std::span<const double> x) {
  detail::require_point(inst, x);
  std::vector<double> grad(x.size(), 0.0);
  std::vector<double> prefix;
  for (const auto& el : inst.elements()) {
    const auto& cs = el.covering_sets;
    const std::size_t m = cs.size();
    prefix.assign(m + 1, 1.0);
    for (std::size_t t = 0; t < m; ++t) {
      prefix[t + 1] = prefix[t] * (1.0 - x[static_cast<std::size_t>(cs[t])]);
    }
    double suffix = 1.0;
    for (std::size_t t = m; t-- > 0;) {
      grad[static_cast<std::size_t>(cs[t])] += el.weight * prefix[t] * suffix;
      suffix *= 1.0 - x[static_cast<std::size_t>(cs[t])];
    }
  }
  return grad;
}

// Chosen set indices as a sorted list from a 0/1 indicator.
inline std::vector<int> support(std::span<const double> x, double tol = 0.5) {
  std::vector<int> s;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] > tol) s.push_back(static_cast<int>(i));
  }
  return s;
}

}  // namespace maxcov

#endif  // MAXCOV_INSTANCE_HPP_
