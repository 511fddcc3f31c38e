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

#ifndef MAXCOV_ROUNDING_HPP_
#define MAXCOV_ROUNDING_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "maxcov/curves.hpp"
#include "maxcov/errors.hpp"
#include "maxcov/instance.hpp"
#include "maxcov/lp.hpp"
#include "maxcov/oracle.hpp"

namespace maxcov {

struct RoundingOutcome {
  std::vector<int> chosen;
  double fractional_value = 0.0;  // F(z)
  double integral_value = 0.0;    // f(chosen)
  double lp_value = 0.0;
  double alpha = 0.0;
  FractionalPoint x;  // LP element values, canonical element order
  FractionalPoint y;
  FractionalPoint z;
  std::int64_t oracle_queries = 0;
};

// z_i = alpha c + (1 - alpha) y_i.
inline FractionalPoint mix(std::span<const double> y, double alpha, double c) {
  detail::require(alpha >= 0.0 && alpha <= 1.0, "mixing alpha outside [0,1]");
  detail::require(c >= 0.0 && c <= 1.0, "mixing c outside [0,1]");
  FractionalPoint z(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    detail::require(y[i] >= -1e-12 && y[i] <= 1.0 + 1e-12,
                    "coordinate " + std::to_string(i) + " outside [0,1]");
    z[i] = std::clamp(alpha * c + (1.0 - alpha) * y[i], 0.0, 1.0);
  }
  return z;
}

struct PipageTrace {
  int steps = 0;
  double start_value = 0.0;
  double end_value = 0.0;
};

namespace detail {

inline constexpr double kFracTol = 1e-12;

inline bool is_fractional(double v) { return v > kFracTol && v < 1.0 - kFracTol; }

inline void snap(double& v) {
  if (v <= kFracTol) v = 0.0;
  if (v >= 1.0 - kFracTol) v = 1.0;
}

}  // namespace detail

// Pipage rounding on the uniform matroid {|S| <= k} against an arbitrary
// multilinear evaluator `F` (a callable on a point). The lowest-index pair of
// fractional coordinates is moved along e_i - e_j to whichever reachable
// endpoint has the larger value; F is convex along that line, so the value
// never drops. Throws NumericError if it does (beyond round-off), unless
// `strict` is off, which is needed when F is only an estimate.
template <class Eval>
std::vector<int> pipage_round_with(Eval&& F, FractionalPoint z, int k,
                                   PipageTrace* trace = nullptr,
                                   bool strict = true) {
  const double total = std::accumulate(z.begin(), z.end(), 0.0);
  detail::require(total <= k + 1e-9,
                  "pipage input violates the budget: sum z = " +
                      std::to_string(total) + " > k = " + std::to_string(k));
  for (auto& v : z) {
    detail::require(v >= -1e-12 && v <= 1.0 + 1e-12, "pipage input outside [0,1]");
    detail::snap(v);
  }
  double current = F(std::as_const(z));
  const double scale = std::max(1.0, std::fabs(current));
  if (trace != nullptr) trace->start_value = current;
  int steps = 0;
  const std::size_t n = z.size();
  while (true) {
    std::size_t i = n, j = n;
    for (std::size_t t = 0; t < n; ++t) {
      if (!detail::is_fractional(z[t])) continue;
      if (i == n) {
        i = t;
      } else {
        j = t;
        break;
      }
    }
    if (j == n) {
      if (i != n) {
        // One fractional coordinate left; the others sum to an integer.
        double used = 0.0;
        for (std::size_t t = 0; t < n; ++t) {
          if (t != i) used += z[t];
        }
        z[i] = (std::floor(k - used + 1e-9) >= 1.0) ? 1.0 : 0.0;
        current = F(std::as_const(z));
        ++steps;
      }
      break;
    }
    const double up = std::min(1.0 - z[i], z[j]);   // z_i up, z_j down
    const double down = std::min(z[i], 1.0 - z[j]); // z_i down, z_j up
    FractionalPoint a = z, b = z;
    a[i] += up;
    a[j] -= up;
    b[i] -= down;
    b[j] += down;
    for (double* v : {&a[i], &a[j], &b[i], &b[j]}) detail::snap(*v);
    const double fa = F(std::as_const(a));
    const double fb = F(std::as_const(b));
    const bool take_a = fa >= fb - 1e-12 * scale;
    const double best = take_a ? fa : fb;
    if (strict && best < current - 1e-9 * scale) {
      throw NumericError("pipage step decreased the multilinear value from " +
                         std::to_string(current) + " to " + std::to_string(best));
    }
    z = take_a ? std::move(a) : std::move(b);
    current = best;
    ++steps;
  }
  if (trace != nullptr) {
    trace->steps = steps;
    trace->end_value = current;
  }
  return support(z);
}

inline std::vector<int> pipage_round(const SetSystemInstance& inst,
                                     const FractionalPoint& z, int k,
                                     PipageTrace* trace = nullptr) {
  detail::require(static_cast<int>(z.size()) == inst.n_sets(),
                  "point length does not match the number of sets");
  return pipage_round_with(
      [&inst](const FractionalPoint& p) { return multilinear_exact(inst, p); },
      z, k, trace);
}

namespace detail {

inline std::vector<int> all_sets(int n) {
  std::vector<int> s(static_cast<std::size_t>(n));
  std::iota(s.begin(), s.end(), 0);
  return s;
}

// Solves `problem` (the coverage LP of `canon`, possibly with extra rows),
// mixes its y-part with `alpha` and c = k/n, and pipage-rounds on `canon`.
// The caller measures the integral value.
inline RoundingOutcome round_lp_problem(const SetSystemInstance& canon, const McLp& lp,
                                        const LpProblem& problem, double alpha) {
  RoundingOutcome out;
  const int n = canon.n_sets();
  const int k = canon.k();
  const LpSolution sol = solve_lp(problem);
  if (sol.status != LpStatus::kOptimal) {
    throw NumericError(std::string("coverage LP not solved: ") +
                       to_string(sol.status));
  }
  out.lp_value = sol.objective;
  out.x = lp.x_values(sol);
  out.y = lp.y_values(sol);
  for (auto& v : out.y) v = std::clamp(v, 0.0, 1.0);
  out.alpha = alpha;
  if (k == 0) {
    out.z.assign(static_cast<std::size_t>(n), 0.0);
    return out;
  }
  out.z = mix(out.y, alpha, static_cast<double>(k) / n);
  // Rounding error in the LP may push sum z a hair above k.
  const double total = std::accumulate(out.z.begin(), out.z.end(), 0.0);
  if (total > k) {
    for (auto& v : out.z) v *= k / total;
  }
  out.fractional_value = multilinear_exact(canon, out.z);
  out.chosen = pipage_round(canon, out.z, k);
  return out;
}

inline RoundingOutcome round_explicit(const SetSystemInstance& canon) {
  const McLp lp = build_mc_lp(canon);
  const double alpha = canon.k() == 0 ? 0.0 : alpha_star(Rational(canon.k(), canon.n_sets()));
  return round_lp_problem(canon, lp, lp.problem, alpha);
}

}  // namespace detail

// LP relaxation, non-oblivious mixing with alpha*(k/n), pipage rounding.
inline RoundingOutcome round_mc(const SetSystemInstance& inst) {
  const SetSystemInstance canon = canonicalize(inst);
  RoundingOutcome out = detail::round_explicit(canon);
  out.integral_value = coverage_value(inst, out.chosen);
  return out;
}

// Same pipeline when the instance is only reachable through a value oracle:
// the Moebius table of order M(k/n) defines the LP, and the multilinear
// extension is evaluated on the table's surrogate instance (classes larger
// than M count as covered by every set). The integral value is measured by
// the oracle.
inline RoundingOutcome round_mc_oracle(const ValueOracle& oracle, int n, int k) {
  detail::require(n == oracle.ground_size(), "n does not match the oracle");
  detail::require(k >= 0 && k <= n, "k outside [0, n]");
  const std::int64_t before = oracle.query_count();
  RoundingOutcome out;
  if (k == n) {
    out.chosen = detail::all_sets(n);
    out.integral_value = oracle(out.chosen);
    out.fractional_value = out.lp_value = out.integral_value;
    out.alpha = 1.0;
    out.y.assign(static_cast<std::size_t>(n), 1.0);
    out.z = out.y;
  } else {
    const int M = k == 0 ? 1 : std::min(m_of_c(Rational(k, n)), n);
    const MobiusTable table = mobius_weights(oracle, M);
    const SetSystemInstance surrogate = surrogate_instance(table, k);
    out = detail::round_explicit(surrogate);
    out.integral_value = oracle(out.chosen);
  }
  out.oracle_queries = oracle.query_count() - before;
  return out;
}

}  // namespace maxcov

#endif  // MAXCOV_ROUNDING_HPP_
