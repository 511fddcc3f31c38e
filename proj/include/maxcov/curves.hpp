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

#ifndef MAXCOV_CURVES_HPP_
#define MAXCOV_CURVES_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "maxcov/errors.hpp"
#include "maxcov/normal.hpp"
#include "maxcov/rational.hpp"

namespace maxcov {

enum class Regime { kReciprocal, kInterior };

struct RhoResult {
  Rational c;
  int s = 1;  // c = 1/s, or 1/(s+1) < c < 1/s
  Regime regime = Regime::kReciprocal;
  double alpha_star = 0.0;
  double rho = 0.0;
};

namespace detail {

inline void require_ratio(const Rational& c) {
  require(c.num() > 0 && c.num() <= c.den(),
          "ratio c=" + c.str() + " outside (0,1]");
}

inline void require_open_ratio(double c) {
  require(c > 0.0 && c < 1.0, "ratio c=" + std::to_string(c) + " outside (0,1)");
}

}  // namespace detail

// Residual miss bound (1 - alpha c - (1 - alpha)/m)^m for an element covered
// by m sets under mixing weight alpha.
inline double sigma(double alpha, int m, double c) {
  detail::require(alpha >= 0.0 && alpha <= 1.0, "alpha outside [0,1]");
  detail::require(m >= 1, "m must be >= 1");
  detail::require(c > 0.0 && c <= 1.0, "c outside (0,1]");
  const double base = 1.0 - alpha * c - (1.0 - alpha) / m;
  return std::pow(std::max(base, 0.0), m);
}

// s with c = 1/s (reciprocal) or 1/(s+1) < c < 1/s.
inline int regime_index(const Rational& c) {
  detail::require_ratio(c);
  return static_cast<int>(c.den() / c.num());
}

// Mixing weight that balances the two worst coverage multiplicities.
//
// c = 1/s: alpha* = 1 - (s-1) ln(s/(s-1)); c = 1 returns 1 (z = all ones).
// Interior c: the root of sigma(a, s+1) - sigma(a, s), which is decreasing in
// a, by bisection on [0, 1].
inline double alpha_star(const Rational& c) {
  detail::require_ratio(c);
  if (c.num() == c.den()) return 1.0;
  const int s = regime_index(c);
  if (c.is_reciprocal()) {
    return 1.0 - (s - 1) * std::log1p(1.0 / (s - 1));
  }
  const double cv = c.value();
  auto delta = [&](double a) { return sigma(a, s + 1, cv) - sigma(a, s, cv); };
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double d = delta(mid);
    if (d == 0.0) return mid;
    (d > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// Closed form of alpha* on (1/2, 1): root of (1-c) a = (1/2 - (c - 1/2) a)^2.
inline double alpha_star_closed_form(double c) {
  detail::require(c > 0.5 && c < 1.0, "closed form needs c in (1/2,1)");
  return (1.0 - 2.0 * std::sqrt(c * (1.0 - c))) / ((2.0 * c - 1.0) * (2.0 * c - 1.0));
}

// Approximation ratio of LP rounding with non-oblivious mixing.
inline RhoResult rho(const Rational& c) {
  detail::require_ratio(c);
  RhoResult r;
  r.c = c;
  r.s = regime_index(c);
  r.alpha_star = alpha_star(c);
  if (c.is_reciprocal()) {
    r.regime = Regime::kReciprocal;
    r.rho = (r.s == 1) ? 1.0 : 1.0 - std::pow(1.0 - 1.0 / r.s, r.s);
  } else {
    r.regime = Regime::kInterior;
    r.rho = 1.0 - sigma(r.alpha_star, r.s, c.value());
  }
  return r;
}

inline double rho_value(const Rational& c) { return rho(c).rho; }

// 1 - (1 - c)^(1/c): the measured continuous greedy guarantee.
inline double sm_ratio(double c) {
  detail::require(c > 0.0 && c <= 1.0, "ratio c outside (0,1]");
  if (c == 1.0) return 1.0;
  return -std::expm1(std::log1p(-c) / c);
}

// Smallest M with 1 - (1 - alpha* c)^(M+1) >= rho(c): elements covered by more
// than M sets are already safe when treated as covered by every set.
inline int m_of_c(const Rational& c) {
  detail::require_ratio(c);
  detail::require(c.num() < c.den(), "M(c) is undefined at c = 1");
  const RhoResult r = rho(c);
  const double q = 1.0 - r.alpha_star * c.value();
  double miss = q;  // q^(M+1) after the first multiply
  for (int m = 1; m < 10'000'000; ++m) {
    miss *= q;
    if (1.0 - miss >= r.rho) return m;
  }
  throw NumericError("M(c) exceeded 1e7 for c=" + c.str());
}

// min over integer m >= 1, m != excluded_m, of 1 - sigma(alpha*(c), m).
// sigma is log-concave in m, so the scan stops at the first non-increase.
inline double rho_excluding(const Rational& c, int excluded_m) {
  detail::require_ratio(c);
  const double a = alpha_star(c);
  const double cv = c.value();
  if (a >= 1.0) return 1.0;
  double best = std::numeric_limits<double>::infinity();
  double prev = -1.0;
  for (int m = 1; m < 10'000'000; ++m) {
    const double s = sigma(a, m, cv);
    if (m != excluded_m) best = std::min(best, 1.0 - s);
    if (m >= 2 && s <= prev) return best;
    prev = s;
  }
  throw NumericError("sigma scan did not pass its peak for c=" + c.str());
}

// Worst ratio for elements covered once under threshold rounding.
inline double r_alpha_1(double alpha, double c) {
  detail::require(alpha >= 0.0 && alpha <= 1.0, "alpha outside [0,1]");
  detail::require(c > 0.0 && c <= 1.0, "c outside (0,1]");
  return alpha * c + 1.0 - alpha;
}

// Coverage-to-SDP ratio of a doubly covered element on the symmetric family
// mu1 = mu2 = mu, rho = max(0, 2mu - 1).
inline double r2_ratio(double alpha, double c, double mu) {
  const double eta = alpha * c + (1.0 - alpha) * mu;
  double corr, denom;
  if (mu <= 0.5) {
    corr = -mu / (1.0 - mu);
    denom = 2.0 * mu;
  } else {
    corr = -(1.0 - mu) / mu;
    denom = 1.0;
  }
  const double miss = phi2(std::max(corr, -1.0), 1.0 - eta, 1.0 - eta);
  return (1.0 - miss) / denom;
}

struct R2Result {
  double value = 0.0;
  double mu = 0.0;
};

// Minimum of r2_ratio over mu in (0,1): grid of spacing `mu_step`, then
// golden-section refinement around every local grid minimum.
inline R2Result r_alpha_2(double alpha, double c, double mu_step = 1e-4) {
  detail::require(alpha >= 0.0 && alpha <= 1.0, "alpha outside [0,1]");
  detail::require(c > 0.0 && c < 1.0, "c outside (0,1)");
  detail::require(mu_step > 0.0 && mu_step <= 0.1, "mu_step outside (0,0.1]");
  const int n = static_cast<int>(std::lround(1.0 / mu_step));
  std::vector<double> mus, vals;
  mus.reserve(static_cast<std::size_t>(n));
  for (int t = 1; t < n; ++t) {
    const double mu = t / static_cast<double>(n);
    mus.push_back(mu);
    vals.push_back(r2_ratio(alpha, c, mu));
  }
  R2Result best{std::numeric_limits<double>::infinity(), 0.0};
  const std::size_t m = vals.size();
  for (std::size_t t = 0; t < m; ++t) {
    const bool left_ok = t == 0 || vals[t] <= vals[t - 1];
    const bool right_ok = t + 1 == m || vals[t] <= vals[t + 1];
    if (!left_ok || !right_ok) continue;
    double lo = (t == 0) ? 1e-9 : mus[t - 1];
    double hi = (t + 1 == m) ? 1.0 - 1e-9 : mus[t + 1];
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
    double f1 = r2_ratio(alpha, c, x1), f2 = r2_ratio(alpha, c, x2);
    for (int it = 0; it < 60 && hi - lo > 1e-12; ++it) {
      if (f1 <= f2) {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - g * (hi - lo);
        f1 = r2_ratio(alpha, c, x1);
      } else {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + g * (hi - lo);
        f2 = r2_ratio(alpha, c, x2);
      }
    }
    const double cand_mu = f1 <= f2 ? x1 : x2;
    const double cand = std::min({f1, f2, vals[t]});
    if (cand < best.value) best = {cand, cand == vals[t] ? mus[t] : cand_mu};
  }
  return best;
}

// Slow spot-check mode: minimizes the doubly-covered ratio over the full
// feasible family (mu1, mu2, rho) on a grid with `steps` points per axis.
inline R2Result r_alpha_2_unrestricted(double alpha, double c, int steps) {
  detail::require(steps >= 2, "need at least two grid steps");
  R2Result best{std::numeric_limits<double>::infinity(), 0.0};
  for (int a = 1; a < steps; ++a) {
    const double mu1 = a / static_cast<double>(steps);
    for (int b = 1; b < steps; ++b) {
      const double mu2 = b / static_cast<double>(steps);
      const double lo = std::max(0.0, mu1 + mu2 - 1.0);
      const double hi = std::min(mu1, mu2);
      const double sd = std::sqrt(mu1 * (1.0 - mu1) * mu2 * (1.0 - mu2));
      const double eta1 = alpha * c + (1.0 - alpha) * mu1;
      const double eta2 = alpha * c + (1.0 - alpha) * mu2;
      for (int t = 0; t <= steps; ++t) {
        const double joint = lo + (hi - lo) * t / steps;
        const double corr = std::clamp((joint - mu1 * mu2) / sd, -1.0, 1.0);
        const double v = (1.0 - phi2(corr, 1.0 - eta1, 1.0 - eta2)) /
                         (mu1 + mu2 - joint);
        if (v < best.value) best = {v, 0.5 * (mu1 + mu2)};
      }
    }
  }
  return best;
}

struct RhoSdpResult {
  double value = 0.0;
  double alpha = 0.0;
  double mu = 0.0;       // minimizer of the doubly-covered ratio at alpha
  double r1 = 0.0;
  double r2 = 0.0;
  double mu_step = 0.0;  // resolution of the final evaluation
  double alpha_step = 0.0;
};

// max over alpha of min(r_alpha_1, r_alpha_2), with r_alpha_2 restricted to
// the symmetric family. Defined for 1/2 <= c < 1.
//
// The alpha search runs on a coarse mu grid (spacing max(mu_step, 2e-3)):
// grid over alpha, then golden-section refinement inside the best bracket.
// The reported value is re-evaluated at the requested mu_step.
inline RhoSdpResult rho_sdp(double c, double mu_step = 1e-4,
                            double alpha_step = 0.01) {
  detail::require(c >= 0.5 && c < 1.0,
                  "rho_sdp is only defined for c in [1/2, 1); got " +
                      std::to_string(c));
  const double coarse = std::max(mu_step, 2e-3);
  auto r_of = [&](double a, double step) {
    return std::min(r_alpha_1(a, c), r_alpha_2(a, c, step).value);
  };
  const int na = static_cast<int>(std::lround(1.0 / alpha_step));
  int best_t = 0;
  double best_v = -1.0;
  for (int t = 0; t <= na; ++t) {
    const double v = r_of(t / static_cast<double>(na), coarse);
    if (v > best_v) {
      best_v = v;
      best_t = t;
    }
  }
  double lo = std::max(0, best_t - 1) / static_cast<double>(na);
  double hi = std::min(na, best_t + 1) / static_cast<double>(na);
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
  double f1 = r_of(x1, coarse), f2 = r_of(x2, coarse);
  for (int it = 0; it < 40 && hi - lo > 1e-7; ++it) {
    if (f1 >= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - g * (hi - lo);
      f1 = r_of(x1, coarse);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + g * (hi - lo);
      f2 = r_of(x2, coarse);
    }
  }
  double alpha = f1 >= f2 ? x1 : x2;
  if (std::max(f1, f2) < best_v) alpha = best_t / static_cast<double>(na);

  RhoSdpResult out;
  out.alpha = alpha;
  out.r1 = r_alpha_1(alpha, c);
  const R2Result r2 = r_alpha_2(alpha, c, mu_step);
  out.r2 = r2.value;
  out.mu = r2.mu;
  out.value = std::min(out.r1, out.r2);
  out.mu_step = mu_step;
  out.alpha_step = alpha_step;
  return out;
}

}  // namespace maxcov

#endif  // MAXCOV_CURVES_HPP_
