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

#ifndef MAXCOV_SEPARATION_HPP_
#define MAXCOV_SEPARATION_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "maxcov/curves.hpp"
#include "maxcov/errors.hpp"
#include "maxcov/generators.hpp"
#include "maxcov/greedy.hpp"
#include "maxcov/instance.hpp"
#include "maxcov/lp.hpp"
#include "maxcov/rounding.hpp"
#include "maxcov/sdp.hpp"

namespace maxcov {

struct E2Partition {
  Graph graph;                  // elements covered exactly twice, as edges
  SetSystemInstance residual;   // everything else, same sets and k
};

// Splits off the elements with m_e = 2 as a weighted graph on the sets
// (parallel edges merged by summing weights).
inline E2Partition partition_e2(const SetSystemInstance& inst) {
  std::map<std::pair<int, int>, double> edges;
  std::vector<Element> rest;
  for (const auto& el : inst.elements()) {
    if (el.covering_sets.size() == 2) {
      edges[{el.covering_sets[0], el.covering_sets[1]}] += el.weight;
    } else {
      rest.push_back(el);
    }
  }
  E2Partition p;
  p.graph.n = inst.n_sets();
  for (const auto& [uv, w] : edges) p.graph.edges.push_back({uv.first, uv.second, w});
  p.residual = SetSystemInstance(inst.n_sets(), inst.k(), std::move(rest));
  return p;
}

// Upper ends O of the guessed intervals [O/(1+eps), O]: (A/beta)(1+eps)^-t
// for t < J, J = ceil(ln(1/(beta eps))/ln(1+eps)), then the terminal bucket
// [0, (A/beta)(1+eps)^-J], whose upper end is at most eps A.
inline std::vector<double> guess_intervals(double A, double beta, double eps) {
  detail::require(A >= 0.0 && std::isfinite(A), "baseline A must be finite and >= 0");
  detail::require(beta > 0.0 && beta <= 1.0, "beta must be in (0,1]");
  detail::require(eps > 0.0, "eps must be positive");
  if (A == 0.0) return {0.0};
  const double top = A / beta;
  const int J = std::max(0, static_cast<int>(std::ceil(std::log(1.0 / (beta * eps)) /
                                                       std::log1p(eps) - 1e-12)));
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(J) + 1);
  for (int t = 0; t <= J; ++t) out.push_back(top * std::pow(1.0 + eps, -t));
  return out;
}

enum class Branch { kDiscardE2, kSdpOnE2, kConstrainedLp };

inline const char* to_string(Branch b) {
  switch (b) {
    case Branch::kDiscardE2:
      return "discard-E2";
    case Branch::kSdpOnE2:
      return "sdp-on-E2";
    case Branch::kConstrainedLp:
      return "constrained-lp";
  }
  return "?";
}

struct SeparationCandidate {
  Branch branch = Branch::kDiscardE2;
  int guess = -1;        // index into the ladder, -1 when guess-free
  double cap = 0.0;      // O for the constrained LP
  std::vector<int> chosen;
  double value = 0.0;
  bool ok = true;
  std::string note;      // failure diagnostic when !ok
};

struct SeparationReport {
  std::vector<int> chosen;
  double value = 0.0;
  Branch branch = Branch::kDiscardE2;
  int guess = -1;
  double interval_lo = 0.0, interval_hi = 0.0;  // [O/(1+eps), O] of the winner
  double baseline = 0.0;  // A, from classic greedy
  double beta = 0.0;
  double eps = 0.0;
  std::vector<double> ladder;
  std::vector<SeparationCandidate> candidates;
  std::vector<std::string> warnings;
};

struct SeparationConfig {
  double eps = 0.05;
  std::uint64_t seed = 1;
  SdpPipelineConfig sdp;  // its seed is derived from `seed`
};

// Constrained-LP branch: the coverage LP plus sum_{e in E2} w_e x_e <= cap,
// mixed with alpha*(1/2) = 1 - ln 2 and pipage-rounded.
inline RoundingOutcome constrained_lp_round(const SetSystemInstance& canon, double cap) {
  const McLp lp = build_mc_lp(canon);
  std::vector<int> e2;
  for (int e = 0; e < lp.n_elements; ++e) {
    if (canon.element(static_cast<std::size_t>(e)).covering_sets.size() == 2) e2.push_back(lp.x(e));
  }
  const LpProblem capped = add_budget_cap(lp.problem, e2, cap);
  return detail::round_lp_problem(canon, lp, capped, alpha_star(Rational(1, 2)));
}

// The c = 1/2 separation pipeline: discard-E2 rounding, the SDP on the E2
// graph (padded greedily on the full instance), and the E2-capped LP for
// every guessed OPT_2 interval; the best candidate by exact coverage wins,
// ties going to the earlier branch and then the earlier guess.
inline SeparationReport separate_half(const SetSystemInstance& inst,
                                      const SeparationConfig& cfg = {}) {
  const int n = inst.n_sets();
  const int k = inst.k();
  detail::require(n % 2 == 0 && 2 * k == n, "separation needs an even n and k = n/2");
  SeparationReport rep;
  rep.eps = cfg.eps;
  rep.beta = 1.0 - std::exp(-1.0);
  rep.baseline = coverage_value(inst, classic_greedy(inst, k));
  rep.ladder = guess_intervals(rep.baseline, rep.beta, cfg.eps);

  const E2Partition part = partition_e2(inst);
  const SetSystemInstance canon = canonicalize(inst);

  auto record = [&](SeparationCandidate cand) { rep.candidates.push_back(std::move(cand)); };

  {
    SeparationCandidate c;
    c.branch = Branch::kDiscardE2;
    c.chosen = round_mc(part.residual).chosen;
    c.value = coverage_value(inst, c.chosen);
    record(std::move(c));
  }
  if (!part.graph.edges.empty()) {
    SeparationCandidate c;
    c.branch = Branch::kSdpOnE2;
    try {
      SdpPipelineConfig sc = cfg.sdp;
      sc.seed = derive_seed(cfg.seed, {0x736570});
      const auto out = sdp_maximize(gen_kvc(part.graph, k), sc, &inst);
      c.chosen = out.chosen;
      c.value = coverage_value(inst, c.chosen);
    } catch (const NumericError& e) {
      c.ok = false;
      c.note = e.what();
      rep.warnings.push_back(std::string("sdp branch skipped: ") + e.what());
    }
    record(std::move(c));
  }
  for (std::size_t g = 0; g < rep.ladder.size(); ++g) {
    SeparationCandidate c;
    c.branch = Branch::kConstrainedLp;
    c.guess = static_cast<int>(g);
    c.cap = rep.ladder[g];
    try {
      c.chosen = constrained_lp_round(canon, c.cap).chosen;
      c.value = coverage_value(inst, c.chosen);
    } catch (const NumericError& e) {
      c.ok = false;
      c.note = e.what();
      rep.warnings.push_back("constrained LP guess " + std::to_string(g) + " skipped: " + e.what());
    }
    record(std::move(c));
  }

  bool have = false;
  for (const auto& c : rep.candidates) {
    if (!c.ok) continue;
    if (!have || c.value > rep.value) {
      rep.value = c.value;
      rep.chosen = c.chosen;
      rep.branch = c.branch;
      rep.guess = c.guess;
      have = true;
    }
  }
  if (rep.branch == Branch::kConstrainedLp) {
    const bool terminal = rep.guess + 1 == static_cast<int>(rep.ladder.size());
    rep.interval_hi = rep.ladder[static_cast<std::size_t>(rep.guess)];
    rep.interval_lo = terminal ? 0.0 : rep.interval_hi / (1.0 + cfg.eps);
  }
  return rep;
}

// rho_vc rho_ne2 / (rho_vc + (1 + eps)(rho_ne2 - rho_half)).
inline double combine_bound(double rho_vc, double rho_ne2, double rho_half, double eps) {
  detail::require(rho_vc > 0.0 && rho_vc <= 1.0, "rho_vc must be in (0,1]");
  detail::require(rho_half > 0.0 && rho_half <= rho_ne2 && rho_ne2 <= 1.0,
                  "need 0 < rho_half <= rho_ne2 <= 1");
  detail::require(eps >= 0.0, "eps must be nonnegative");
  return rho_vc * rho_ne2 / (rho_vc + (1.0 + eps) * (rho_ne2 - rho_half));
}

}  // namespace maxcov

#endif  // MAXCOV_SEPARATION_HPP_
