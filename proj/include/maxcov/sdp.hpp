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

#ifndef MAXCOV_SDP_HPP_
#define MAXCOV_SDP_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <mutex>
#include <numeric>
#include <random>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "maxcov/curves.hpp"
#include "maxcov/errors.hpp"
#include "maxcov/greedy.hpp"
#include "maxcov/instance.hpp"
#include "maxcov/normal.hpp"
#include "maxcov/random.hpp"

namespace maxcov {

// Max-coverage SDP over instances whose elements are covered once or twice:
//   max  sum_i lin_i mu_i + sum_{ij} w_ij (mu_i + mu_j - rho_ij)
//   s.t. u_0 unit, u_0 . u_i = |u_i|^2 = mu_i, rho_ij = u_i . u_j,
//        max(0, mu_i + mu_j - 1) <= rho_ij <= min(mu_i, mu_j) on objective pairs,
//        sum_i mu_i <= k.
struct SdpProblem {
  int n = 0;
  int k = 0;
  std::vector<double> linear;  // weight of elements covered only by set i
  std::vector<std::pair<int, int>> pairs;  // i < j, sorted
  std::vector<double> pair_weight;
  std::vector<std::pair<int, int>> extra_pairs;  // constrained, not in objective
};

inline SdpProblem build_sdp(const SetSystemInstance& inst, bool all_pairs = false) {
  SdpProblem p;
  p.n = inst.n_sets();
  p.k = inst.k();
  p.linear.assign(static_cast<std::size_t>(p.n), 0.0);
  std::map<std::pair<int, int>, double> pw;
  for (std::size_t e = 0; e < inst.n_elements(); ++e) {
    const auto& el = inst.element(e);
    const auto& cs = el.covering_sets;
    if (cs.size() == 1) {
      p.linear[static_cast<std::size_t>(cs[0])] += el.weight;
    } else if (cs.size() == 2) {
      pw[{cs[0], cs[1]}] += el.weight;
    } else {
      throw InputError("element " + std::to_string(e) + " is covered by " +
                       std::to_string(cs.size()) + " sets; the SDP needs m_e <= 2");
    }
  }
  for (const auto& [ij, w] : pw) {
    p.pairs.push_back(ij);
    p.pair_weight.push_back(w);
  }
  if (all_pairs) {
    for (int i = 0; i < p.n; ++i) {
      for (int j = i + 1; j < p.n; ++j) {
        if (!pw.contains({i, j})) p.extra_pairs.emplace_back(i, j);
      }
    }
  }
  return p;
}

struct SdpSolution {
  int dim = 0;
  std::vector<std::vector<double>> u;  // u[0] = u_0, u[i+1] = u_i
  double objective = 0.0;
  double max_violation = 0.0;  // before the exact repair
  int iterations = 0;

  int n() const { return static_cast<int>(u.size()) - 1; }
  double mu(int i) const { return dot(u[0], u[static_cast<std::size_t>(i + 1)]); }
  double rho(int i, int j) const {
    return dot(u[static_cast<std::size_t>(i + 1)], u[static_cast<std::size_t>(j + 1)]);
  }
  std::vector<double> mus() const {
    std::vector<double> m(static_cast<std::size_t>(n()));
    for (int i = 0; i < n(); ++i) m[static_cast<std::size_t>(i)] = mu(i);
    return m;
  }

  static double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t t = 0; t < a.size(); ++t) s += a[t] * b[t];
    return s;
  }
};

inline double sdp_objective(const SdpProblem& p, const SdpSolution& s) {
  double v = 0.0;
  for (int i = 0; i < p.n; ++i) v += p.linear[static_cast<std::size_t>(i)] * s.mu(i);
  for (std::size_t e = 0; e < p.pairs.size(); ++e) {
    const auto [i, j] = p.pairs[e];
    v += p.pair_weight[e] * (s.mu(i) + s.mu(j) - s.rho(i, j));
  }
  return v;
}

struct SdpCheck {
  double unit = 0.0;       // | |u_0|^2 - 1 |
  double consistency = 0.0;  // max | u_0.u_i - |u_i|^2 |
  double pair = 0.0;       // worst pair-bound violation
  double budget = 0.0;     // max(0, sum mu - k)
  double worst() const { return std::max({unit, consistency, pair, budget}); }
};

inline SdpCheck check_sdp(const SdpProblem& p, const SdpSolution& s) {
  SdpCheck c;
  c.unit = std::fabs(SdpSolution::dot(s.u[0], s.u[0]) - 1.0);
  double total = 0.0;
  for (int i = 0; i < p.n; ++i) {
    const auto& ui = s.u[static_cast<std::size_t>(i + 1)];
    c.consistency = std::max(c.consistency, std::fabs(s.mu(i) - SdpSolution::dot(ui, ui)));
    total += s.mu(i);
  }
  auto pair_check = [&](int i, int j) {
    const double mi = s.mu(i), mj = s.mu(j), r = s.rho(i, j);
    c.pair = std::max({c.pair, r - std::min(mi, mj), std::max(0.0, mi + mj - 1.0) - r});
  };
  for (const auto& [i, j] : p.pairs) pair_check(i, j);
  for (const auto& [i, j] : p.extra_pairs) pair_check(i, j);
  c.budget = std::max(0.0, total - p.k);
  return c;
}

struct SdpConfig {
  int rank = 0;        // 0 -> n + 1
  int iters = 4000;    // gradient steps in total
  std::uint64_t seed = 1;
  double accept_violation = 1e-4;
};

namespace detail {

// Factorization state: unit rows w_0..w_n with a_i = w_0.w_i, g_ij = w_i.w_j,
// mu_i = (1 + a_i)/2 and rho_ij = (1 + a_i + a_j + g_ij)/4. The pair bounds
// are then the four triangle inequalities on (w_0, w_i, w_j).
class LowRankSdp {
 public:
  LowRankSdp(const SdpProblem& p, int rank, std::uint64_t seed)
      : p_(p), r_(rank), w_(static_cast<std::size_t>(p.n + 1) * static_cast<std::size_t>(rank)) {
    Rng rng(derive_seed(seed, {0x736470}));
    std::normal_distribution<double> nd;
    for (auto& v : w_) v = nd(rng);
    for (int i = 0; i <= p_.n; ++i) normalize(w_.data() + off(i));
    for (const auto& ij : p_.pairs) cons_pairs_.push_back(ij);
    for (const auto& ij : p_.extra_pairs) cons_pairs_.push_back(ij);
    nu_.assign(4 * cons_pairs_.size() + 1, 0.0);
    // Linear part of the objective in a_i: mu_i terms plus the pair terms
    // (mu_i + mu_j - rho_ij) = (3 + a_i + a_j - g_ij)/4.
    lin_.assign(static_cast<std::size_t>(p_.n), 0.0);
    for (int i = 0; i < p_.n; ++i) lin_[static_cast<std::size_t>(i)] = p_.linear[static_cast<std::size_t>(i)] / 2.0;
    for (std::size_t e = 0; e < p_.pairs.size(); ++e) {
      lin_[static_cast<std::size_t>(p_.pairs[e].first)] += p_.pair_weight[e] / 4.0;
      lin_[static_cast<std::size_t>(p_.pairs[e].second)] += p_.pair_weight[e] / 4.0;
    }
    constant_ = 0.0;
    for (int i = 0; i < p_.n; ++i) constant_ += p_.linear[static_cast<std::size_t>(i)] / 2.0;
    for (const double w : p_.pair_weight) constant_ += 0.75 * w;
    double scale = 0.0;
    for (const double v : lin_) scale = std::max(scale, std::fabs(v));
    for (const double v : p_.pair_weight) scale = std::max(scale, v / 4.0);
    penalty_ = 10.0 * std::max(scale, 1e-3);
  }

  // Runs `phases` rounds of `inner` gradient evaluations each. Within a
  // round, L-BFGS solves the augmented-Lagrangian subproblem in blocks of
  // `block` evaluations, updating the multipliers after each block; the
  // penalty doubles after every round. `on_phase` sees each round's end.
  template <class Fn>
  void run(int phases, int inner, Fn&& on_phase, int block = 100) {
    for (int ph = 0; ph < phases; ++ph) {
      int budget = inner;
      while (budget > 0) {
        const int used = lbfgs(std::min(block, budget));
        budget -= std::max(used, 1);
        update_multipliers();
      }
      on_phase(*this);
      penalty_ *= 2.0;
    }
  }

  // Minimizes the Lagrangian over unnormalized rows x (w = x/|x|) with
  // L-BFGS and Armijo backtracking. Returns the evaluations spent.
  int lbfgs(int max_evals) {
    constexpr std::size_t kMemory = 8;
    const std::size_t dim = w_.size();
    std::vector<double> x = w_, g(dim), xn(dim), gn(dim), d(dim);
    std::vector<std::vector<double>> S, Y;
    std::vector<double> rhos;
    int evals = 0;
    double f = eval(x, g);
    ++evals;
    while (evals < max_evals) {
      // Two-loop recursion.
      d = g;
      std::vector<double> al(S.size());
      for (std::size_t m = S.size(); m-- > 0;) {
        al[m] = rhos[m] * dotv(S[m], d);
        for (std::size_t t = 0; t < dim; ++t) d[t] -= al[m] * Y[m][t];
      }
      if (!S.empty()) {
        const double gamma = dotv(S.back(), Y.back()) / dotv(Y.back(), Y.back());
        for (auto& v : d) v *= gamma;
      } else {
        const double gn2 = std::sqrt(dotv(g, g));
        if (gn2 < 1e-12) break;
        for (auto& v : d) v *= std::min(1.0, 0.1 / gn2);
      }
      for (std::size_t m = 0; m < S.size(); ++m) {
        const double be = rhos[m] * dotv(Y[m], d);
        for (std::size_t t = 0; t < dim; ++t) d[t] += S[m][t] * (al[m] - be);
      }
      for (auto& v : d) v = -v;
      double slope = dotv(g, d);
      if (slope >= 0.0) {
        S.clear();
        Y.clear();
        rhos.clear();
        for (std::size_t t = 0; t < dim; ++t) d[t] = -g[t];
        slope = -dotv(g, g);
      }
      if (-slope < 1e-24) break;
      double t_step = 1.0;
      bool ok = false;
      double fn = f;
      for (int bt = 0; bt < 30 && evals < max_evals; ++bt) {
        for (std::size_t t = 0; t < dim; ++t) xn[t] = x[t] + t_step * d[t];
        fn = eval(xn, gn);
        ++evals;
        if (fn <= f + 1e-4 * t_step * slope) {
          ok = true;
          break;
        }
        t_step *= 0.5;
      }
      if (!ok) break;
      std::vector<double> sv(dim), yv(dim);
      for (std::size_t t = 0; t < dim; ++t) {
        sv[t] = xn[t] - x[t];
        yv[t] = gn[t] - g[t];
      }
      const double sy = dotv(sv, yv);
      if (sy > 1e-14) {
        if (S.size() == kMemory) {
          S.erase(S.begin());
          Y.erase(Y.begin());
          rhos.erase(rhos.begin());
        }
        S.push_back(std::move(sv));
        Y.push_back(std::move(yv));
        rhos.push_back(1.0 / sy);
      }
      x.swap(xn);
      g.swap(gn);
      f = fn;
    }
    set_point(x);
    iterations_ += evals;
    return evals;
  }

  int iterations() const { return iterations_; }

  // Largest constraint violation of the current factorization.
  double violation() const {
    double v = std::max(0.0, -budget_slack());
    for (const auto& ij : cons_pairs_) {
      double t[4];
      triangles(ij.first, ij.second, t);
      for (const double x : t) v = std::max(v, -x / 4.0);
    }
    return v;
  }

  // Exactly feasible vectors built from the current iterate: the Gram matrix
  // is mixed with an interior point (mu = 1/2, rho = 1/4) just enough to
  // restore the pair bounds, then scaled toward mu = 0 to meet the budget.
  SdpSolution repaired() const {
    const int n = p_.n;
    double theta = 0.0;
    for (const auto& ij : cons_pairs_) {
      double t[4];
      triangles(ij.first, ij.second, t);
      for (const double x : t) {
        if (x < 0.0) theta = std::max(theta, -x / (1.0 - x));
      }
    }
    if (theta > 0.0) theta = std::min(1.0, theta * (1.0 + 1e-9) + 1e-15);
    // Mixed w-vectors: sqrt(1-theta) w_i (+) sqrt(theta) f_i, f orthonormal.
    const int d1 = r_ + (theta > 0.0 ? n + 1 : 0);
    std::vector<std::vector<double>> wm(static_cast<std::size_t>(n + 1),
                                        std::vector<double>(static_cast<std::size_t>(d1), 0.0));
    const double a = std::sqrt(1.0 - theta), b = std::sqrt(theta);
    for (int i = 0; i <= n; ++i) {
      for (int t = 0; t < r_; ++t) wm[static_cast<std::size_t>(i)][static_cast<std::size_t>(t)] = a * w_[off(i) + static_cast<std::size_t>(t)];
      if (theta > 0.0) wm[static_cast<std::size_t>(i)][static_cast<std::size_t>(r_ + i)] = b;
    }
    // u_0 = w_0, u_i = (w_0 + w_i)/2.
    SdpSolution s;
    s.u.assign(static_cast<std::size_t>(n + 1), std::vector<double>(static_cast<std::size_t>(d1 + 1), 0.0));
    double total = 0.0;
    for (int i = 0; i <= n; ++i) {
      for (int t = 0; t < d1; ++t) {
        const double w0 = wm[0][static_cast<std::size_t>(t)];
        s.u[static_cast<std::size_t>(i)][static_cast<std::size_t>(t)] =
            i == 0 ? w0 : 0.5 * (w0 + wm[static_cast<std::size_t>(i)][static_cast<std::size_t>(t)]);
      }
    }
    for (int i = 0; i < n; ++i) total += s.mu(i);
    if (total > p_.k) {
      // u_0 <- sqrt(phi) u_0 (+) sqrt(1-phi) e, u_i <- sqrt(phi) u_i.
      const double phi = p_.k / total;
      const double sp = std::sqrt(phi);
      for (auto& v : s.u) {
        for (auto& x : v) x *= sp;
      }
      s.u[0][static_cast<std::size_t>(d1)] = std::sqrt(1.0 - phi);
    }
    s.dim = d1 + 1;
    s.max_violation = violation();
    s.iterations = iterations_;
    s.objective = sdp_objective(p_, s);
    return s;
  }

 private:
  std::size_t off(int i) const { return static_cast<std::size_t>(i) * static_cast<std::size_t>(r_); }

  void normalize(double* v) const {
    double s = 0.0;
    for (int t = 0; t < r_; ++t) s += v[t] * v[t];
    s = std::sqrt(s);
    if (s < 1e-300) {
      v[0] = 1.0;
      return;
    }
    for (int t = 0; t < r_; ++t) v[t] /= s;
  }

  static double dotv(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t t = 0; t < a.size(); ++t) s += a[t] * b[t];
    return s;
  }

  void set_point(const std::vector<double>& x) {
    w_ = x;
    for (int i = 0; i <= p_.n; ++i) normalize(w_.data() + off(i));
  }

  // Lagrangian at w = x/|x| row-wise, with its gradient in x.
  double eval(const std::vector<double>& x, std::vector<double>& gx) {
    set_point(x);
    const double f = lagrangian(&gx);
    for (int i = 0; i <= p_.n; ++i) {
      double nrm = 0.0, radial = 0.0;
      for (int t = 0; t < r_; ++t) {
        nrm += x[off(i) + static_cast<std::size_t>(t)] * x[off(i) + static_cast<std::size_t>(t)];
        radial += gx[off(i) + static_cast<std::size_t>(t)] * w_[off(i) + static_cast<std::size_t>(t)];
      }
      nrm = std::max(std::sqrt(nrm), 1e-300);
      for (int t = 0; t < r_; ++t) {
        auto& v = gx[off(i) + static_cast<std::size_t>(t)];
        v = (v - radial * w_[off(i) + static_cast<std::size_t>(t)]) / nrm;
      }
    }
    return f;
  }

  double dotw(int i, int j) const {
    double s = 0.0;
    const double* x = w_.data() + off(i);
    const double* y = w_.data() + off(j);
    for (int t = 0; t < r_; ++t) s += x[t] * y[t];
    return s;
  }

  double a(int i) const { return dotw(0, i + 1); }

  // 4 (rho - ...) forms; all must be >= 0.
  void triangles(int i, int j, double* t) const {
    const double ai = a(i), aj = a(j), g = dotw(i + 1, j + 1);
    t[0] = 1.0 + ai - aj - g;  // rho <= mu_i
    t[1] = 1.0 - ai + aj - g;  // rho <= mu_j
    t[2] = 1.0 + ai + aj + g;  // rho >= 0
    t[3] = 1.0 - ai - aj + g;  // rho >= mu_i + mu_j - 1
  }

  double budget_slack() const {
    double s = p_.k;
    for (int i = 0; i < p_.n; ++i) s -= 0.5 * (1.0 + a(i));
    return s;
  }

  void add_to(std::vector<double>& grad, int i, int j, double coef) const {
    // d(w_i . w_j): w_j into row i, w_i into row j.
    double* gi = grad.data() + off(i);
    double* gj = grad.data() + off(j);
    const double* wi = w_.data() + off(i);
    const double* wj = w_.data() + off(j);
    for (int t = 0; t < r_; ++t) {
      gi[t] += coef * wj[t];
      gj[t] += coef * wi[t];
    }
  }

  // Augmented Lagrangian of the minimization form; optionally its gradient.
  double lagrangian(std::vector<double>* grad) const {
    if (grad != nullptr) std::fill(grad->begin(), grad->end(), 0.0);
    double value = -constant_;
    for (int i = 0; i < p_.n; ++i) {
      const double c = lin_[static_cast<std::size_t>(i)];
      value -= c * a(i);
      if (grad != nullptr) add_to(*grad, 0, i + 1, -c);
    }
    for (std::size_t e = 0; e < p_.pairs.size(); ++e) {
      const auto [i, j] = p_.pairs[e];
      const double c = p_.pair_weight[e] / 4.0;
      value += c * dotw(i + 1, j + 1);
      if (grad != nullptr) add_to(*grad, i + 1, j + 1, c);
    }
    const double lam = penalty_;
    // (1/2lam) (max(0, nu - lam c)^2 - nu^2) for each constraint c >= 0.
    auto term = [&](double cval, double nu) {
      const double m = std::max(0.0, nu - lam * cval);
      value += (m * m - nu * nu) / (2.0 * lam);
      return m;  // d/dc = -m
    };
    for (std::size_t q = 0; q < cons_pairs_.size(); ++q) {
      const auto [i, j] = cons_pairs_[q];
      double t[4];
      triangles(i, j, t);
      static constexpr int kSa[4] = {1, -1, 1, -1};
      static constexpr int kSb[4] = {-1, 1, 1, -1};
      static constexpr int kSg[4] = {-1, -1, 1, 1};
      for (int h = 0; h < 4; ++h) {
        const double m = term(t[h], nu_[4 * q + static_cast<std::size_t>(h)]);
        if (grad != nullptr && m > 0.0) {
          add_to(*grad, 0, i + 1, -m * kSa[h]);
          add_to(*grad, 0, j + 1, -m * kSb[h]);
          add_to(*grad, i + 1, j + 1, -m * kSg[h]);
        }
      }
    }
    const double m = term(budget_slack(), nu_.back());
    if (grad != nullptr && m > 0.0) {
      // d(slack)/d(a_i) = -1/2.
      for (int i = 0; i < p_.n; ++i) add_to(*grad, 0, i + 1, 0.5 * m);
    }
    return value;
  }

  void update_multipliers() {
    for (std::size_t q = 0; q < cons_pairs_.size(); ++q) {
      double t[4];
      triangles(cons_pairs_[q].first, cons_pairs_[q].second, t);
      for (int h = 0; h < 4; ++h) {
        auto& nu = nu_[4 * q + static_cast<std::size_t>(h)];
        nu = std::max(0.0, nu - penalty_ * t[h]);
      }
    }
    nu_.back() = std::max(0.0, nu_.back() - penalty_ * budget_slack());
  }

  const SdpProblem& p_;
  int r_;
  std::vector<double> w_;
  std::vector<std::pair<int, int>> cons_pairs_;
  std::vector<double> nu_;
  std::vector<double> lin_;
  double constant_ = 0.0;
  double penalty_ = 1.0;
  int iterations_ = 0;
};

}  // namespace detail

// Low-rank (Burer-Monteiro style) heuristic for the SDP: augmented
// Lagrangian with Riemannian gradient steps and Armijo backtracking, ten
// rounds with the penalty doubling after each. Every round's iterate is
// repaired to exact feasibility; the best repaired one is returned. Throws
// NumericError when no round got within `accept_violation`.
inline SdpSolution solve_sdp_lowrank(const SdpProblem& p, const SdpConfig& cfg = {}) {
  const int rank = cfg.rank > 0 ? cfg.rank : std::max(3, p.n + 1);
  detail::require(rank >= 3, "SDP rank must be >= 3");
  detail::require(cfg.iters >= 10, "SDP needs at least 10 iterations");
  detail::require(p.k >= 0 && p.k <= p.n, "SDP budget outside [0, n]");
  detail::LowRankSdp solver(p, rank, cfg.seed);
  SdpSolution best;
  bool have = false;
  double last_violation = 0.0;
  solver.run(10, cfg.iters / 10, [&](const detail::LowRankSdp& s) {
    last_violation = s.violation();
    if (last_violation > cfg.accept_violation) return;
    SdpSolution cand = s.repaired();
    if (!have || cand.objective > best.objective + 1e-12) {
      best = std::move(cand);
      have = true;
    }
  });
  if (!have) {
    std::ostringstream os;
    os << "SDP heuristic did not reach violation " << cfg.accept_violation
       << " (last " << last_violation << " after " << solver.iterations()
       << " steps)";
    throw NumericError(os.str());
  }
  best.iterations = solver.iterations();
  return best;
}

namespace detail {

inline constexpr double kMuClamp = 1e-6;

inline double clamp_mu(double m) { return std::clamp(m, kMuClamp, 1.0 - kMuClamp); }

}  // namespace detail

// Gaussian threshold rounding: i is taken when u~_i^perp . g <= Phi^-1(eta_i)
// with eta_i = alpha c + (1 - alpha) mu_i. A vanishing u_i^perp falls back
// to an independent coin with bias eta_i.
inline std::vector<int> hyperplane_round(const SdpSolution& sol, double alpha,
                                         double c, std::uint64_t seed) {
  detail::require(alpha >= 0.0 && alpha <= 1.0, "alpha outside [0,1]");
  detail::require(c >= 0.0 && c <= 1.0, "c outside [0,1]");
  const int n = sol.n();
  Rng rng(seed);
  std::normal_distribution<double> nd;
  std::vector<double> g(static_cast<std::size_t>(sol.dim));
  for (auto& v : g) v = nd(rng);
  const auto& u0 = sol.u[0];
  std::vector<int> out;
  std::vector<double> perp(static_cast<std::size_t>(sol.dim));
  for (int i = 0; i < n; ++i) {
    const auto& ui = sol.u[static_cast<std::size_t>(i + 1)];
    const double mu_raw = sol.mu(i);
    const double mu = detail::clamp_mu(mu_raw);
    const double eta = std::clamp(alpha * c + (1.0 - alpha) * mu, detail::kMuClamp,
                                  1.0 - detail::kMuClamp);
    double norm2 = 0.0, proj = 0.0;
    for (std::size_t t = 0; t < perp.size(); ++t) {
      perp[t] = ui[t] - mu_raw * u0[t];
      norm2 += perp[t] * perp[t];
      proj += perp[t] * g[t];
    }
    bool take;
    if (norm2 <= 1e-14) {
      take = uniform01(rng) < eta;
    } else {
      take = proj / std::sqrt(norm2) <= phi_inv(eta);
    }
    if (take) out.push_back(i);
  }
  return out;
}

struct RetryOutcome {
  std::vector<int> chosen;
  int tries = 0;
  int raw_size = 0;  // |X| before trimming
  bool trimmed = false;
};

// Repeats hyperplane_round until |X| < (1 + eps^(1/3)) k, keeping the
// smallest draw if none qualifies, then trims uniformly to k.
inline RetryOutcome round_with_retries(const SdpSolution& sol, double alpha, int k,
                                       double eps, std::uint64_t seed, int max_tries = 50) {
  const int n = sol.n();
  detail::require(k >= 0 && k <= n, "k outside [0, n]");
  detail::require(eps > 0.0, "eps must be positive");
  detail::require(max_tries >= 1, "max_tries must be positive");
  const double c = n > 0 ? static_cast<double>(k) / n : 0.0;
  const double limit = (1.0 + std::cbrt(eps)) * k;
  RetryOutcome out;
  std::vector<int> best;
  bool have = false;
  for (int t = 0; t < max_tries; ++t) {
    ++out.tries;
    auto x = hyperplane_round(sol, alpha, c, derive_seed(seed, {0x726e64, static_cast<std::uint64_t>(t)}));
    if (!have || x.size() < best.size()) {
      best = std::move(x);
      have = true;
    }
    if (static_cast<double>(best.size()) < limit) break;
  }
  if (k > 0 && static_cast<int>(best.size()) >= 2 * k && static_cast<double>(best.size()) >= limit) {
    throw NumericError("rounding kept producing " + std::to_string(best.size()) +
                       " sets against a budget of " + std::to_string(k));
  }
  out.raw_size = static_cast<int>(best.size());
  if (static_cast<int>(best.size()) > k) {
    Rng rng(derive_seed(seed, {0x7472696d}));
    std::shuffle(best.begin(), best.end(), rng);
    best.resize(static_cast<std::size_t>(k));
    std::sort(best.begin(), best.end());
    out.trimmed = true;
  }
  out.chosen = std::move(best);
  return out;
}

// (1/n^2) sum_{i != j} |rho~_ij|, with rho~ the correlation of the
// normalized u_i^perp. Near-integral coordinates contribute 0.
inline double decorrelation_stat(const SdpSolution& sol) {
  const int n = sol.n();
  if (n == 0) return 0.0;
  const auto mus = sol.mus();
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const double mi = mus[static_cast<std::size_t>(i)], mj = mus[static_cast<std::size_t>(j)];
      if (mi <= detail::kMuClamp || mi >= 1.0 - detail::kMuClamp ||
          mj <= detail::kMuClamp || mj >= 1.0 - detail::kMuClamp) {
        continue;
      }
      const double r = (sol.rho(i, j) - mi * mj) /
                       std::sqrt(mi * (1.0 - mi) * mj * (1.0 - mj));
      total += std::min(1.0, std::fabs(r));
    }
  }
  return total / (static_cast<double>(n) * n);
}

// Mixing weight for SDP rounding: the maximizer of the conjectured ratio
// curve for c in [1/2, 1), else 0. Memoized; the curve search is slow.
inline double sdp_alpha(double c) {
  if (c < 0.5 || c >= 1.0) return 0.0;
  static std::mutex mu;
  static std::map<double, double> cache;
  std::lock_guard<std::mutex> lock(mu);
  const auto it = cache.find(c);
  if (it != cache.end()) return it->second;
  const double a = rho_sdp(c).alpha;
  cache.emplace(c, a);
  return a;
}

struct SdpPipelineConfig {
  SdpConfig sdp;
  double alpha = -1.0;  // negative: sdp_alpha(k/n)
  double eps = 0.05;
  int draws = 8;
  int max_tries = 50;
  bool pad = true;
  std::uint64_t seed = 1;
};

struct SdpPipelineOutcome {
  std::vector<int> chosen;
  double value = 0.0;
  double sdp_objective = 0.0;
  double alpha = 0.0;
  double decorrelation = 0.0;
  std::vector<double> draw_values;
};

// Solves the SDP of `inst` (all m_e <= 2) once, takes `draws` independent
// retry-and-trim roundings, pads each greedily to k on `pad_on` (defaults
// to `inst`) and keeps the best by exact coverage on `pad_on`.
inline SdpPipelineOutcome sdp_maximize(const SetSystemInstance& inst,
                                       const SdpPipelineConfig& cfg = {},
                                       const SetSystemInstance* pad_on = nullptr) {
  detail::require(cfg.draws >= 1, "need at least one rounding draw");
  const SetSystemInstance& target = pad_on != nullptr ? *pad_on : inst;
  detail::require(target.n_sets() == inst.n_sets(), "padding instance has a different n");
  const int n = inst.n_sets();
  const int k = inst.k();
  SdpPipelineOutcome out;
  const SdpProblem prob = build_sdp(inst);
  SdpConfig sc = cfg.sdp;
  sc.seed = derive_seed(cfg.seed, {0x736f6c76});
  const SdpSolution sol = solve_sdp_lowrank(prob, sc);
  out.sdp_objective = sol.objective;
  out.decorrelation = decorrelation_stat(sol);
  out.alpha = cfg.alpha >= 0.0 ? cfg.alpha : sdp_alpha(static_cast<double>(k) / n);
  bool have = false;
  for (int d = 0; d < cfg.draws; ++d) {
    auto r = round_with_retries(sol, out.alpha, k, cfg.eps,
                                derive_seed(cfg.seed, {0x64726177, static_cast<std::uint64_t>(d)}),
                                cfg.max_tries);
    auto chosen = cfg.pad ? greedy_pad(target, std::move(r.chosen), k) : std::move(r.chosen);
    const double v = coverage_value(target, chosen);
    out.draw_values.push_back(v);
    if (!have || v > out.value) {
      out.value = v;
      out.chosen = std::move(chosen);
      have = true;
    }
  }
  return out;
}

}  // namespace maxcov

#endif  // MAXCOV_SDP_HPP_
