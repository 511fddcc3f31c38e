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

#ifndef MAXCOV_LP_HPP_
#define MAXCOV_LP_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "maxcov/errors.hpp"
#include "maxcov/instance.hpp"
#include "maxcov/oracle.hpp"

namespace maxcov {

enum class Sense { kLessEqual, kEqual, kGreaterEqual };

struct LpRow {
  std::vector<std::pair<int, double>> coeffs;
  Sense sense = Sense::kLessEqual;
  double rhs = 0.0;
};

// Maximization LP over bounded variables.
struct LpProblem {
  std::vector<double> objective;
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<std::string> names;
  std::vector<LpRow> rows;

  int n_vars() const { return static_cast<int>(objective.size()); }
  int n_rows() const { return static_cast<int>(rows.size()); }

  int add_variable(double obj, double lo, double hi, std::string name = {}) {
    objective.push_back(obj);
    lower.push_back(lo);
    upper.push_back(hi);
    if (name.empty()) name = "v" + std::to_string(objective.size() - 1);
    names.push_back(std::move(name));
    return n_vars() - 1;
  }

  void add_row(std::vector<std::pair<int, double>> coeffs, Sense sense,
               double rhs) {
    for (const auto& [j, a] : coeffs) {
      detail::require(j >= 0 && j < n_vars(),
                      "row references unknown variable " + std::to_string(j));
      detail::require(std::isfinite(a), "non-finite row coefficient");
    }
    rows.push_back(LpRow{std::move(coeffs), sense, rhs});
  }
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

inline const char* to_string(LpStatus s) {
  switch (s) {
    case LpStatus::kOptimal:
      return "optimal";
    case LpStatus::kInfeasible:
      return "infeasible";
    case LpStatus::kUnbounded:
      return "unbounded";
  }
  return "?";
}

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  std::vector<double> values;
  double objective = 0.0;
  int iterations = 0;
};

namespace detail {

// Dense-tableau bounded-variable primal simplex. Columns are the structural
// variables, one slack per row and phase-one artificials. Entering and
// leaving choices follow Bland's rule (lowest index), so the method
// terminates and is deterministic.
class BoundedSimplex {
 public:
  explicit BoundedSimplex(const LpProblem& p) : p_(p) {}

  LpSolution run() {
    setup();
    LpSolution sol;
    // Phase one: drive the artificials to zero.
    std::vector<double> phase1(static_cast<std::size_t>(ncols_), 0.0);
    for (int j = first_art_; j < ncols_; ++j) phase1[static_cast<std::size_t>(j)] = -1.0;
    if (first_art_ < ncols_) {
      if (iterate(phase1) != Outcome::kOptimal) {
        throw NumericError("phase one of the simplex did not converge");
      }
      double infeas = 0.0;
      for (int j = first_art_; j < ncols_; ++j) infeas += value(j);
      if (infeas > kFeasTol * (1.0 + rhs_scale_)) {
        sol.status = LpStatus::kInfeasible;
        sol.iterations = iterations_;
        return sol;
      }
      for (int j = first_art_; j < ncols_; ++j) {
        hi_[static_cast<std::size_t>(j)] = 0.0;
      }
    }
    std::vector<double> cost(static_cast<std::size_t>(ncols_), 0.0);
    for (int j = 0; j < nstruct_; ++j) {
      cost[static_cast<std::size_t>(j)] = p_.objective[static_cast<std::size_t>(j)];
    }
    const Outcome out = iterate(cost);
    sol.iterations = iterations_;
    if (out == Outcome::kUnbounded) {
      sol.status = LpStatus::kUnbounded;
      return sol;
    }
    refresh_basics();
    sol.status = LpStatus::kOptimal;
    sol.values.resize(static_cast<std::size_t>(nstruct_));
    for (int j = 0; j < nstruct_; ++j) {
      double v = value(j);
      v = std::clamp(v, lo_[static_cast<std::size_t>(j)], hi_[static_cast<std::size_t>(j)]);
      sol.values[static_cast<std::size_t>(j)] = v;
      sol.objective += p_.objective[static_cast<std::size_t>(j)] * v;
    }
    return sol;
  }

 private:
  static constexpr double kOptTol = 1e-9;
  static constexpr double kFeasTol = 1e-9;
  static constexpr double kPivotTol = 1e-11;
  static constexpr int kMaxIterations = 200000;
  static constexpr double kInf = std::numeric_limits<double>::infinity();

  enum class Outcome { kOptimal, kUnbounded };
  enum class At { kLower, kUpper, kBasic };

  double& t(int r, int j) {
    return tab_[static_cast<std::size_t>(r) * static_cast<std::size_t>(ncols_) +
                static_cast<std::size_t>(j)];
  }

  double value(int j) const {
    const auto uj = static_cast<std::size_t>(j);
    if (state_[uj] == At::kBasic) return beta_[static_cast<std::size_t>(row_of_[uj])];
    return state_[uj] == At::kLower ? lo_[uj] : hi_[uj];
  }

  void setup() {
    nstruct_ = p_.n_vars();
    nrows_ = p_.n_rows();
    for (int j = 0; j < nstruct_; ++j) {
      const auto uj = static_cast<std::size_t>(j);
      require(std::isfinite(p_.lower[uj]),
              "variable " + p_.names[uj] + " needs a finite lower bound");
      require(p_.lower[uj] <= p_.upper[uj],
              "variable " + p_.names[uj] + " has empty bounds");
    }
    // Residuals with structurals at their lower bounds.
    std::vector<double> resid(static_cast<std::size_t>(nrows_));
    std::vector<bool> needs_art(static_cast<std::size_t>(nrows_), false);
    int n_art = 0;
    for (int r = 0; r < nrows_; ++r) {
      const auto& row = p_.rows[static_cast<std::size_t>(r)];
      double lhs = 0.0;
      for (const auto& [j, a] : row.coeffs) lhs += a * p_.lower[static_cast<std::size_t>(j)];
      const double res = row.rhs - lhs;
      resid[static_cast<std::size_t>(r)] = res;
      rhs_scale_ = std::max(rhs_scale_, std::fabs(row.rhs));
      const bool ok = (row.sense == Sense::kLessEqual && res >= 0.0) ||
                      (row.sense == Sense::kGreaterEqual && res <= 0.0) ||
                      (row.sense == Sense::kEqual && res == 0.0);
      if (!ok) {
        needs_art[static_cast<std::size_t>(r)] = true;
        ++n_art;
      }
    }
    first_art_ = nstruct_ + nrows_;
    ncols_ = first_art_ + n_art;
    tab_.assign(static_cast<std::size_t>(nrows_) * static_cast<std::size_t>(ncols_), 0.0);
    lo_.assign(static_cast<std::size_t>(ncols_), 0.0);
    hi_.assign(static_cast<std::size_t>(ncols_), kInf);
    state_.assign(static_cast<std::size_t>(ncols_), At::kLower);
    row_of_.assign(static_cast<std::size_t>(ncols_), -1);
    basis_.assign(static_cast<std::size_t>(nrows_), -1);
    beta_.assign(static_cast<std::size_t>(nrows_), 0.0);
    slack_sign_.assign(static_cast<std::size_t>(nrows_), 1.0);
    for (int j = 0; j < nstruct_; ++j) {
      lo_[static_cast<std::size_t>(j)] = p_.lower[static_cast<std::size_t>(j)];
      hi_[static_cast<std::size_t>(j)] = p_.upper[static_cast<std::size_t>(j)];
    }
    int art = first_art_;
    for (int r = 0; r < nrows_; ++r) {
      const auto ur = static_cast<std::size_t>(r);
      const auto& row = p_.rows[ur];
      const int slack = nstruct_ + r;
      const double ssign = row.sense == Sense::kGreaterEqual ? -1.0 : 1.0;
      slack_sign_[ur] = ssign;
      if (row.sense == Sense::kEqual) hi_[static_cast<std::size_t>(slack)] = 0.0;
      double basic_coef;
      int basic;
      if (needs_art[ur]) {
        basic = art++;
        basic_coef = resid[ur] >= 0.0 ? 1.0 : -1.0;
      } else {
        basic = slack;
        basic_coef = ssign;
      }
      for (const auto& [j, a] : row.coeffs) t(r, j) += a / basic_coef;
      t(r, slack) = ssign / basic_coef;
      if (basic != slack) t(r, basic) = 1.0;
      basis_[ur] = basic;
      row_of_[static_cast<std::size_t>(basic)] = r;
      state_[static_cast<std::size_t>(basic)] = At::kBasic;
      beta_[ur] = resid[ur] / basic_coef;
    }
  }

  Outcome iterate(const std::vector<double>& cost) {
    std::vector<double> d(static_cast<std::size_t>(ncols_));
    while (true) {
      if (++iterations_ > kMaxIterations) {
        throw NumericError("simplex iteration limit reached");
      }
      // Reduced costs d_j = c_j - c_B^T T_j.
      for (int j = 0; j < ncols_; ++j) d[static_cast<std::size_t>(j)] = cost[static_cast<std::size_t>(j)];
      for (int r = 0; r < nrows_; ++r) {
        const double cb = cost[static_cast<std::size_t>(basis_[static_cast<std::size_t>(r)])];
        if (cb == 0.0) continue;
        for (int j = 0; j < ncols_; ++j) d[static_cast<std::size_t>(j)] -= cb * t(r, j);
      }
      int enter = -1;
      for (int j = 0; j < ncols_; ++j) {
        const auto uj = static_cast<std::size_t>(j);
        if (state_[uj] == At::kBasic || lo_[uj] == hi_[uj]) continue;
        if ((state_[uj] == At::kLower && d[uj] > kOptTol) ||
            (state_[uj] == At::kUpper && d[uj] < -kOptTol)) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return Outcome::kOptimal;
      const auto ue = static_cast<std::size_t>(enter);
      const double dir = state_[ue] == At::kLower ? 1.0 : -1.0;

      double theta = hi_[ue] - lo_[ue];
      int leave_row = -1;
      bool leave_to_upper = false;
      for (int r = 0; r < nrows_; ++r) {
        const double a = t(r, enter) * dir;
        if (std::fabs(a) <= kPivotTol) continue;
        const auto ub = static_cast<std::size_t>(basis_[static_cast<std::size_t>(r)]);
        double lim;
        bool to_upper;
        if (a > 0.0) {
          lim = (beta_[static_cast<std::size_t>(r)] - lo_[ub]) / a;
          to_upper = false;
        } else {
          if (!std::isfinite(hi_[ub])) continue;
          lim = (hi_[ub] - beta_[static_cast<std::size_t>(r)]) / -a;
          to_upper = true;
        }
        lim = std::max(lim, 0.0);
        const bool better = lim < theta - 1e-12;
        const bool tie = !better && lim <= theta + 1e-12 && leave_row >= 0 &&
                         basis_[static_cast<std::size_t>(r)] <
                             basis_[static_cast<std::size_t>(leave_row)];
        if (better || tie) {
          theta = lim;
          leave_row = r;
          leave_to_upper = to_upper;
        }
      }
      if (!std::isfinite(theta)) return Outcome::kUnbounded;

      for (int r = 0; r < nrows_; ++r) {
        beta_[static_cast<std::size_t>(r)] -= t(r, enter) * dir * theta;
      }
      const double entering_value = (state_[ue] == At::kLower ? lo_[ue] : hi_[ue]) + dir * theta;
      if (leave_row < 0) {
        state_[ue] = state_[ue] == At::kLower ? At::kUpper : At::kLower;
        continue;
      }
      const auto ul = static_cast<std::size_t>(leave_row);
      const int leaving = basis_[ul];
      state_[static_cast<std::size_t>(leaving)] = leave_to_upper ? At::kUpper : At::kLower;
      row_of_[static_cast<std::size_t>(leaving)] = -1;
      pivot(leave_row, enter);
      basis_[ul] = enter;
      row_of_[ue] = leave_row;
      state_[ue] = At::kBasic;
      beta_[ul] = entering_value;
    }
  }

  void pivot(int pr, int pc) {
    const double inv = 1.0 / t(pr, pc);
    for (int j = 0; j < ncols_; ++j) t(pr, j) *= inv;
    t(pr, pc) = 1.0;
    for (int r = 0; r < nrows_; ++r) {
      if (r == pr) continue;
      const double f = t(r, pc);
      if (f == 0.0) continue;
      for (int j = 0; j < ncols_; ++j) t(r, j) -= f * t(pr, j);
      t(r, pc) = 0.0;
    }
  }

  // x_B = B^-1 (b - N x_N); B^-1 is read off the slack columns.
  void refresh_basics() {
    std::vector<double> rhs(static_cast<std::size_t>(nrows_));
    for (int r = 0; r < nrows_; ++r) {
      const auto& row = p_.rows[static_cast<std::size_t>(r)];
      double v = row.rhs;
      for (const auto& [j, a] : row.coeffs) {
        if (state_[static_cast<std::size_t>(j)] != At::kBasic) v -= a * value(j);
      }
      const int slack = nstruct_ + r;
      if (state_[static_cast<std::size_t>(slack)] != At::kBasic) {
        v -= slack_sign_[static_cast<std::size_t>(r)] * value(slack);
      }
      rhs[static_cast<std::size_t>(r)] = v;
    }
    for (int r = 0; r < nrows_; ++r) {
      double v = 0.0;
      for (int q = 0; q < nrows_; ++q) {
        v += t(r, nstruct_ + q) * slack_sign_[static_cast<std::size_t>(q)] *
             rhs[static_cast<std::size_t>(q)];
      }
      // Artificial basics (fixed at zero) are left untouched.
      if (basis_[static_cast<std::size_t>(r)] < first_art_) beta_[static_cast<std::size_t>(r)] = v;
    }
  }

  const LpProblem& p_;
  int nstruct_ = 0, nrows_ = 0, ncols_ = 0, first_art_ = 0;
  int iterations_ = 0;
  double rhs_scale_ = 0.0;
  std::vector<double> tab_, lo_, hi_, beta_, slack_sign_;
  std::vector<At> state_;
  std::vector<int> row_of_, basis_;
};

}  // namespace detail

// Solves a bounded-variable LP to optimality. Infeasible and unbounded
// problems are reported through the status, not by exception.
inline LpSolution solve_lp(const LpProblem& p) {
  return detail::BoundedSimplex(p).run();
}

// Largest constraint violation of `x` (for tests and diagnostics).
inline double max_violation(const LpProblem& p, std::span<const double> x) {
  double worst = 0.0;
  for (int j = 0; j < p.n_vars(); ++j) {
    const auto uj = static_cast<std::size_t>(j);
    worst = std::max({worst, p.lower[uj] - x[uj], x[uj] - p.upper[uj]});
  }
  for (const auto& row : p.rows) {
    double lhs = 0.0;
    for (const auto& [j, a] : row.coeffs) lhs += a * x[static_cast<std::size_t>(j)];
    switch (row.sense) {
      case Sense::kLessEqual:
        worst = std::max(worst, lhs - row.rhs);
        break;
      case Sense::kGreaterEqual:
        worst = std::max(worst, row.rhs - lhs);
        break;
      case Sense::kEqual:
        worst = std::max(worst, std::fabs(lhs - row.rhs));
        break;
    }
  }
  return worst;
}

// Maximum-coverage LP. Variables: x_e for element e (index e), then y_i for
// set i (index n_elements + i). Rows: x_e <= 1 and x_e - sum_{i covers e} y_i
// <= 0 for every element (2E rows), then the budget sum y_i <= k. Bounds
// 0 <= x_e <= 1 and 0 <= y_i <= 1 are explicit.
struct McLp {
  LpProblem problem;
  int n_elements = 0;
  int n_sets = 0;

  int x(int e) const { return e; }
  int y(int i) const { return n_elements + i; }
  int budget_row() const { return 2 * n_elements; }

  std::vector<double> y_values(const LpSolution& s) const {
    return {s.values.begin() + n_elements, s.values.begin() + n_elements + n_sets};
  }
  std::vector<double> x_values(const LpSolution& s) const {
    return {s.values.begin(), s.values.begin() + n_elements};
  }
};

inline McLp build_mc_lp(const SetSystemInstance& inst) {
  McLp lp;
  lp.n_elements = static_cast<int>(inst.n_elements());
  lp.n_sets = inst.n_sets();
  auto& p = lp.problem;
  for (int e = 0; e < lp.n_elements; ++e) {
    p.add_variable(inst.element(static_cast<std::size_t>(e)).weight, 0.0, 1.0,
                   "x" + std::to_string(e));
  }
  for (int i = 0; i < lp.n_sets; ++i) {
    p.add_variable(0.0, 0.0, 1.0, "y" + std::to_string(i));
  }
  for (int e = 0; e < lp.n_elements; ++e) {
    p.add_row({{lp.x(e), 1.0}}, Sense::kLessEqual, 1.0);
    std::vector<std::pair<int, double>> cover{{lp.x(e), 1.0}};
    for (const int s : inst.element(static_cast<std::size_t>(e)).covering_sets) {
      cover.emplace_back(lp.y(s), -1.0);
    }
    p.add_row(std::move(cover), Sense::kLessEqual, 0.0);
  }
  std::vector<std::pair<int, double>> budget;
  for (int i = 0; i < lp.n_sets; ++i) budget.emplace_back(lp.y(i), 1.0);
  p.add_row(std::move(budget), Sense::kLessEqual, static_cast<double>(inst.k()));
  return lp;
}

// The value-oracle LP: one x_I per stored class (|I| <= M), one x' for the
// residual mass treated as covered by every set, and the budget. This is the
// coverage LP of the table's surrogate instance.
inline McLp build_oracle_lp(const MobiusTable& table, int n, int k) {
  detail::require(n == table.n, "table was extracted for a different n");
  return build_mc_lp(surrogate_instance(table, k));
}

// Returns a copy of `p` with the row sum_{j in vars} objective_j x_j <= cap.
// An infinite cap is replaced by the largest attainable left-hand side.
inline LpProblem add_budget_cap(const LpProblem& p, std::span<const int> vars,
                                double cap) {
  detail::require(cap >= 0.0, "budget cap must be nonnegative");
  LpProblem out = p;
  std::vector<std::pair<int, double>> coeffs;
  double reach = 0.0;
  for (const int j : vars) {
    detail::require(j >= 0 && j < p.n_vars(),
                    "budget cap references unknown variable " + std::to_string(j));
    const double w = p.objective[static_cast<std::size_t>(j)];
    coeffs.emplace_back(j, w);
    reach += std::fabs(w) * std::max(std::fabs(p.lower[static_cast<std::size_t>(j)]),
                                     std::fabs(p.upper[static_cast<std::size_t>(j)]));
  }
  out.add_row(std::move(coeffs), Sense::kLessEqual, std::min(cap, reach));
  return out;
}

// Human-readable dump: objective line, one line per constraint, then bounds.
inline std::string to_text(const LpProblem& p) {
  std::ostringstream os;
  os.precision(17);
  auto term = [&](double a, int j, bool first) {
    if (!first) os << (a < 0 ? "- " : "+ ");
    else if (a < 0) os << "-";
    os << std::fabs(a) << " " << p.names[static_cast<std::size_t>(j)];
  };
  os << "maximize:";
  bool first = true;
  for (int j = 0; j < p.n_vars(); ++j) {
    const double c = p.objective[static_cast<std::size_t>(j)];
    if (c == 0.0) continue;
    os << " ";
    term(c, j, first);
    first = false;
  }
  if (first) os << " 0";
  os << "\n";
  for (int r = 0; r < p.n_rows(); ++r) {
    const auto& row = p.rows[static_cast<std::size_t>(r)];
    os << "c" << r << ":";
    bool f = true;
    for (const auto& [j, a] : row.coeffs) {
      os << " ";
      term(a, j, f);
      f = false;
    }
    if (f) os << " 0";
    os << (row.sense == Sense::kLessEqual ? " <= "
           : row.sense == Sense::kEqual   ? " = "
                                          : " >= ")
       << row.rhs << "\n";
  }
  for (int j = 0; j < p.n_vars(); ++j) {
    os << "bound: " << p.lower[static_cast<std::size_t>(j)] << " <= "
       << p.names[static_cast<std::size_t>(j)] << " <= "
       << p.upper[static_cast<std::size_t>(j)] << "\n";
  }
  return os.str();
}

}  // namespace maxcov

#endif  // MAXCOV_LP_HPP_
