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

// Builds a small instance, solves it four ways and prints the values.

#include <cstdio>
#include <vector>

#include "maxcov.hpp"

int main() {
  using namespace maxcov;

  // 6 sets, budget 3 (c = 1/2). Elements list the sets that cover them.
  const SetSystemInstance inst(6, 3, {
                                         {3.0, {0}},
                                         {2.0, {0, 1}},
                                         {2.0, {1, 2}},
                                         {1.5, {2, 3, 4}},
                                         {1.0, {3}},
                                         {2.5, {4, 5}},
                                         {1.0, {5}},
                                         {0.5, {0, 5}},
                                     });

  const auto lp = round_mc(inst);
  const auto greedy = classic_greedy(inst, inst.k());
  const auto mcg = sm_maximize(inst, inst.k());
  const auto opt = brute_force_opt(inst);
  const auto r = rho(Rational(inst.k(), inst.n_sets()));

  std::printf("rho(1/2) = %.6f, alpha* = %.6f\n", r.rho, r.alpha_star);
  std::printf("LP bound           %.4f\n", lp.lp_value);
  std::printf("LP + mixing/pipage %.4f\n", lp.integral_value);
  std::printf("classic greedy     %.4f\n", coverage_value(inst, greedy));
  std::printf("continuous greedy  %.4f\n", mcg.value);
  std::printf("optimum            %.4f\n", opt.value);

  // The rounding guarantee holds on every instance.
  return lp.integral_value >= r.rho * lp.lp_value - 1e-9 ? 0 : 1;
}
