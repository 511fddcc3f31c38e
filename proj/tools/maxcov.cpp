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

// Command-line front end: curve tables, instance generation, solvers,
// integrality-gap reports and Moebius tables.
//
//   maxcov curve --c-min 0.05 --c-max 0.95 --step 0.05 --with-sdp --out fig.csv
//   maxcov gen --family int-gap --c 1/2 --M 3 --out gap.json
//   maxcov solve --instance gap.json --algo lp-round
//   maxcov gap --instance gap.json
//   maxcov mobius --instance gap.json --M 2
//
// Exit codes: 0 success, 2 input error, 3 capacity error, 4 numeric failure.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "maxcov.hpp"

namespace {

using maxcov::InputError;
using nlohmann::json;

constexpr int kExitInput = 2;
constexpr int kExitCapacity = 3;
constexpr int kExitNumeric = 4;

maxcov::Rational parse_c(const std::string& text) {
  bool exact = true;
  const auto c = maxcov::Rational::parse(text, &exact);
  if (!exact) {
    std::cerr << "warning: c = " << text << " snapped to " << c.str() << "\n";
  }
  return c;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << text;
  if (!out) throw InputError("write to " + path + " failed");
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(9);
  os << std::fixed << v;
  return os.str();
}

// ---- curve ---------------------------------------------------------------

struct CurveArgs {
  double c_min = 0.01, c_max = 0.99, step = 0.01;
  bool with_sdp = false;
  std::string out;
};

int run_curve(const CurveArgs& a) {
  const auto rows = maxcov::curve_table(a.c_min, a.c_max, a.step, a.with_sdp);
  std::ostringstream os;
  maxcov::write_curve_csv(os, rows);
  write_text(a.out, os.str());
  return 0;
}

// ---- gen -----------------------------------------------------------------

struct GenArgs {
  std::string family;
  int s = 2;
  std::string c = "1/2";
  int M = 2;
  std::string graph;
  int n = 10;
  int elements = 20;
  int max_cover = 3;
  int k = -1;
  double edge_prob = 0.4;
  std::optional<std::uint64_t> seed;
  std::string out;
};

std::uint64_t need_seed(const std::optional<std::uint64_t>& seed, const std::string& what) {
  if (!seed) throw InputError(what + " is randomized and needs --seed");
  return *seed;
}

int run_gen(const GenArgs& a) {
  maxcov::SetSystemInstance inst;
  if (a.family == "unit-gap") {
    inst = maxcov::gen_unit_gap(a.s);
  } else if (a.family == "general-gap") {
    inst = maxcov::gen_general_gap(parse_c(a.c)).first;
  } else if (a.family == "int-gap") {
    inst = maxcov::gen_integrality_gap(parse_c(a.c), a.M);
  } else if (a.family == "kvc") {
    maxcov::Graph g;
    if (!a.graph.empty()) {
      std::ifstream in(a.graph);
      if (!in) throw InputError("cannot open graph file " + a.graph);
      g = maxcov::parse_graph(in);
    } else {
      g = maxcov::gen_random_graph(a.n, a.edge_prob, need_seed(a.seed, "random kvc"));
    }
    inst = maxcov::gen_kvc(g, a.k >= 0 ? a.k : g.n / 2);
  } else if (a.family == "random") {
    inst = maxcov::gen_random(a.n, a.elements, a.max_cover, a.k >= 0 ? a.k : a.n / 2,
                              need_seed(a.seed, "random family"));
  } else {
    throw InputError("unknown family " + a.family);
  }
  write_text(a.out, maxcov::save_instance(inst));
  return 0;
}

// ---- solve ---------------------------------------------------------------

struct SolveArgs {
  std::string instance;
  std::string algo = "lp-round";
  std::optional<std::uint64_t> seed;
  double eps = 0.05;
  int steps = 0;
  int samples = 0;
  int draws = 8;
};

constexpr double kAutoExactCap = 1e6;

int run_solve(const SolveArgs& a) {
  const auto inst = maxcov::load_instance_file(a.instance);
  const int n = inst.n_sets();
  const int k = inst.k();
  json rep;
  rep["algo"] = a.algo;
  rep["n_sets"] = n;
  rep["k"] = k;
  rep["n_elements"] = inst.n_elements();
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<int> chosen;
  if (a.algo == "exact") {
    chosen = maxcov::brute_force_opt(inst).chosen;
  } else if (a.algo == "lp-round") {
    const auto o = maxcov::round_mc(inst);
    chosen = o.chosen;
    rep["lp_value"] = o.lp_value;
    rep["fractional_value"] = o.fractional_value;
    rep["alpha"] = o.alpha;
  } else if (a.algo == "lp-round-oracle") {
    const auto oracle = maxcov::ValueOracle::wrap(inst);
    const auto o = maxcov::round_mc_oracle(oracle, n, k);
    chosen = o.chosen;
    rep["lp_value"] = o.lp_value;
    rep["fractional_value"] = o.fractional_value;
    rep["alpha"] = o.alpha;
    rep["oracle_queries"] = o.oracle_queries;
  } else if (a.algo == "greedy") {
    const auto oracle = maxcov::ValueOracle::wrap(inst);
    chosen = maxcov::classic_greedy(oracle, n, k);
    rep["oracle_queries"] = oracle.query_count();
  } else if (a.algo == "mcg") {
    maxcov::SmResult o;
    if (a.samples > 0) {
      const auto oracle = maxcov::ValueOracle::wrap(inst);
      o = maxcov::sm_maximize(oracle, k, a.steps, a.samples, need_seed(a.seed, "sampled mcg"));
      rep["oracle_queries"] = oracle.query_count();
      rep["samples"] = a.samples;
    } else {
      o = maxcov::sm_maximize(inst, k, a.steps);
    }
    chosen = o.chosen;
    rep["fractional_value"] = o.fractional_value;
    rep["horizon"] = o.horizon;
    rep["steps"] = o.steps;
    rep["rescaled"] = o.rescaled;
  } else if (a.algo == "separate") {
    maxcov::SeparationConfig cfg;
    cfg.eps = a.eps;
    cfg.seed = need_seed(a.seed, "separate");
    cfg.sdp.draws = a.draws;
    const auto r = maxcov::separate_half(inst, cfg);
    chosen = r.chosen;
    rep["branch"] = maxcov::to_string(r.branch);
    rep["guess"] = r.guess;
    rep["interval"] = {r.interval_lo, r.interval_hi};
    rep["baseline"] = r.baseline;
    rep["eps"] = r.eps;
    json table = json::array();
    for (const auto& c : r.candidates) {
      json row = {{"branch", maxcov::to_string(c.branch)}, {"guess", c.guess},
                  {"value", c.value}, {"ok", c.ok}};
      if (c.branch == maxcov::Branch::kConstrainedLp) row["cap"] = c.cap;
      if (!c.ok) row["note"] = c.note;
      table.push_back(row);
    }
    rep["candidates"] = table;
    for (const auto& w : r.warnings) std::cerr << "warning: " << w << "\n";
  } else {
    throw InputError("unknown algo " + a.algo);
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const double value = maxcov::coverage_value(inst, chosen);
  rep["chosen"] = chosen;
  rep["value"] = value;
  if (a.algo == "exact" || maxcov::detail::binom(n, k) <= kAutoExactCap) {
    const double opt = a.algo == "exact" ? value : maxcov::brute_force_opt(inst).value;
    rep["exact_value"] = opt;
    rep["ratio"] = opt > 0.0 ? value / opt : 1.0;
  }
  rep["wall_time_s"] = secs;
  std::cout << rep.dump(2) << "\n";
  return 0;
}

// ---- gap / mobius --------------------------------------------------------

int run_gap(const std::string& path) {
  const auto inst = maxcov::load_instance_file(path);
  const auto g = maxcov::gap_ratio(inst);
  std::cout << "lp_optimum " << fmt(g.lp_value) << "\n"
            << "integral_optimum " << fmt(g.integral_value) << "\n"
            << "ratio " << fmt(g.ratio) << "\n";
  if (inst.k() > 0) {
    const maxcov::Rational c(inst.k(), inst.n_sets());
    std::cout << "c " << c.str() << "\n"
              << "rho " << fmt(maxcov::rho(c).rho) << "\n";
  }
  return 0;
}

int run_mobius(const std::string& path, int M) {
  const auto inst = maxcov::load_instance_file(path);
  if (M < 1 || M > inst.n_sets()) {
    throw InputError("--M must be in [1, n_sets = " + std::to_string(inst.n_sets()) + "]");
  }
  const auto oracle = maxcov::ValueOracle::wrap(inst);
  const auto t = maxcov::mobius_weights(oracle, M);
  std::cout << "n " << t.n << " M " << t.max_order << " queries " << oracle.query_count()
            << "\n";
  for (const auto& [sets, w] : t.class_weights) {
    std::cout << "class {";
    for (std::size_t i = 0; i < sets.size(); ++i) std::cout << (i ? "," : "") << sets[i];
    std::cout << "} " << fmt(w) << "\n";
  }
  std::cout << "residual " << fmt(t.residual) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Maximum coverage with a proportional cardinality bound"};
  app.require_subcommand(1);

  CurveArgs curve;
  auto* sc = app.add_subcommand("curve", "approximation-ratio curves as CSV");
  sc->add_option("--c-min", curve.c_min, "smallest c")->capture_default_str();
  sc->add_option("--c-max", curve.c_max, "largest c (< 1)")->capture_default_str();
  sc->add_option("--step", curve.step, "grid step")->capture_default_str();
  sc->add_flag("--with-sdp", curve.with_sdp, "add the SDP curve for c >= 1/2");
  sc->add_option("--out", curve.out, "output path (stdout if omitted)");

  GenArgs gen;
  auto* gc = app.add_subcommand("gen", "generate an instance file");
  gc->add_option("--family", gen.family, "unit-gap|general-gap|int-gap|kvc|random")
      ->required()
      ->check(CLI::IsMember({"unit-gap", "general-gap", "int-gap", "kvc", "random"}));
  gc->add_option("--s", gen.s, "unit-gap: number of sets");
  gc->add_option("--c", gen.c, "ratio as N/D or decimal");
  gc->add_option("--M", gen.M, "int-gap: scale");
  gc->add_option("--graph", gen.graph, "kvc: graph file ('n m' then 'u v w' lines)");
  gc->add_option("--n", gen.n, "random/kvc: number of sets or vertices");
  gc->add_option("--elements", gen.elements, "random: number of elements");
  gc->add_option("--max-cover", gen.max_cover, "random: largest m_e");
  gc->add_option("--k", gen.k, "budget (default n/2)");
  gc->add_option("--edge-prob", gen.edge_prob, "kvc without --graph: G(n,p) edge probability");
  gc->add_option("--seed", gen.seed, "RNG seed");
  gc->add_option("--out", gen.out, "output path (stdout if omitted)");

  SolveArgs solve;
  auto* vc = app.add_subcommand("solve", "solve an instance file, JSON report on stdout");
  vc->add_option("--instance", solve.instance, "instance JSON")->required();
  vc->add_option("--algo", solve.algo, "algorithm")
      ->check(CLI::IsMember({"lp-round", "lp-round-oracle", "greedy", "mcg", "separate", "exact"}))
      ->capture_default_str();
  vc->add_option("--seed", solve.seed, "RNG seed (separate, sampled mcg)");
  vc->add_option("--eps", solve.eps, "separate: interval ratio")->capture_default_str();
  vc->add_option("--steps", solve.steps, "mcg: Euler steps (default max(1000, 10n))");
  vc->add_option("--samples", solve.samples, "mcg: sampled-gradient mode with this many samples");
  vc->add_option("--draws", solve.draws, "separate: SDP rounding draws")->capture_default_str();

  std::string gap_path;
  auto* pc = app.add_subcommand("gap", "LP optimum, integral optimum and their ratio");
  pc->add_option("--instance", gap_path, "instance JSON")->required();

  std::string mob_path;
  int mob_M = 1;
  auto* mc = app.add_subcommand("mobius", "class weights recovered from value queries");
  mc->add_option("--instance", mob_path, "instance JSON")->required();
  mc->add_option("--M", mob_M, "largest class size")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    if (*sc) return run_curve(curve);
    if (*gc) return run_gen(gen);
    if (*vc) return run_solve(solve);
    if (*pc) return run_gap(gap_path);
    if (*mc) return run_mobius(mob_path, mob_M);
  } catch (const maxcov::InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const maxcov::CapacityError& e) {
    std::cerr << "capacity error: " << e.what() << "\n";
    return kExitCapacity;
  } catch (const maxcov::NumericError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return kExitNumeric;
  }
  return 0;
}
