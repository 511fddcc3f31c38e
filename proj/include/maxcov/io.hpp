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

#ifndef MAXCOV_IO_HPP_
#define MAXCOV_IO_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <fstream>
#include <future>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"

#include "maxcov/curves.hpp"
#include "maxcov/errors.hpp"
#include "maxcov/generators.hpp"
#include "maxcov/instance.hpp"
#include "maxcov/rational.hpp"

namespace maxcov {

// Instance files: {"n_sets": n, "k": k, "elements": [{"weight": w,
// "sets": [i, ...]}, ...]} with 0-based set indices.
inline nlohmann::json instance_to_json(const SetSystemInstance& inst) {
  nlohmann::json j;
  j["n_sets"] = inst.n_sets();
  j["k"] = inst.k();
  j["elements"] = nlohmann::json::array();
  for (const auto& el : inst.elements()) {
    j["elements"].push_back({{"weight", el.weight}, {"sets", el.covering_sets}});
  }
  return j;
}

// Canonical text: canonicalized instance, two-space indent, trailing newline.
inline std::string save_instance(const SetSystemInstance& inst) {
  return instance_to_json(canonicalize(inst)).dump(2) + "\n";
}

inline SetSystemInstance instance_from_json(const nlohmann::json& j) {
  auto field_error = [](const std::string& where, const std::string& what) {
    return InputError(where + ": " + what);
  };
  if (!j.is_object()) throw field_error("document", "expected a JSON object");
  for (const char* key : {"n_sets", "k", "elements"}) {
    if (!j.contains(key)) throw field_error(key, "missing field");
  }
  if (!j["n_sets"].is_number_integer()) throw field_error("n_sets", "expected an integer");
  if (!j["k"].is_number_integer()) throw field_error("k", "expected an integer");
  if (!j["elements"].is_array()) throw field_error("elements", "expected an array");
  const auto n = j["n_sets"].get<long long>();
  const auto k = j["k"].get<long long>();
  if (n < 1 || n > 1'000'000) throw field_error("n_sets", "must be in [1, 1e6]");
  if (k < 0 || k > n) throw field_error("k", "must be in [0, n_sets]");
  std::vector<Element> elements;
  const auto& arr = j["elements"];
  elements.reserve(arr.size());
  for (std::size_t e = 0; e < arr.size(); ++e) {
    const std::string where = "elements[" + std::to_string(e) + "]";
    const auto& el = arr[e];
    if (!el.is_object()) throw field_error(where, "expected an object");
    if (!el.contains("weight") || !el["weight"].is_number()) {
      throw field_error(where + ".weight", "expected a number");
    }
    if (!el.contains("sets") || !el["sets"].is_array()) {
      throw field_error(where + ".sets", "expected an array");
    }
    Element out;
    out.weight = el["weight"].get<double>();
    for (std::size_t t = 0; t < el["sets"].size(); ++t) {
      const auto& s = el["sets"][t];
      if (!s.is_number_integer()) {
        throw field_error(where + ".sets[" + std::to_string(t) + "]", "expected an integer");
      }
      const auto v = s.get<long long>();
      if (v < 0 || v >= n) {
        throw field_error(where + ".sets[" + std::to_string(t) + "]",
                          "set index " + std::to_string(v) + " out of range");
      }
      out.covering_sets.push_back(static_cast<int>(v));
    }
    elements.push_back(std::move(out));
  }
  try {
    return SetSystemInstance(static_cast<int>(n), static_cast<int>(k), std::move(elements));
  } catch (const InputError& e) {
    throw field_error("elements", e.what());
  }
}

inline SetSystemInstance load_instance(std::istream& in) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("JSON parse error: ") + e.what());
  }
  return instance_from_json(j);
}

inline SetSystemInstance load_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open instance file " + path);
  try {
    return load_instance(in);
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

// Graph text: first line "n m", then m lines "u v w" (0-based, decimal w).
inline Graph parse_graph(std::istream& in) {
  std::string line;
  int lineno = 0;
  auto next = [&](std::istringstream& ss) {
    while (std::getline(in, line)) {
      ++lineno;
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      ss = std::istringstream(line);
      return true;
    }
    return false;
  };
  auto fail = [&](const std::string& what) {
    return InputError("graph line " + std::to_string(lineno) + ": " + what);
  };
  std::istringstream ss;
  if (!next(ss)) throw InputError("graph input is empty");
  Graph g;
  long long m = 0;
  if (!(ss >> g.n >> m) || g.n < 1 || m < 0) throw fail("expected 'n m' with n >= 1, m >= 0");
  for (long long e = 0; e < m; ++e) {
    if (!next(ss)) throw InputError("graph input ends after " + std::to_string(e) + " of " +
                                    std::to_string(m) + " edges");
    WeightedEdge ed;
    if (!(ss >> ed.u >> ed.v >> ed.w)) throw fail("expected 'u v w'");
    if (ed.u < 0 || ed.u >= g.n || ed.v < 0 || ed.v >= g.n) throw fail("vertex out of range");
    if (ed.u == ed.v) throw fail("self-loop");
    if (!(ed.w >= 0.0) || !std::isfinite(ed.w)) throw fail("weight must be finite and >= 0");
    g.edges.push_back(ed);
  }
  return g;
}

inline std::string format_graph(const Graph& g) {
  std::ostringstream os;
  os.precision(17);
  os << g.n << " " << g.edges.size() << "\n";
  for (const auto& e : g.edges) os << e.u << " " << e.v << " " << e.w << "\n";
  return os.str();
}

struct CurveRow {
  double c = 0.0;
  double sm_ratio = 0.0;
  double rho = 0.0;
  double naive = 0.0;  // max(c, 1 - 1/e)
  bool has_sdp = false;
  double rho_sdp = 0.0;
};

inline CurveRow curve_row(const Rational& c, bool with_sdp) {
  CurveRow r;
  r.c = c.value();
  r.sm_ratio = sm_ratio(r.c);
  r.rho = rho(c).rho;
  r.naive = std::max(r.c, 1.0 - std::exp(-1.0));
  if (with_sdp && r.c >= 0.5 && r.c < 1.0) {
    r.has_sdp = true;
    r.rho_sdp = rho_sdp(r.c).value;
  }
  return r;
}

// Grid c_min, c_min + step, ... <= c_max (decimal grid points are snapped
// to rationals). Rows are computed on up to `threads` workers and returned
// in grid order.
inline std::vector<CurveRow> curve_table(double c_min, double c_max, double step,
                                         bool with_sdp, unsigned threads = 0) {
  detail::require(c_min > 0.0 && c_min <= c_max && c_max < 1.0,
                  "curve grid needs 0 < c_min <= c_max < 1");
  detail::require(step > 0.0, "curve step must be positive");
  std::vector<Rational> grid;
  const long long count = static_cast<long long>(std::floor((c_max - c_min) / step + 1e-9)) + 1;
  detail::require(count <= 1'000'000, "curve grid is too large");
  for (long long i = 0; i < count; ++i) {
    const double c = std::round((c_min + static_cast<double>(i) * step) * 1e12) / 1e12;
    grid.push_back(Rational::snap(c));
  }
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  std::vector<CurveRow> rows(grid.size());
  std::vector<std::future<void>> jobs;
  for (unsigned w = 0; w < threads; ++w) {
    jobs.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t i = w; i < grid.size(); i += threads) rows[i] = curve_row(grid[i], with_sdp);
    }));
  }
  for (auto& j : jobs) j.get();
  return rows;
}

inline void write_curve_csv(std::ostream& os, const std::vector<CurveRow>& rows) {
  os << "c,sm_ratio,rho,naive,rho_sdp\n";
  char buf[256];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof(buf), "%.9f,%.9f,%.9f,%.9f,", r.c, r.sm_ratio, r.rho, r.naive);
    os << buf;
    if (r.has_sdp) {
      std::snprintf(buf, sizeof(buf), "%.9f", r.rho_sdp);
      os << buf;
    }
    os << "\n";
  }
}

}  // namespace maxcov

#endif  // MAXCOV_IO_HPP_
