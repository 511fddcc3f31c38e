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

#ifndef MAXCOV_RATIONAL_HPP_
#define MAXCOV_RATIONAL_HPP_

#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <string_view>

#include "maxcov/errors.hpp"

namespace maxcov {

// A reduced positive fraction. The cardinality ratio c = k/n is carried as a
// Rational so that the reciprocal regime c = 1/s is decided exactly.
class Rational {
 public:
  static constexpr std::int64_t kMaxSnapDenominator = 1'000'000;

  Rational() = default;
  Rational(std::int64_t num, std::int64_t den) : num_(num), den_(den) {
    detail::require(den != 0, "rational with zero denominator");
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    const std::int64_t g = std::gcd(num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  double value() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

  // True for c = 1/s with s a positive integer (including c = 1).
  bool is_reciprocal() const { return num_ == 1; }

  // Best rational approximation with denominator <= max_den (continued
  // fractions). `exact` reports whether the input was hit to 1e-12.
  static Rational snap(double x, bool* exact = nullptr,
                       std::int64_t max_den = kMaxSnapDenominator) {
    detail::require(std::isfinite(x), "cannot snap non-finite value");
    const bool neg = x < 0;
    double v = std::fabs(x);
    std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double rem = v;
    for (int it = 0; it < 64; ++it) {
      const double a_real = std::floor(rem);
      const auto a = static_cast<std::int64_t>(a_real);
      const std::int64_t q2 = q0 + a * q1;
      if (q2 > max_den) break;
      const std::int64_t p2 = p0 + a * p1;
      p0 = p1;
      q0 = q1;
      p1 = p2;
      q1 = q2;
      const double frac = rem - a_real;
      if (frac < 1e-15 ||
          std::fabs(static_cast<double>(p1) / static_cast<double>(q1) - v) <
              1e-15) {
        break;
      }
      rem = 1.0 / frac;
    }
    if (q1 == 0) {
      p1 = static_cast<std::int64_t>(std::llround(v));
      q1 = 1;
    }
    Rational r(neg ? -p1 : p1, q1);
    if (exact != nullptr) *exact = std::fabs(r.value() - x) <= 1e-12;
    return r;
  }

  // Accepts "N/D" or a decimal literal; decimals are snapped.
  static Rational parse(std::string_view text, bool* exact = nullptr) {
    const std::string s(text);
    const auto slash = s.find('/');
    try {
      if (slash != std::string::npos) {
        std::size_t used_n = 0, used_d = 0;
        const std::string ns = s.substr(0, slash);
        const std::string ds = s.substr(slash + 1);
        const long long n = std::stoll(ns, &used_n);
        const long long d = std::stoll(ds, &used_d);
        detail::require(used_n == ns.size() && used_d == ds.size(),
                        "malformed rational '" + s + "'");
        if (exact != nullptr) *exact = true;
        return Rational(n, d);
      }
      std::size_t used = 0;
      const double x = std::stod(s, &used);
      detail::require(used == s.size(), "malformed number '" + s + "'");
      return snap(x, exact);
    } catch (const std::logic_error&) {
      throw InputError("malformed rational '" + s + "'");
    }
  }

  std::string str() const {
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  friend bool operator==(const Rational&, const Rational&) = default;

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace maxcov

#endif  // MAXCOV_RATIONAL_HPP_
