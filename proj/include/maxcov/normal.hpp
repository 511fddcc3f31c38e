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

#ifndef MAXCOV_NORMAL_HPP_
#define MAXCOV_NORMAL_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "maxcov/errors.hpp"

namespace maxcov {

inline double phi_pdf(double t) {
  return std::exp(-0.5 * t * t) / std::sqrt(2.0 * std::numbers::pi);
}

// Standard normal CDF.
inline double phi_cdf(double t) {
  return 0.5 * std::erfc(-t / std::numbers::sqrt2);
}

// Inverse standard normal CDF: rational initial guess (Acklam) polished by
// two Halley steps against erfc.
inline double phi_inv(double p) {
  detail::require(p > 0.0 && p < 1.0,
                  "phi_inv argument " + std::to_string(p) + " outside (0,1)");
  static constexpr std::array<double, 6> a = {
      -3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
      1.383577518672690e+02,  -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr std::array<double, 5> b = {
      -5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
      6.680131188771972e+01,  -1.328068155288572e+01};
  static constexpr std::array<double, 6> c = {
      -7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
      -2.549732539343734e+00, 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr std::array<double, 4> d = {
      7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
      3.754408661907416e+00};
  constexpr double p_low = 0.02425;
  double x;
  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - p_low) {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) *
        q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log1p(-p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  for (int it = 0; it < 2; ++it) {
    // Residual computed on the tail that keeps relative precision.
    const double e = (x < 0.0) ? phi_cdf(x) - p : (1.0 - p) - phi_cdf(-x);
    const double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * x * x);
    x = x - u / (1.0 + 0.5 * x * u);
  }
  return x;
}

namespace detail {

// One Gauss-Kronrod 7/15 panel; returns the Kronrod estimate and sets `err`
// to |K15 - G7|.
template <class F>
double gk15(const F& f, double a, double b, double& err) {
  static constexpr std::array<double, 8> xk = {
      0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
      0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
      0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
      0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
  static constexpr std::array<double, 8> wk = {
      0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
      0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
      0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
      0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
  static constexpr std::array<double, 4> wg = {
      0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
      0.381830050505118944950369775488975, 0.417959183673469387755102040816327};
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(mid);
  double k = wk[7] * fc;
  double g = wg[3] * fc;
  for (int j = 0; j < 7; ++j) {
    const double dx = half * xk[static_cast<std::size_t>(j)];
    const double s = f(mid - dx) + f(mid + dx);
    k += wk[static_cast<std::size_t>(j)] * s;
    if (j % 2 == 1) g += wg[static_cast<std::size_t>(j / 2)] * s;
  }
  err = std::fabs((k - g) * half);
  return k * half;
}

struct Panel {
  double a, b, value, err;
};

}  // namespace detail

// Global adaptive Gauss-Kronrod quadrature of f over [a, b]: the panel with
// the largest error estimate is bisected until the summed estimate drops
// below `tol` or `max_panels` is reached.
template <class F>
double integrate(const F& f, double a, double b, double tol = 1e-13,
                 int max_panels = 400) {
  std::vector<detail::Panel> panels;
  double err = 0.0;
  const double v = detail::gk15(f, a, b, err);
  panels.push_back({a, b, v, err});
  double total_err = err;
  while (total_err > tol && static_cast<int>(panels.size()) < max_panels) {
    std::size_t worst = 0;
    for (std::size_t i = 1; i < panels.size(); ++i) {
      if (panels[i].err > panels[worst].err) worst = i;
    }
    const detail::Panel p = panels[worst];
    const double mid = 0.5 * (p.a + p.b);
    if (!(mid > p.a && mid < p.b)) break;
    double e1 = 0.0, e2 = 0.0;
    const double v1 = detail::gk15(f, p.a, mid, e1);
    const double v2 = detail::gk15(f, mid, p.b, e2);
    panels[worst] = {p.a, mid, v1, e1};
    panels.push_back({mid, p.b, v2, e2});
    total_err += e1 + e2 - p.err;
  }
  double sum = 0.0;
  for (const auto& p : panels) sum += p.value;
  return sum;
}

// Phi_2(rho, eta1, eta2) = Pr[X < Phi^-1(eta1), Y < Phi^-1(eta2)] for a
// standard bivariate normal with correlation rho.
//
// Computed as the integral of phi(x) Phi((h2 - rho x) / sqrt(1 - rho^2)) over
// x in [-10, h1]; the truncated tail carries less than 1e-23 mass.
// |rho| >= 1 - 1e-9 uses the degenerate forms.
inline double phi2(double rho, double eta1, double eta2) {
  detail::require(std::fabs(rho) <= 1.0 + 1e-12,
                  "phi2 correlation " + std::to_string(rho) + " outside [-1,1]");
  detail::require(eta1 >= 0.0 && eta1 <= 1.0 && eta2 >= 0.0 && eta2 <= 1.0,
                  "phi2 thresholds must lie in [0,1]");
  if (eta1 <= 0.0 || eta2 <= 0.0) return 0.0;
  if (eta1 >= 1.0) return eta2;
  if (eta2 >= 1.0) return eta1;
  if (rho >= 1.0 - 1e-9) return std::min(eta1, eta2);
  if (rho <= -1.0 + 1e-9) return std::max(0.0, eta1 + eta2 - 1.0);
  if (rho == 0.0) return eta1 * eta2;
  // Integrate over the smaller marginal; the result is symmetric.
  if (eta1 > eta2) std::swap(eta1, eta2);
  constexpr double kLower = -10.0;
  const double h1 = phi_inv(eta1);
  if (h1 <= kLower) return 0.0;
  const double h2 = phi_inv(eta2);
  const double scale = 1.0 / std::sqrt((1.0 - rho) * (1.0 + rho));
  auto integrand = [&](double x) {
    return phi_pdf(x) * phi_cdf((h2 - rho * x) * scale);
  };
  const double v = integrate(integrand, kLower, h1, 1e-13);
  return std::clamp(v, std::max(0.0, eta1 + eta2 - 1.0), std::min(eta1, eta2));
}

}  // namespace maxcov

#endif  // MAXCOV_NORMAL_HPP_
