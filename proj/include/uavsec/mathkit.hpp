// Copyright 2026 The uavsec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Numerical kernels shared by the analytic evaluators, the simulator and the
// optimizer. Everything here is a pure function of its arguments.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace uavsec::mathkit {

// Principal branch of the Lambert W function: returns w >= -1 with
// w * exp(w) == x. Throws DomainError for x < -1/e or NaN.
double lambert_w0(double x);

// Rates of independent exponential variables whose sum is of interest.
//
// The rates are stored sorted ascending. Rates closer than 1e-9 (relative)
// are spread apart by distinct multiplicative offsets k * 1e-8 centred on
// the cluster, so that the weights of the alternating-sum CDF stay finite.
// The CDF is continuous in the rates, so the offset moves it by O(1e-8).
class HypoExpRates {
 public:
  HypoExpRates() = default;
  // Throws DomainError if any rate is not strictly positive and finite.
  explicit HypoExpRates(std::vector<double> rates);

  std::span<const double> values() const noexcept { return rates_; }
  std::size_t size() const noexcept { return rates_.size(); }
  bool empty() const noexcept { return rates_.empty(); }
  // True if tie resolution changed at least one rate.
  bool perturbed() const noexcept { return perturbed_; }

 private:
  std::vector<double> rates_;
  bool perturbed_ = false;
};

// P{X_1 + ... + X_n < y} for independent X_i ~ Exp(rate_i), evaluated from
// the alternating sum of exponentials with weights
//   delta_i = prod_{j != i} rate_j / (rate_j - rate_i).
// Terms that cannot affect the result are pruned with a rigorous bound, and
// the sum is redone in extended precision when cancellation would cost more
// than a few digits. Result clamped to [0, 1].
//
// Throws DegenerateSumError for an empty rate set, DomainError for y < 0.
double hypoexp_cdf(const HypoExpRates& rates, double y);

struct RootResult {
  double x = 0.0;
  int iterations = 0;
};

// Root of a monotone function bracketed by [lo, hi]; the final bracket is no
// wider than tol. Throws BracketError when f(lo) and f(hi) share a sign.
double bisect_root(const std::function<double(double)>& f, double lo,
                   double hi, double tol);
RootResult bisect_root_counted(const std::function<double(double)>& f,
                               double lo, double hi, double tol);

struct QuadratureOptions {
  double rel_tol = 1e-10;
  // Absolute floor: convergence is declared when the error estimate is below
  // max(abs_tol, rel_tol * |estimate|).
  double abs_tol = 0.0;
  int max_subdivisions = 4000;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  int evaluations = 0;
};

// Globally adaptive 7/15-point Gauss-Kronrod quadrature of f over [a, b).
// b may be +infinity, in which case r = a + t / (1 - t) maps [0, 1) onto
// [a, inf). Breakpoints inside (a, b) start new panels so that jumps and
// kinks of the integrand never sit inside a panel.
//
// Throws AccuracyError (carrying the best estimate) when the subdivision
// budget runs out before the tolerance is met.
QuadratureResult integrate_radial(const std::function<double(double)>& f,
                                  double a, double b,
                                  std::span<const double> breakpoints,
                                  const QuadratureOptions& options);

double integrate_radial(const std::function<double(double)>& f, double a,
                        double b, double tol);

}  // namespace uavsec::mathkit
