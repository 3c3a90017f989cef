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

// Closed-form and semi-analytic evaluators of the connection probability,
// the secrecy outage probability and the secrecy transmission capacity.

#include <cstdint>
#include <optional>

#include "uavsec/estimate.hpp"
#include "uavsec/network.hpp"
#include "uavsec/parallel.hpp"

namespace uavsec::analytic {

using net::GuardZone;
using net::NetworkParams;

// Q1 = lambda_u pi^2 sqrt(beta_e) / 2.
double q1(double lambda_u, double beta_e);

// Connection probability when every link is Rayleigh faded. Exact under that
// model.
double pc_approx(const NetworkParams& p, double beta_t);

// Secrecy outage probability under the Rayleigh approximation, no zone.
// Throws DomainError for beta_e <= 0.
double pso_approx(const NetworkParams& p, double beta_e);

// Same with eavesdroppers restricted to |w_e| >= D. Equals pso_approx at D = 0.
double pso_zone_approx(const NetworkParams& p, double beta_e, GuardZone zone);

// Large-beta_t simplification
// exp[-(pi/2) lambda_u H (sqrt(eta_N/eta_L) pi 2^(R_t/2) - 2H)].
double pc_simplified(const NetworkParams& p, double R_t);

// Transmitter density left by the zone protocol, lambda_u exp(-pi lambda_e D^2).
double effective_density(double lambda_u, double lambda_e, GuardZone zone);

// Secrecy transmission capacity R_s * P_c * density.
double stc(double R_s, double p_c, double density);

struct SemiAnalyticOptions {
  std::uint64_t n_realizations = 200;
  double window_radius = 0.0;  // 0 selects net::window_radius(p)
  std::uint64_t seed = 1;
  int angular_nodes = 64;
  double rel_tol = 1e-6;
  unsigned threads = 0;  // 0 = hardware concurrency
  ProgressFn progress;
};

// Connection probability of the exact LoS/NLoS model given one interferer
// configuration: the NLoS interferers form the hypoexponential rate set and
// the LoS interferers shift its argument.
double pc_exact_given(const net::Realization& real, const NetworkParams& p, double beta_t);

// Probability that an eavesdropper at `at` decodes, given the interferers of
// `real`, under the exact model.
double exceedance_given(const net::Realization& real, net::Point2 at, const NetworkParams& p,
                        double beta_e);

// Integral of exceedance_given over the eavesdropper region {D <= |w| <= R_w}
// by angular trapezoid (offset by `angle_offset` of one node spacing) times
// adaptive radial quadrature. Returns the integral and its estimated error.
struct SpatialIntegral {
  double value = 0.0;
  double error = 0.0;
};
SpatialIntegral exceedance_integral(const net::Realization& real, const NetworkParams& p,
                                    double beta_e, double D, double R_w, int angular_nodes,
                                    double angle_offset, double rel_tol, double abs_tol);

// Outer Monte Carlo over interferer realizations of the exact expressions.
MetricEstimate pc_exact(const NetworkParams& p, double beta_t, const SemiAnalyticOptions& o);

// The half-width includes an estimate of the exceedance mass beyond the
// window. Throws AccuracyError when a radial integral does not converge.
MetricEstimate pso_exact(const NetworkParams& p, double beta_e, std::optional<GuardZone> zone,
                         const SemiAnalyticOptions& o);

}  // namespace uavsec::analytic
