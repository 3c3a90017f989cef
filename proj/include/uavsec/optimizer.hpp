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

// Secrecy transmission capacity maximization: the outage constraint fixes
// R_e, Lambert W gives the codeword and secrecy rates, and grid searches
// pick the altitude and the guard-zone radius.

#include <optional>
#include <vector>

#include "uavsec/network.hpp"

namespace uavsec::opt {

using net::GuardZone;
using net::NetworkParams;

struct OptimizerOptions {
  double re_floor = 1e-6;     // bps/Hz; keeps beta_e > 0
  double re_ceiling = 40.0;   // first bisection bracket
  double re_expanded = 80.0;  // single bracket expansion
  double re_tol = 1e-12;      // final bracket width
  unsigned threads = 0;       // grid cells; 0 = hardware concurrency
};

struct ReSolution {
  double R_e = 0.0;
  bool constraint_active = false;  // false when the floor already satisfies it
  int iterations = 0;
  double outage = 0.0;  // approximate outage at R_e
};

// Smallest R_e >= floor with approximate outage <= epsilon. Throws
// InfeasibleError (carrying the minimum reachable outage) when even the
// expanded bracket cannot reach epsilon.
ReSolution solve_re_detailed(const NetworkParams& p, double epsilon,
                             std::optional<GuardZone> zone, const OptimizerOptions& o = {});
double solve_re(const NetworkParams& p, double epsilon, std::optional<GuardZone> zone,
                const OptimizerOptions& o = {});

// Closed form for D >= K:
// R_e = log2(1 + 4 W^2 / (pi^4 lambda_u^2 (H^2 + D^2)^2)),
// W = W0(pi lambda_e (H^2 + D^2) exp(pi lambda_u H^2) / ln(1 / (1 - epsilon))).
// Throws DomainError when D < K.
double re_closed_zone(const NetworkParams& p, double epsilon, GuardZone zone);

// Maximizer of (R_t - R_e) times the simplified connection probability:
// R_t = R_e + (2 / ln 2) W0(2 * 2^(-R_e / 2) sqrt(eta_L / eta_N) / (pi^2 lambda_u H)).
double rt_star(const NetworkParams& p, double R_e);
double rs_star(const NetworkParams& p, double R_e);

struct RatePair {
  double R_t = 0.0;
  double R_s = 0.0;
};
// Limit of both rates as D grows without bound (R_e -> 0).
RatePair large_zone_limit(const NetworkParams& p);

struct SearchDiagnostics {
  std::size_t h_grid_size = 0;
  std::size_t d_grid_size = 0;
  std::size_t infeasible_cells = 0;
  long total_root_iterations = 0;
  int max_root_iterations = 0;
  // |pc_simplified - pc_approx| at the reported rates; the rates maximize
  // the former while the objective uses the latter.
  double surrogate_gap = 0.0;
};

struct OptimumReport {
  double R_t = 0.0;
  double R_s = 0.0;
  double R_e = 0.0;
  double H = 0.0;
  std::optional<double> D;
  double C_s = 0.0;
  double pso = 0.0;  // approximate outage at the optimum
  double pc = 0.0;   // approximate connection probability at the optimum
  bool constraint_active = false;
  SearchDiagnostics diagnostics;
};

// Evaluates one (H, D) cell; D absent means no zone.
OptimumReport evaluate_design(const NetworkParams& p, double epsilon, double H,
                              std::optional<double> D, const OptimizerOptions& o = {});

OptimumReport optimize_no_zone(const NetworkParams& p, double epsilon,
                               const std::vector<double>& H_grid, const OptimizerOptions& o = {});
OptimumReport optimize_zone(const NetworkParams& p, double epsilon,
                            const std::vector<double>& H_grid, const std::vector<double>& D_grid,
                            const OptimizerOptions& o = {});

// H_min..H_max in 1 m steps (H_max always included).
std::vector<double> default_h_grid(const NetworkParams& p, double step = 1.0);
// 0..D_max in 1 m steps with D_max = 10 / sqrt(pi lambda_e); {0} when
// lambda_e == 0.
double default_d_max(const NetworkParams& p);
std::vector<double> default_d_grid(const NetworkParams& p, double step = 1.0);

}  // namespace uavsec::opt
