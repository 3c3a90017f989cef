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

#include "uavsec/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "uavsec/analytic.hpp"
#include "uavsec/error.hpp"
#include "uavsec/mathkit.hpp"
#include "uavsec/parallel.hpp"

namespace uavsec::opt {

namespace {

constexpr double kPi = std::numbers::pi;

double Outage(const NetworkParams& p, double R_e, std::optional<GuardZone> zone) {
  const double beta_e = net::Beta(R_e);
  return zone ? analytic::pso_zone_approx(p, beta_e, *zone) : analytic::pso_approx(p, beta_e);
}

}  // namespace

ReSolution solve_re_detailed(const NetworkParams& p, double epsilon,
                             std::optional<GuardZone> zone, const OptimizerOptions& o) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw DomainError("solve_re: epsilon must be in (0, 1)");
  ReSolution out;
  const double at_floor = Outage(p, o.re_floor, zone);
  if (at_floor <= epsilon) {
    out.R_e = o.re_floor;
    out.outage = at_floor;
    return out;
  }
  double hi = o.re_ceiling;
  double at_hi = Outage(p, hi, zone);
  if (at_hi > epsilon) {
    hi = o.re_expanded;
    at_hi = Outage(p, hi, zone);
    if (at_hi > epsilon) {
      throw InfeasibleError("outage target " + std::to_string(epsilon) +
                                " unreachable; minimum outage " + std::to_string(at_hi),
                            at_hi);
    }
  }
  const auto g = [&](double r) { return Outage(p, r, zone) - epsilon; };
  const mathkit::RootResult root = mathkit::bisect_root_counted(g, o.re_floor, hi, o.re_tol);
  out.R_e = root.x;
  out.iterations = root.iterations;
  out.constraint_active = true;
  out.outage = Outage(p, root.x, zone);
  return out;
}

double solve_re(const NetworkParams& p, double epsilon, std::optional<GuardZone> zone,
                const OptimizerOptions& o) {
  return solve_re_detailed(p, epsilon, zone, o).R_e;
}

double re_closed_zone(const NetworkParams& p, double epsilon, GuardZone zone) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw DomainError("re_closed_zone: epsilon must be in (0, 1)");
  }
  if (zone.D < p.K()) throw DomainError("re_closed_zone: requires D >= K");
  const double S2 = p.H * p.H + zone.D * zone.D;
  const double arg = kPi * p.lambda_e * S2 * std::exp(kPi * p.lambda_u * p.H * p.H) /
                     -std::log1p(-epsilon);
  double w = 0.0;
  try {
    w = mathkit::lambert_w0(arg);
  } catch (const DomainError& e) {
    throw InfeasibleError(std::string("re_closed_zone: ") + e.what(), 1.0);
  }
  const double denom = kPi * kPi * p.lambda_u * S2;
  return std::log2(1.0 + 4.0 * w * w / (denom * denom));
}

double rs_star(const NetworkParams& p, double R_e) {
  if (R_e < 0.0) throw DomainError("rs_star: R_e must be >= 0");
  const double arg = 2.0 * std::exp2(-R_e / 2.0) / (p.GainRatioRoot() * kPi * kPi * p.lambda_u * p.H);
  return 2.0 / std::numbers::ln2 * mathkit::lambert_w0(arg);
}

double rt_star(const NetworkParams& p, double R_e) { return R_e + rs_star(p, R_e); }

RatePair large_zone_limit(const NetworkParams& p) {
  const double r = rs_star(p, 0.0);
  return {r, r};
}

OptimumReport evaluate_design(const NetworkParams& base, double epsilon, double H,
                              std::optional<double> D, const OptimizerOptions& o) {
  const NetworkParams p = base.WithAltitude(H);
  std::optional<GuardZone> zone;
  if (D) zone = GuardZone{*D};
  const ReSolution re = solve_re_detailed(p, epsilon, zone, o);
  OptimumReport r;
  r.H = H;
  r.D = D;
  r.R_e = re.R_e;
  r.R_s = rs_star(p, re.R_e);
  r.R_t = r.R_e + r.R_s;
  r.pso = re.outage;
  r.constraint_active = re.constraint_active;
  r.pc = analytic::pc_approx(p, net::Beta(r.R_t));
  const double density = zone ? analytic::effective_density(p.lambda_u, p.lambda_e, *zone)
                              : p.lambda_u;
  r.C_s = analytic::stc(r.R_s, r.pc, density);
  r.diagnostics.total_root_iterations = re.iterations;
  r.diagnostics.max_root_iterations = re.iterations;
  r.diagnostics.surrogate_gap = std::abs(analytic::pc_simplified(p, r.R_t) - r.pc);
  return r;
}

namespace {

struct Cell {
  OptimumReport report;
  bool feasible = false;
  double min_outage = 1.0;
};

OptimumReport GridSearch(const NetworkParams& p, double epsilon, const std::vector<double>& H_grid,
                         const std::vector<std::optional<double>>& D_grid,
                         const OptimizerOptions& o) {
  if (H_grid.empty() || D_grid.empty()) throw DomainError("optimizer: grids must be nonempty");
  for (double h : H_grid) {
    if (h < p.H_min || h > p.H_max) throw DomainError("optimizer: H grid outside [H_min, H_max]");
  }
  const std::size_t nd = D_grid.size();
  std::vector<Cell> cells(H_grid.size() * nd);
  ParallelFor(cells.size(), o.threads, 16, [&](std::size_t i) {
    Cell& c = cells[i];
    try {
      c.report = evaluate_design(p, epsilon, H_grid[i / nd], D_grid[i % nd], o);
      c.feasible = true;
    } catch (const InfeasibleError& e) {
      c.min_outage = e.min_outage();
    }
  });

  // Row-major scan with a strict comparison: ties keep the lowest H, then
  // the lowest D.
  const Cell* best = nullptr;
  SearchDiagnostics diag;
  diag.h_grid_size = H_grid.size();
  diag.d_grid_size = D_grid.front() ? nd : 0;
  double min_outage = 1.0;
  for (const Cell& c : cells) {
    if (!c.feasible) {
      ++diag.infeasible_cells;
      min_outage = std::min(min_outage, c.min_outage);
      continue;
    }
    diag.total_root_iterations += c.report.diagnostics.total_root_iterations;
    diag.max_root_iterations =
        std::max(diag.max_root_iterations, c.report.diagnostics.max_root_iterations);
    if (!best || c.report.C_s > best->report.C_s) best = &c;
  }
  if (!best) {
    throw InfeasibleError("outage target " + std::to_string(epsilon) +
                              " unreachable on the whole grid; minimum outage " +
                              std::to_string(min_outage),
                          min_outage);
  }
  OptimumReport out = best->report;
  diag.surrogate_gap = out.diagnostics.surrogate_gap;
  out.diagnostics = diag;
  return out;
}

}  // namespace

OptimumReport optimize_no_zone(const NetworkParams& p, double epsilon,
                               const std::vector<double>& H_grid, const OptimizerOptions& o) {
  return GridSearch(p, epsilon, H_grid, {std::nullopt}, o);
}

OptimumReport optimize_zone(const NetworkParams& p, double epsilon,
                            const std::vector<double>& H_grid, const std::vector<double>& D_grid,
                            const OptimizerOptions& o) {
  std::vector<std::optional<double>> ds;
  ds.reserve(D_grid.size());
  for (double d : D_grid) {
    if (!(d >= 0.0)) throw DomainError("optimizer: D grid must be >= 0");
    ds.emplace_back(d);
  }
  return GridSearch(p, epsilon, H_grid, ds, o);
}

namespace {

std::vector<double> Range(double lo, double hi, double step) {
  if (!(step > 0.0)) throw DomainError("grid step must be > 0");
  std::vector<double> out;
  const auto n = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9));
  for (std::size_t i = 0; i <= n; ++i) out.push_back(lo + step * static_cast<double>(i));
  if (out.back() < hi - 1e-9 * std::max(1.0, hi)) out.push_back(hi);
  return out;
}

}  // namespace

std::vector<double> default_h_grid(const NetworkParams& p, double step) {
  return Range(p.H_min, p.H_max, step);
}

double default_d_max(const NetworkParams& p) {
  if (p.lambda_e <= 0.0) return 0.0;
  return 10.0 / std::sqrt(kPi * p.lambda_e);
}

std::vector<double> default_d_grid(const NetworkParams& p, double step) {
  if (p.lambda_e <= 0.0) return {0.0};
  return Range(0.0, default_d_max(p), step);
}

}  // namespace uavsec::opt
