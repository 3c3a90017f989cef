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


#include "uavsec/validate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "uavsec/analytic.hpp"
#include "uavsec/montecarlo.hpp"
#include "uavsec/optimizer.hpp"

namespace uavsec::cli {
namespace {

constexpr double kDensities[] = {1e-4, 3e-4, 1e-3, 3e-3, 1e-2};

mc::SimConfig SimFrom(const ValidationOptions& o) {
  mc::SimConfig sim;
  sim.n_realizations = o.n_realizations;
  sim.seed = o.seed;
  sim.threads = o.threads;
  return sim;
}

net::NetworkParams Corrupted(net::NetworkParams p, const ValidationOptions& o) {
  p.eta_N *= o.eta_ratio_corruption;
  return p;
}

void Finish(ValidationEntry& e) { e.pass = e.points > 0 && e.passed >= e.required; }

// Outage versus the closed form at the default code for zone radius D (the
// code that meets epsilon = 0.01 at the default densities).
ValidationEntry OutageCheck(const ValidationOptions& o, double D) {
  ValidationEntry e;
  char name[64];
  std::snprintf(name, sizeof name, "pso vs lambda_e, D = %g", D);
  e.check = name;
  e.tolerance = 0.02;
  const net::NetworkParams base;
  const std::optional<net::GuardZone> zone =
      D > 0 ? std::optional<net::GuardZone>(net::GuardZone{D}) : std::nullopt;
  const double beta_e = net::Beta(opt::solve_re(base, 0.01, zone));
  for (double le : kDensities) {
    net::NetworkParams p = base;
    p.lambda_e = le;
    const auto est = mc::sim_outage(p, beta_e, zone, SimFrom(o));
    if (est.value > 0.1) continue;
    const auto q = Corrupted(p, o);
    const double approx = zone ? analytic::pso_zone_approx(q, beta_e, *zone)
                               : analytic::pso_approx(q, beta_e);
    const double dev = std::abs(est.value - approx);
    e.max_deviation = std::max(e.max_deviation, dev);
    ++e.points;
    e.passed += dev <= e.tolerance;
  }
  e.required = e.points;
  Finish(e);
  return e;
}

}  // namespace

bool ValidationReport::all_pass() const {
  return std::all_of(entries.begin(), entries.end(), [](const auto& e) { return e.pass; });
}

ValidationReport validate_suite(const ValidationOptions& o) {
  ValidationReport report;
  ValidationEntry rayleigh{"pc Rayleigh model within half-width"};
  ValidationEntry exact{"pc LoS/NLoS model within 0.03"};
  exact.tolerance = 0.03;
  const double beta_t = net::Beta(5.0);
  for (double H : {10.0, 20.0}) {
    for (double lu : kDensities) {
      net::NetworkParams p;
      p.lambda_u = lu;
      p.H = H;
      const auto both = mc::sim_connection_both(p, beta_t, SimFrom(o));
      const double approx = analytic::pc_approx(Corrupted(p, o), beta_t);
      const double dr = std::abs(both.rayleigh.value - approx);
      const double de = std::abs(both.exact.value - approx);
      rayleigh.max_deviation = std::max(rayleigh.max_deviation, dr);
      rayleigh.tolerance = std::max(rayleigh.tolerance, both.rayleigh.half_width);
      ++rayleigh.points;
      rayleigh.passed += dr <= both.rayleigh.half_width;
      exact.max_deviation = std::max(exact.max_deviation, de);
      ++exact.points;
      exact.passed += de <= exact.tolerance;
    }
  }
  // One point in ten may fall outside a 95% interval by chance.
  rayleigh.required = rayleigh.points - 1;
  exact.required = exact.points;
  Finish(rayleigh);
  Finish(exact);
  report.entries.push_back(rayleigh);
  report.entries.push_back(exact);

  if (o.include_outage) {
    for (double D : {0.0, 10.0, 20.0}) report.entries.push_back(OutageCheck(o, D));
  }
  return report;
}

void PrintReport(const ValidationReport& report, std::ostream& out) {
  char line[160];
  std::snprintf(line, sizeof line, "%-38s %10s %10s %8s  %s\n", "check", "max_dev", "tolerance",
                "passed", "result");
  out << line;
  for (const auto& e : report.entries) {
    std::snprintf(line, sizeof line, "%-38s %10.4g %10.4g %4d/%-3d  %s\n", e.check.c_str(),
                  e.max_deviation, e.tolerance, e.passed, e.points, e.pass ? "PASS" : "FAIL");
    out << line;
  }
}

}  // namespace uavsec::cli
