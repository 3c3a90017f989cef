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


// Acceptance suite: one PASS/FAIL line per criterion, each with the observed
// quantities and its runtime. The exit status is nonzero only when a check
// could not run, or with --strict when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "uavsec/analytic.hpp"
#include "uavsec/mathkit.hpp"
#include "uavsec/montecarlo.hpp"
#include "uavsec/optimizer.hpp"

using namespace uavsec;
using net::GuardZone;
using net::NetworkParams;

namespace {

constexpr double kDensities[] = {1e-4, 3e-4, 1e-3, 3e-3, 1e-2};
constexpr double kEpsilon = 0.01;

struct Outcome {
  bool pass = false;
  std::string summary;
};

std::string Fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

std::optional<GuardZone> Zone(double D) {
  return D > 0 ? std::optional<GuardZone>(GuardZone{D}) : std::nullopt;
}

// Connection sweep shared by criteria 1 and 2.
struct ConnectionPoint {
  double H, lambda_u, approx;
  mc::ConnectionPair mc;
};
std::vector<ConnectionPoint> ConnectionSweep() {
  static std::vector<ConnectionPoint> points;
  if (!points.empty()) return points;
  const double beta_t = net::Beta(5);
  for (double H : {10.0, 20.0}) {
    for (double lu : kDensities) {
      NetworkParams p;
      p.H = H;
      p.lambda_u = lu;
      mc::SimConfig cfg;
      cfg.n_realizations = 100000;
      points.push_back({H, lu, analytic::pc_approx(p, beta_t), mc::sim_connection_both(p, beta_t, cfg)});
    }
  }
  return points;
}

Outcome Criterion1() {
  int inside = 0;
  double worst = 0;
  for (const auto& pt : ConnectionSweep()) {
    const double dev = std::abs(pt.mc.rayleigh.value - pt.approx);
    inside += dev <= pt.mc.rayleigh.half_width;
    worst = std::max(worst, dev / pt.mc.rayleigh.half_width);
    std::printf("    H=%-3g lambda_u=%-7g approx=%.5f rayleigh=%.5f +- %.5f\n", pt.H, pt.lambda_u,
                pt.approx, pt.mc.rayleigh.value, pt.mc.rayleigh.half_width);
  }
  return {inside >= 9, Fmt("%d/10 points within the 95%% half-width (need 9); worst |dev|/hw = %.2f",
                           inside, worst)};
}

Outcome Criterion2() {
  double worst = 0;
  for (const auto& pt : ConnectionSweep()) {
    worst = std::max(worst, std::abs(pt.mc.exact.value - pt.approx));
    std::printf("    H=%-3g lambda_u=%-7g approx=%.5f exact=%.5f +- %.5f\n", pt.H, pt.lambda_u,
                pt.approx, pt.mc.exact.value, pt.mc.exact.half_width);
  }
  return {worst <= 0.03,
          Fmt("max |MC - approx| = %.4f (tolerance 0.03); reuses the runs of criterion 1", worst)};
}

// Outage sweep over lambda_e at the code meeting epsilon at the defaults.
Outcome OutageSweep(double D, double& worst, int& checked) {
  const NetworkParams base;
  const double re = opt::solve_re(base, kEpsilon, Zone(D));
  const double beta_e = net::Beta(re);
  bool ok = true;
  for (double le : kDensities) {
    NetworkParams p = base;
    p.lambda_e = le;
    mc::SimConfig cfg;
    cfg.n_realizations = 100000;
    const auto est = mc::sim_outage(p, beta_e, Zone(D), cfg);
    const double approx =
        D > 0 ? analytic::pso_zone_approx(p, beta_e, {D}) : analytic::pso_approx(p, beta_e);
    const double dev = std::abs(est.value - approx);
    const bool in_regime = est.value <= 0.1;
    if (in_regime) {
      ++checked;
      worst = std::max(worst, dev);
      ok = ok && dev <= 0.02;
    }
    std::printf("    D=%-3g R_e=%.4f lambda_e=%-7g approx=%.5f mc=%.5f +- %.5f |dev|=%.4f%s\n", D,
                re, le, approx, est.value, est.half_width, dev,
                in_regime ? (dev <= 0.02 ? "" : "  <-- exceeds 0.02") : "  (outside regime)");
  }
  return {ok, ""};
}

Outcome Criterion3() {
  double worst = 0;
  int checked = 0;
  const bool ok = OutageSweep(0.0, worst, checked).pass;
  return {ok && checked > 0,
          Fmt("%d points with MC <= 0.1; max |MC - approx| = %.4f (tolerance 0.02)", checked, worst)};
}

Outcome Criterion4() {
  double worst = 0;
  int checked = 0;
  bool ok = true;
  for (double D : {10.0, 20.0}) ok = OutageSweep(D, worst, checked).pass && ok;
  // Branch continuity at D = K on the same setup: every lambda_e, with the
  // codes of the three figure curves.
  const NetworkParams base;
  const double K = base.K();
  double jump = 0;
  for (double D : {0.0, 10.0, 20.0}) {
    const double beta_e = net::Beta(opt::solve_re(base, kEpsilon, Zone(D)));
    for (double le : kDensities) {
      NetworkParams p = base;
      p.lambda_e = le;
      jump = std::max(jump, std::abs(analytic::pso_zone_approx(p, beta_e, {K}) -
                                     analytic::pso_zone_approx(p, beta_e, {std::nextafter(K, 0.0)})));
    }
  }
  // Diagnostic only: random draws far from the setup. When pi lambda_u H^2 is
  // large the LoS integrand exceeds 1 and the slope at D = K becomes huge.
  int steep = 0;
  std::mt19937_64 g(4);
  std::uniform_real_distribution<double> u(0, 1);
  for (int i = 0; i < 50; ++i) {
    NetworkParams p;
    p.lambda_u = std::pow(10, -4 + 2 * u(g));
    p.lambda_e = std::pow(10, -4 + 2 * u(g));
    p.H = 10 + 90 * u(g);
    p.theta_c = std::numbers::pi * (0.1 + 0.35 * u(g));
    const double beta_e = net::Beta(1 + 20 * u(g));
    const double k = p.K();
    steep += std::abs(analytic::pso_zone_approx(p, beta_e, {k}) -
                      analytic::pso_zone_approx(p, beta_e, {std::nextafter(k, 0.0)})) > 1e-9;
  }
  return {ok && checked > 0 && jump <= 1e-9,
          Fmt("%d points with MC <= 0.1; max |MC - approx| = %.4f (tolerance 0.02); "
              "max branch jump at D = K = %.2e over 15 setup points (<= 1e-9); "
              "diagnostic: %d of 50 random far-field draws jump by > 1e-9",
              checked, worst, jump, steep)};
}

Outcome Criterion5() {
  struct Spot {
    const char* label;
    double lambda_u, lambda_e, H, R_t, R_e, D;
  };
  const Spot spots[] = {
      {"defaults, D=10", 1e-3, 1e-3, 10, 5, 3.0, 10},
      {"dense UAVs, H=20, D=25", 3e-3, 3e-3, 20, 4, 0.2, 25},
      {"dense eavesdroppers, no zone", 1e-3, 1e-2, 10, 6, 12.0, 0},
  };
  bool ok = true;
  for (const auto& s : spots) {
    NetworkParams p;
    p.lambda_u = s.lambda_u;
    p.lambda_e = s.lambda_e;
    p.H = s.H;
    analytic::SemiAnalyticOptions so;
    so.n_realizations = 200;
    so.window_radius = 200;
    mc::SimConfig cfg;
    cfg.n_realizations = 100000;
    const auto pc = analytic::pc_exact(p, net::Beta(s.R_t), so);
    const auto pc_mc = mc::sim_connection(p, net::Beta(s.R_t), cfg);
    const auto ps = analytic::pso_exact(p, net::Beta(s.R_e), Zone(s.D), so);
    const auto ps_mc = mc::sim_outage(p, net::Beta(s.R_e), Zone(s.D), cfg);
    const bool pc_ok = std::abs(pc.value - pc_mc.value) <= pc.half_width + pc_mc.half_width;
    const bool ps_ok = std::abs(ps.value - ps_mc.value) <= ps.half_width + ps_mc.half_width;
    ok = ok && pc_ok && ps_ok;
    std::printf("    %-30s pc_exact=%.4f+-%.4f mc=%.4f+-%.4f %s | pso_exact=%.4f+-%.4f mc=%.4f+-%.4f %s\n",
                s.label, pc.value, pc.half_width, pc_mc.value, pc_mc.half_width,
                pc_ok ? "ok" : "MISMATCH", ps.value, ps.half_width, ps_mc.value, ps_mc.half_width,
                ps_ok ? "ok" : "MISMATCH");
  }
  return {ok, "3 spot configurations, both evaluators within combined 95% intervals"};
}

Outcome Criterion6() {
  std::mt19937_64 g(2026);
  std::uniform_real_distribution<double> u(0, 1);
  double worst = 0;
  int sets = 0, drawn = 0;
  while (sets < 20) {
    ++drawn;
    NetworkParams p;
    p.lambda_u = std::pow(10, -4 + 2 * u(g));
    p.lambda_e = std::pow(10, -4 + 2 * u(g));
    p.H_max = 200;
    p.H = 10 + 90 * u(g);
    p.theta_c = std::numbers::pi * (0.15 + 0.3 * u(g));
    const double beta_t = net::Beta(1 + 9 * u(g));
    const double beta_e = net::Beta(1 + 24 * u(g));
    const double D = 2 * p.K() * u(g);
    const double v[3] = {analytic::pc_approx(p, beta_t), analytic::pso_approx(p, beta_e),
                         analytic::pso_zone_approx(p, beta_e, {D})};
    // Saturated draws (0 or 1 to working precision) carry no information.
    if (!std::all_of(v, v + 3, [](double x) { return x > 1e-12 && x < 1 - 1e-9; })) continue;
    const double w[3] = {oracle::PcRadial(p, beta_t), oracle::PsoRadial(p, beta_e, 0),
                         oracle::PsoRadial(p, beta_e, D)};
    for (int k = 0; k < 3; ++k) worst = std::max(worst, std::abs(v[k] / w[k] - 1));
    ++sets;
  }
  return {worst <= 1e-6, Fmt("20 parameter sets (%d drawn), max relative error %.2e over Pc, Pso, "
                             "zone Pso (tolerance 1e-6)",
                             drawn, worst)};
}

Outcome Criterion7() {
  std::mt19937_64 g(7);
  std::uniform_real_distribution<double> u(0, 1);
  auto random_network = [&] {
    NetworkParams p;
    p.lambda_u = std::pow(10, -4 + 2 * u(g));
    p.lambda_e = std::pow(10, -4 + 2 * u(g));
    p.H = 10 + 40 * u(g);
    return p;
  };
  double rt_gap = 0, re_gap = 0, equality_gap = 0;
  int active = 0;
  for (int i = 0; i < 20; ++i) {
    const auto p = random_network();
    const double re = 20 * u(g);
    const double rt = opt::rt_star(p, re);
    double best = -1, arg = re;
    for (double t = re; t < re + 40; t += 1e-3) {
      const double v = (t - re) * analytic::pc_simplified(p, t);
      if (v > best) best = v, arg = t;
    }
    rt_gap = std::max(rt_gap, std::abs(rt - arg));
  }
  for (int i = 0; i < 20; ++i) {
    const auto p = random_network();
    const double D = p.K() * (1 + 3 * u(g));
    const double eps = 0.001 + 0.1 * u(g);
    const auto s = opt::solve_re_detailed(p, eps, GuardZone{D});
    re_gap = std::max(re_gap, std::abs(opt::re_closed_zone(p, eps, {D}) - s.R_e));
    for (auto zone : {std::optional<GuardZone>(GuardZone{D}), std::optional<GuardZone>()}) {
      const auto r = opt::solve_re_detailed(p, eps, zone);
      if (!r.constraint_active) continue;
      ++active;
      const double b = net::Beta(r.R_e);
      const double v = zone ? analytic::pso_zone_approx(p, b, *zone) : analytic::pso_approx(p, b);
      equality_gap = std::max(equality_gap, std::abs(v - eps));
    }
  }
  const bool ok = rt_gap <= 1e-3 && re_gap <= 1e-6 && equality_gap <= 1e-6 && active > 0;
  return {ok, Fmt("max |Rt* - grid argmax| = %.2e (<= 1e-3); max |closed - bisection R_e| = %.2e "
                  "(<= 1e-6); max |Pso(R_e*) - eps| = %.2e over %d active cases (<= 1e-6)",
                  rt_gap, re_gap, equality_gap, active)};
}

bool NonIncreasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i] > v[i - 1] * (1 + 1e-12)) return false;
  }
  return true;
}
bool NonDecreasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i] < v[i - 1] * (1 - 1e-12)) return false;
  }
  return true;
}
std::string Join(const std::vector<double>& v) {
  std::string s;
  for (double x : v) s += (s.empty() ? "" : ", ") + Fmt("%.4g", x);
  return "[" + s + "]";
}

Outcome Criterion8() {
  std::vector<std::string> failures;
  bool zone_dominates = true;
  for (const char* var : {"lambda_e", "lambda_u"}) {
    std::vector<double> cs_plain, cs_zone, d_star;
    for (double v : kDensities) {
      NetworkParams p;
      (std::strcmp(var, "lambda_e") == 0 ? p.lambda_e : p.lambda_u) = v;
      const auto h = opt::default_h_grid(p);
      const auto plain = opt::optimize_no_zone(p, kEpsilon, h);
      const auto zone = opt::optimize_zone(p, kEpsilon, h, opt::default_d_grid(p));
      cs_plain.push_back(plain.C_s);
      cs_zone.push_back(zone.C_s);
      d_star.push_back(*zone.D);
      zone_dominates = zone_dominates && zone.C_s >= plain.C_s;
    }
    std::printf("    vs %s: Cs* no zone %s\n", var, Join(cs_plain).c_str());
    std::printf("    vs %s: Cs* zone    %s\n", var, Join(cs_zone).c_str());
    std::printf("    vs %s: D*          %s\n", var, Join(d_star).c_str());
    const bool is_e = std::strcmp(var, "lambda_e") == 0;
    if (is_e && !(NonIncreasing(cs_plain) && NonIncreasing(cs_zone))) {
      failures.push_back("Cs* not nonincreasing in lambda_e");
    }
    if (!is_e && !(NonDecreasing(cs_plain) && NonDecreasing(cs_zone))) {
      failures.push_back("Cs* not nondecreasing in lambda_u");
    }
    if (!NonIncreasing(d_star)) failures.push_back(std::string("D* not nonincreasing in ") + var);
  }
  if (!zone_dominates) failures.push_back("zone optimum below no-zone optimum");
  NetworkParams p;
  const auto h = opt::default_h_grid(p);
  const double h_plain = opt::optimize_no_zone(p, kEpsilon, h).H;
  const double h_zone = opt::optimize_zone(p, kEpsilon, h, opt::default_d_grid(p)).H;
  if (h_plain != p.H_min || h_zone != p.H_min) failures.push_back("H* != H_min at defaults");
  std::string summary = Fmt("H* = %g (no zone), %g (zone); ", h_plain, h_zone);
  if (failures.empty()) {
    summary += "all trends hold";
  } else {
    for (std::size_t k = 0; k < failures.size(); ++k) summary += (k ? "; " : "") + failures[k];
  }
  return {failures.empty(), summary};
}

Outcome Criterion9() {
  NetworkParams p;
  const double d_max = opt::default_d_max(p);
  std::vector<double> rs, rt;
  for (double D = 0; D <= d_max; D += 1) {
    const double re = opt::solve_re(p, kEpsilon, GuardZone{D});
    rs.push_back(opt::rs_star(p, re));
    rt.push_back(opt::rt_star(p, re));
  }
  // Unimodal valley: nonincreasing, then nondecreasing.
  std::size_t i = 0;
  while (i + 1 < rt.size() && rt[i + 1] <= rt[i]) ++i;
  const std::size_t turn = i;
  while (i + 1 < rt.size() && rt[i + 1] >= rt[i]) ++i;
  const bool valley = i + 1 == rt.size();
  const auto lim = opt::large_zone_limit(p);
  const double re_end = opt::solve_re(p, kEpsilon, GuardZone{d_max});
  const double rt_err = std::abs(opt::rt_star(p, re_end) - lim.R_t);
  const double rs_err = std::abs(opt::rs_star(p, re_end) - lim.R_s);
  const double cs_end = opt::evaluate_design(p, kEpsilon, p.H_min, d_max).C_s;
  const bool ok = NonDecreasing(rs) && valley && rt_err <= 1e-2 && rs_err <= 1e-2 && cs_end < 1e-9;
  return {ok, Fmt("Rs*(D) nondecreasing: %s; Rt*(D) valley-unimodal: %s (turns at index %zu of %zu); "
                  "|Rt - limit| = %.2e, |Rs - limit| = %.2e at D_max = %.1f; Cs*(D_max) = %.2e",
                  NonDecreasing(rs) ? "yes" : "no", valley ? "yes" : "no", turn, rt.size(),
                  rt_err, rs_err, d_max, cs_end)};
}

Outcome Criterion10() {
  std::mt19937_64 g(10);
  std::uniform_real_distribution<double> u(0, 1);
  double worst_z = 0;
  for (int c = 0; c < 10; ++c) {
    const int n = 1 + c % 4;
    std::vector<double> rates;
    for (int k = 0; k < n; ++k) rates.push_back(std::pow(10, -1 + 2 * u(g)));
    if (c == 9) rates.assign(4, 1.3);  // repeated rates
    double mean = 0;
    for (double r : rates) mean += 1 / r;
    const double y = mean * (0.3 + 1.4 * u(g));
    const double p = mathkit::hypoexp_cdf(mathkit::HypoExpRates(rates), y);
    const long samples = 10000000;
    long hits = 0;
    std::vector<std::exponential_distribution<double>> ex;
    for (double r : rates) ex.emplace_back(r);
    for (long s = 0; s < samples; ++s) {
      double sum = 0;
      for (auto& e : ex) sum += e(g);
      hits += sum < y;
    }
    const double se = std::sqrt(p * (1 - p) / samples);
    worst_z = std::max(worst_z, std::abs(double(hits) / samples - p) / se);
  }
  double worst_res = 0;
  for (int i = 0; i < 1000; ++i) {
    // Log-spaced magnitudes from 1e-12 to 1e12, plus the negative branch.
    double x = i % 4 == 0 ? -std::exp(-1.0) * u(g) : std::pow(10, -12 + 24 * u(g));
    if (x == 0) x = 1e-300;
    const double w = mathkit::lambert_w0(x);
    worst_res = std::max(worst_res, std::abs(w * std::exp(w) - x) / std::abs(x));
  }
  return {worst_z <= 3 && worst_res <= 1e-10,
          Fmt("hypoexp: worst |MC - cdf| = %.2f standard errors over 10 cases (<= 3); "
              "lambert_w0: worst relative residual %.2e over 1000 points (<= 1e-10)",
              worst_z, worst_res)};
}

}  // namespace

int main(int argc, char** argv) {
  // Arguments: optional --strict, then optional criterion numbers to run.
  bool strict = false;
  std::vector<int> only;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--strict") == 0) strict = true;
    else only.push_back(std::atoi(argv[i]));
  }
  struct Entry {
    int id;
    const char* title;
    double budget_s;
    std::function<Outcome()> run;
  };
  const std::vector<Entry> entries = {
      {1, "Rayleigh-model exactness (Pc)", 120, Criterion1},
      {2, "LoS/NLoS approximation quality (Pc)", 120, Criterion2},
      {3, "outage approximation regime", 300, Criterion3},
      {4, "zone outage and branch continuity", 300, Criterion4},
      {5, "semi-analytic evaluators vs simulator", 600, Criterion5},
      {6, "closed forms vs radial integrals", 60, Criterion6},
      {7, "optimizer correctness", 60, Criterion7},
      {8, "qualitative trends", 300, Criterion8},
      {9, "large-zone rate properties", 60, Criterion9},
      {10, "kernel oracles", 60, Criterion10},
  };
  std::vector<std::string> lines;
  int failed = 0, errors = 0;
  int ran = 0;
  for (const auto& e : entries) {
    if (!only.empty() && std::find(only.begin(), only.end(), e.id) == only.end()) continue;
    ++ran;
    std::printf("[criterion %d] %s\n", e.id, e.title);
    std::fflush(stdout);
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = e.run();
    } catch (const std::exception& ex) {
      o = {false, std::string("error: ") + ex.what()};
      ++errors;
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failed += !o.pass;
    lines.push_back(Fmt("criterion %2d %s  %s  [%.1f s, budget %.0f s]", e.id, o.pass ? "PASS" : "FAIL",
                        o.summary.c_str(), secs, e.budget_s));
    std::printf("  %s\n", lines.back().c_str());
    std::fflush(stdout);
  }
  std::printf("\n==== acceptance summary ====\n");
  for (const auto& l : lines) std::printf("%s\n", l.c_str());
  std::printf("%d of %d criteria passed\n", ran - failed, ran);
  if (errors > 0) return 2;
  return strict && failed > 0 ? 1 : 0;
}
