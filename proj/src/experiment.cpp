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


#include "uavsec/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <sstream>

#include "uavsec/analytic.hpp"
#include "uavsec/error.hpp"
#include "uavsec/montecarlo.hpp"
#include "uavsec/optimizer.hpp"

namespace uavsec::cli {
namespace {

using net::GuardZone;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void Assign(PointSetup& s, const std::string& variable, const AxisValue& v) {
  if (variable == "D") {
    s.zone = v;
    return;
  }
  const double x = v.number;
  if (variable == "lambda_u") s.network.lambda_u = x;
  else if (variable == "lambda_e") s.network.lambda_e = x;
  else if (variable == "theta_c") s.network.theta_c = x;
  else if (variable == "H") s.network.H = x, s.altitude_pinned = true;
  else if (variable == "eta_L") s.network.eta_L = x;
  else if (variable == "eta_N") s.network.eta_N = x;
  else if (variable == "alpha_L") s.network.alpha_L = x;
  else if (variable == "alpha_N") s.network.alpha_N = x;
  else if (variable == "R_t") s.R_t = x;
  else if (variable == "R_s") s.R_s = x;
  else if (variable == "R_e") s.R_e = x;
  else if (variable == "epsilon") s.epsilon = x;
  else throw ConfigError("cannot sweep '" + variable + "'");
}

std::optional<GuardZone> ZoneOf(const AxisValue& v) {
  if (v.kind == AxisValue::Kind::kNumber) return GuardZone{v.number};
  return std::nullopt;
}

struct Cell {
  double value = kNaN;
  double half_width = kNaN;
};

// Evaluates the requested metrics at one point. Shared work (one simulator
// pass for both fading models, one optimizer run) is done once.
std::map<std::string, Cell> Evaluate(const ExperimentConfig& cfg, const PointSetup& s) {
  std::map<std::string, Cell> out;
  const auto& p = s.network;
  auto wants = [&](std::string_view m) {
    return std::find(cfg.metrics.begin(), cfg.metrics.end(), m) != cfg.metrics.end();
  };
  const auto zone = ZoneOf(s.zone);
  const double beta_t = s.R_t ? net::Beta(*s.R_t) : kNaN;
  const double beta_e = s.R_e ? net::Beta(*s.R_e) : kNaN;

  mc::SimConfig sim;
  sim.n_realizations = cfg.sim.n_realizations;
  sim.window_radius = cfg.sim.window_radius;
  sim.seed = cfg.sim.seed;
  sim.batch_size = cfg.sim.batch_size;
  sim.threads = cfg.sim.threads;

  analytic::SemiAnalyticOptions semi;
  semi.n_realizations = cfg.semi.n_realizations;
  semi.window_radius = cfg.semi.window_radius;
  semi.seed = cfg.semi.seed;
  semi.angular_nodes = cfg.semi.angular_nodes;
  semi.rel_tol = cfg.semi.rel_tol;
  semi.threads = cfg.sim.threads;

  auto put = [&](const char* name, const MetricEstimate& e) {
    out[name] = {e.value, e.method == Method::kClosedForm ? kNaN : e.half_width};
  };
  auto pso_closed = [&] {
    return zone ? analytic::pso_zone_approx(p, beta_e, *zone) : analytic::pso_approx(p, beta_e);
  };

  if (wants("pc_approx")) out["pc_approx"].value = analytic::pc_approx(p, beta_t);
  if (wants("pc_simplified")) out["pc_simplified"].value = analytic::pc_simplified(p, *s.R_t);
  if (wants("pso_approx")) out["pso_approx"].value = pso_closed();
  if (wants("stc_approx")) {
    const double density =
        analytic::effective_density(p.lambda_u, p.lambda_e, zone.value_or(GuardZone{0.0}));
    out["stc_approx"].value = analytic::stc(*s.R_s, analytic::pc_approx(p, beta_t), density);
  }
  if (wants("pc_exact")) put("pc_exact", analytic::pc_exact(p, beta_t, semi));
  if (wants("pso_exact")) put("pso_exact", analytic::pso_exact(p, beta_e, zone, semi));

  const bool mc_exact = wants("pc_mc_exact");
  const bool mc_rayleigh = wants("pc_mc_rayleigh");
  if (mc_exact && mc_rayleigh) {
    const auto both = mc::sim_connection_both(p, beta_t, sim);
    put("pc_mc_exact", both.exact);
    put("pc_mc_rayleigh", both.rayleigh);
  } else if (mc_exact || mc_rayleigh) {
    sim.model = mc_exact ? net::FadingModel::kExactLoSNLoS : net::FadingModel::kAllRayleigh;
    put(mc_exact ? "pc_mc_exact" : "pc_mc_rayleigh", mc::sim_connection(p, beta_t, sim));
    sim.model = net::FadingModel::kExactLoSNLoS;
  }
  if (wants("pso_mc")) put("pso_mc", mc::sim_outage(p, beta_e, zone, sim));

  if (cfg.mode == Mode::kOptimize) {
    opt::OptimizerOptions oo;
    oo.threads = cfg.sim.threads;
    const std::vector<double> h_grid =
        s.altitude_pinned ? std::vector<double>{p.H} : opt::default_h_grid(p);
    opt::OptimumReport r;
    switch (s.zone.kind) {
      case AxisValue::Kind::kNone:
        r = opt::optimize_no_zone(p, s.epsilon, h_grid, oo);
        break;
      case AxisValue::Kind::kOptimize:
        r = opt::optimize_zone(p, s.epsilon, h_grid, opt::default_d_grid(p), oo);
        break;
      case AxisValue::Kind::kNumber:
        r = opt::optimize_zone(p, s.epsilon, h_grid, {s.zone.number}, oo);
        break;
    }
    out["rt_star"].value = r.R_t;
    out["rs_star"].value = r.R_s;
    out["re_star"].value = r.R_e;
    out["cs_star"].value = r.C_s;
    out["h_star"].value = r.H;
    out["d_star"].value = r.D.value_or(kNaN);
    out["pso_star"].value = r.pso;
    out["pc_star"].value = r.pc;
  }
  return out;
}

// Pass rule used by validate mode. The Rayleigh simulator must reproduce
// the closed form within its interval; exact-model estimates get the
// approximation tolerances. Returns nullopt outside the small-outage regime.
std::optional<bool> Agrees(std::string_view metric, const Cell& c, double reference) {
  const double dev = std::abs(c.value - reference);
  if (metric == "pc_mc_exact" || metric == "pc_exact") return dev <= 0.03;
  if (metric == "pso_mc" || metric == "pso_exact") {
    if (c.value > 0.1) return std::nullopt;
    return dev <= 0.02;
  }
  return dev <= c.half_width;
}

std::string Format(double x) {
  if (std::isnan(x)) return "";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

std::string Short(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", x);
  return buf;
}

}  // namespace

PointSetup ResolvePoint(const ExperimentConfig& cfg, const AxisValue& x,
                        const std::optional<AxisValue>& series_value) {
  PointSetup s;
  s.network = cfg.network;
  s.epsilon = cfg.epsilon;
  s.R_t = cfg.code.R_t;
  s.R_s = cfg.code.R_s;
  s.R_e = cfg.code.R_e;
  s.zone = cfg.zone;
  Assign(s, cfg.sweep.variable, x);
  if (series_value) Assign(s, cfg.series.variable, *series_value);

  try {
    s.network.Validate();
  } catch (const DomainError& e) {
    throw ConfigError(std::string("swept network: ") + e.what());
  }
  if (!(s.epsilon > 0 && s.epsilon < 1)) throw ConfigError("epsilon must lie in (0, 1)");
  if (s.zone.kind == AxisValue::Kind::kNumber && !(s.zone.number >= 0)) {
    throw ConfigError("D must be nonnegative");
  }

  if (cfg.code.R_e_reference && !s.R_e) {
    // Outage constraint solved once at the unswept network, so that every
    // point of a density sweep shares the same code.
    s.R_e = opt::solve_re(cfg.network, s.epsilon, ZoneOf(s.zone));
  }
  const int known = !!s.R_t + !!s.R_s + !!s.R_e;
  if (known == 3 && std::abs(*s.R_t - *s.R_s - *s.R_e) > 1e-9 * (1 + *s.R_t)) {
    throw ConfigError("R_t, R_s and R_e are inconsistent (need R_t = R_s + R_e)");
  }
  if (known == 2) {
    if (!s.R_e) s.R_e = *s.R_t - *s.R_s;
    else if (!s.R_s) s.R_s = *s.R_t - *s.R_e;
    else s.R_t = *s.R_s + *s.R_e;
  }
  for (const auto& r : {s.R_t, s.R_s, s.R_e}) {
    if (r && !(*r >= 0)) throw ConfigError("rates must be nonnegative");
  }
  return s;
}

Table Execute(const ExperimentConfig& cfg, std::ostream* log) {
  ValidateConfig(cfg);
  std::vector<std::optional<AxisValue>> series;
  if (cfg.series.present()) {
    for (const auto& v : cfg.series.values) series.emplace_back(v);
  } else {
    series.emplace_back(std::nullopt);
  }
  auto suffix = [&](const std::optional<AxisValue>& v) {
    return v ? "_" + cfg.series.variable + AxisLabel(*v) : std::string();
  };

  Table table;
  table.columns.push_back(cfg.sweep.variable);
  for (const auto& sv : series) {
    for (const auto& name : cfg.metrics) {
      const MetricInfo& m = *FindMetric(name);
      const std::string col = name + suffix(sv);
      table.columns.push_back(col);
      if (m.has_half_width) table.columns.push_back(col + "_hw");
      if (cfg.mode == Mode::kValidate && !m.reference.empty()) table.columns.push_back(col + "_dev");
    }
  }

  for (const auto& x : cfg.sweep.values) {
    std::vector<double> row{x.number};
    std::ostringstream line;
    line << cfg.name << ": " << cfg.sweep.variable << "=" << AxisLabel(x);
    for (const auto& sv : series) {
      const PointSetup setup = ResolvePoint(cfg, x, sv);
      const auto cells = Evaluate(cfg, setup);
      if (sv) line << " |" << suffix(sv).substr(1);
      for (const auto& name : cfg.metrics) {
        const MetricInfo& m = *FindMetric(name);
        const Cell& c = cells.at(name);
        row.push_back(c.value);
        line << ' ' << name << '=' << Short(c.value);
        if (m.has_half_width) {
          row.push_back(c.half_width);
          line << "+-" << Short(c.half_width);
        }
        if (cfg.mode == Mode::kValidate && !m.reference.empty()) {
          const double ref = cells.at(std::string(m.reference)).value;
          row.push_back(std::abs(c.value - ref));
          const auto ok = Agrees(name, c, ref);
          line << (ok ? (*ok ? " [pass]" : " [FAIL]") : " [n/a]");
        }
      }
    }
    table.rows.push_back(std::move(row));
    if (log) *log << line.str() << std::endl;
  }
  return table;
}

void WriteCsv(const Table& table, std::ostream& out) {
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    out << (i ? "," : "") << table.columns[i];
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << Format(row[i]);
    out << '\n';
  }
}

std::filesystem::path ResolveOutputDir(const ExperimentConfig& cfg) {
  if (!cfg.output.directory.empty()) return cfg.output.directory;
  if (const char* env = std::getenv("UAVSEC_OUTPUT_DIR"); env && *env) return env;
  return ".";
}

int run(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err) {
  Table table;
  try {
    table = Execute(cfg, &out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const InfeasibleError& e) {
    err << "infeasible optimization: " << e.what() << " (minimum reachable outage "
        << e.min_outage() << ")\n";
    return kExitInfeasible;
  } catch (const AccuracyError& e) {
    err << "quadrature accuracy failure: " << e.what() << " (best estimate "
        << e.best_estimate() << ", error estimate " << e.error_estimate() << ")\n";
    return kExitAccuracy;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }

  const auto dir = ResolveOutputDir(cfg);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  const auto csv_path = dir / (cfg.name + ".csv");
  std::ofstream csv(csv_path, std::ios::binary);
  if (!csv) {
    err << "error: cannot write " << csv_path.string() << '\n';
    return kExitFailure;
  }
  WriteCsv(table, csv);
  out << "wrote " << csv_path.string() << '\n';
  if (cfg.output.chart) {
    const auto svg_path = dir / (cfg.name + ".svg");
    std::ofstream svg(svg_path, std::ios::binary);
    svg << RenderSvg(table, {cfg.name, cfg.output.log_x, cfg.output.log_y});
    out << "wrote " << svg_path.string() << '\n';
  }
  return kExitOk;
}

int run(const std::filesystem::path& config_path, std::ostream& out, std::ostream& err) {
  ExperimentConfig cfg;
  try {
    cfg = LoadConfig(config_path);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  }
  return run(cfg, out, err);
}

}  // namespace uavsec::cli
