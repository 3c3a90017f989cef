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


#include "uavsec/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

#include "uavsec/error.hpp"

namespace uavsec::cli {
namespace {

constexpr double kDegree = std::numbers::pi / 180.0;

std::string_view Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> SplitList(std::string_view s) {
  std::vector<std::string_view> out;
  while (true) {
    const auto comma = s.find(',');
    const auto item = Trim(s.substr(0, comma));
    if (!item.empty()) out.push_back(item);
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return out;
}

std::string Shortest(double x) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

[[noreturn]] void Fail(const std::string& where, const std::string& what) {
  throw ConfigError(where + ": " + what);
}

double ParseNumber(std::string_view text, const std::string& where, bool angle = false) {
  text = Trim(text);
  double scale = 1.0;
  if (angle && text.size() > 3 && text.substr(text.size() - 3) == "deg") {
    text = Trim(text.substr(0, text.size() - 3));
    scale = kDegree;
  }
  double x = 0.0;
  const auto r = std::from_chars(text.data(), text.data() + text.size(), x);
  if (r.ec != std::errc() || r.ptr != text.data() + text.size() || !std::isfinite(x)) {
    Fail(where, "expected a number, got '" + std::string(text) + "'");
  }
  return x * scale;
}

std::uint64_t ParseCount(std::string_view text, const std::string& where) {
  text = Trim(text);
  const double x = ParseNumber(text, where);
  if (x < 0 || x != std::floor(x) || x > 1e18) Fail(where, "expected a nonnegative integer");
  return static_cast<std::uint64_t>(x);
}

bool ParseBool(std::string_view text, const std::string& where) {
  text = Trim(text);
  if (text == "true" || text == "yes" || text == "on" || text == "1") return true;
  if (text == "false" || text == "no" || text == "off" || text == "0") return false;
  Fail(where, "expected true or false, got '" + std::string(text) + "'");
}

bool IsAngle(std::string_view variable) { return variable == "theta_c"; }

AxisValue ParseAxisValue(std::string_view text, std::string_view variable,
                         const std::string& where) {
  text = Trim(text);
  if (variable == "D") {
    if (text == "none") return AxisValue::None();
    if (text == "optimize") return AxisValue::Optimize();
  }
  return AxisValue::Number(ParseNumber(text, where, IsAngle(variable)));
}

std::string AxisText(const AxisValue& v) {
  switch (v.kind) {
    case AxisValue::Kind::kNone:
      return "none";
    case AxisValue::Kind::kOptimize:
      return "optimize";
    case AxisValue::Kind::kNumber:
      break;
  }
  return Shortest(v.number);
}

double* NetworkField(net::NetworkParams& p, std::string_view key) {
  if (key == "lambda_u") return &p.lambda_u;
  if (key == "lambda_e") return &p.lambda_e;
  if (key == "theta_c") return &p.theta_c;
  if (key == "H") return &p.H;
  if (key == "H_min") return &p.H_min;
  if (key == "H_max") return &p.H_max;
  if (key == "eta_L") return &p.eta_L;
  if (key == "eta_N") return &p.eta_N;
  if (key == "alpha_L") return &p.alpha_L;
  if (key == "alpha_N") return &p.alpha_N;
  if (key == "P_t") return &p.P_t;
  return nullptr;
}

constexpr std::string_view kNetworkKeys[] = {"lambda_u", "lambda_e", "theta_c", "H",
                                             "H_min",    "H_max",    "eta_L",   "eta_N",
                                             "alpha_L",  "alpha_N",  "P_t"};

// Raw axis text, expanded once the section is complete.
struct AxisDraft {
  std::string variable;
  std::optional<std::string> values, start, stop, step, scale;
};

Axis ExpandAxis(const AxisDraft& d, const std::string& section) {
  Axis axis;
  axis.variable = d.variable;
  const bool ranged = d.start || d.stop || d.step;
  if (d.variable.empty()) {
    if (d.values || ranged) Fail(section, "missing 'variable'");
    return axis;
  }
  if (d.values && ranged) Fail(section, "give either 'values' or 'start/stop/step', not both");
  if (d.values) {
    for (auto item : SplitList(*d.values)) {
      axis.values.push_back(ParseAxisValue(item, d.variable, section + ".values"));
    }
  } else if (ranged) {
    if (!(d.start && d.stop && d.step)) Fail(section, "a range needs start, stop and step");
    const bool angle = IsAngle(d.variable);
    const double start = ParseNumber(*d.start, section + ".start", angle);
    const double stop = ParseNumber(*d.stop, section + ".stop", angle);
    const std::string scale = d.scale ? std::string(Trim(*d.scale)) : "linear";
    if (scale == "linear") {
      const double step = ParseNumber(*d.step, section + ".step", angle);
      if (!(step > 0) || stop < start) Fail(section, "need step > 0 and stop >= start");
      const double count = std::floor((stop - start) / step * (1 + 1e-12) + 1e-9);
      if (count > 1e6) Fail(section, "range has more than a million points");
      for (int i = 0; i <= static_cast<int>(count); ++i) {
        axis.values.push_back(AxisValue::Number(start + i * step));
      }
    } else if (scale == "log") {
      const double ratio = ParseNumber(*d.step, section + ".step");
      if (!(ratio > 1) || !(start > 0) || stop < start) {
        Fail(section, "a log range needs start > 0, stop >= start and step > 1");
      }
      const double count = std::floor(std::log(stop / start) / std::log(ratio) + 1e-9);
      if (count > 1e6) Fail(section, "range has more than a million points");
      for (int i = 0; i <= static_cast<int>(count); ++i) {
        axis.values.push_back(AxisValue::Number(start * std::pow(ratio, i)));
      }
    } else {
      Fail(section + ".scale", "expected linear or log");
    }
  }
  return axis;
}

}  // namespace

std::string_view ModeName(Mode m) {
  switch (m) {
    case Mode::kAnalyze:
      return "analyze";
    case Mode::kSimulate:
      return "simulate";
    case Mode::kValidate:
      return "validate";
    case Mode::kOptimize:
      return "optimize";
  }
  return "?";
}

std::string AxisLabel(const AxisValue& v) {
  if (v.kind == AxisValue::Kind::kOptimize) return "opt";
  if (v.kind == AxisValue::Kind::kNone) return "none";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v.number);
  return buf;
}

const std::vector<std::string>& SweepableVariables() {
  static const std::vector<std::string> vars = {
      "lambda_u", "lambda_e", "theta_c", "H",   "eta_L", "eta_N",  "alpha_L",
      "alpha_N",  "R_t",      "R_s",     "R_e", "D",     "epsilon"};
  return vars;
}

const std::vector<MetricInfo>& MetricCatalogue() {
  static const std::vector<MetricInfo> catalogue = {
      {"pc_approx", false, false, false, "", "t"},
      {"pc_simplified", false, false, false, "", "t"},
      {"pso_approx", false, false, false, "", "e"},
      {"stc_approx", false, false, false, "", "ts"},
      {"pc_exact", true, false, false, "pc_approx", "t"},
      {"pso_exact", true, false, false, "pso_approx", "e"},
      {"pc_mc_exact", true, true, false, "pc_approx", "t"},
      {"pc_mc_rayleigh", true, true, false, "pc_approx", "t"},
      {"pso_mc", true, true, false, "pso_approx", "e"},
      {"rt_star", false, false, true, "", ""},
      {"rs_star", false, false, true, "", ""},
      {"re_star", false, false, true, "", ""},
      {"cs_star", false, false, true, "", ""},
      {"h_star", false, false, true, "", ""},
      {"d_star", false, false, true, "", ""},
      {"pso_star", false, false, true, "", ""},
      {"pc_star", false, false, true, "", ""},
  };
  return catalogue;
}

const MetricInfo* FindMetric(std::string_view name) {
  for (const auto& m : MetricCatalogue()) {
    if (m.name == name) return &m;
  }
  return nullptr;
}

ExperimentConfig ParseConfig(std::string_view text) {
  ExperimentConfig cfg;
  AxisDraft sweep, series;
  std::string section;
  std::map<std::string, int> seen;
  bool have_mode = false;

  int line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    line = Trim(line);
    if (line.empty()) continue;
    const std::string where_line = "line " + std::to_string(line_no);

    if (line.front() == '[') {
      if (line.back() != ']') Fail(where_line, "unterminated section header");
      section = std::string(Trim(line.substr(1, line.size() - 2)));
      static const std::vector<std::string> known = {"network", "code", "sweep", "series",
                                                     "sim",     "semi", "zone",  "output"};
      if (std::find(known.begin(), known.end(), section) == known.end()) {
        Fail(where_line, "unknown section [" + section + "]");
      }
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) Fail(where_line, "expected key = value");
    const std::string key(Trim(line.substr(0, eq)));
    const std::string_view value = Trim(line.substr(eq + 1));
    const std::string where = where_line + " (" + (section.empty() ? "" : section + ".") + key + ")";
    if (key.empty()) Fail(where_line, "empty key");
    if (seen[section + "." + key]++ > 0) Fail(where, "duplicate key");

    if (section.empty()) {
      if (key == "name") {
        cfg.name = std::string(value);
      } else if (key == "mode") {
        have_mode = true;
        if (value == "analyze") cfg.mode = Mode::kAnalyze;
        else if (value == "simulate") cfg.mode = Mode::kSimulate;
        else if (value == "validate") cfg.mode = Mode::kValidate;
        else if (value == "optimize") cfg.mode = Mode::kOptimize;
        else Fail(where, "expected analyze, simulate, validate or optimize");
      } else if (key == "metrics") {
        for (auto m : SplitList(value)) cfg.metrics.emplace_back(m);
      } else if (key == "epsilon") {
        cfg.epsilon = ParseNumber(value, where);
      } else {
        Fail(where, "unknown key");
      }
    } else if (section == "network") {
      double* field = NetworkField(cfg.network, key);
      if (!field) Fail(where, "unknown key");
      *field = ParseNumber(value, where, IsAngle(key));
    } else if (section == "code") {
      if (key == "R_t") cfg.code.R_t = ParseNumber(value, where);
      else if (key == "R_s") cfg.code.R_s = ParseNumber(value, where);
      else if (key == "R_e" && value == "ref") cfg.code.R_e_reference = true;
      else if (key == "R_e") cfg.code.R_e = ParseNumber(value, where);
      else Fail(where, "unknown key");
    } else if (section == "sweep" || section == "series") {
      AxisDraft& d = section == "sweep" ? sweep : series;
      if (key == "variable") d.variable = std::string(value);
      else if (key == "values") d.values = std::string(value);
      else if (key == "start") d.start = std::string(value);
      else if (key == "stop") d.stop = std::string(value);
      else if (key == "step") d.step = std::string(value);
      else if (key == "scale") d.scale = std::string(value);
      else Fail(where, "unknown key");
    } else if (section == "sim") {
      if (key == "n_realizations") cfg.sim.n_realizations = ParseCount(value, where);
      else if (key == "window_radius") cfg.sim.window_radius = ParseNumber(value, where);
      else if (key == "seed") cfg.sim.seed = ParseCount(value, where);
      else if (key == "batch_size") cfg.sim.batch_size = ParseCount(value, where);
      else if (key == "threads") cfg.sim.threads = static_cast<unsigned>(ParseCount(value, where));
      else Fail(where, "unknown key");
    } else if (section == "semi") {
      if (key == "n_realizations") cfg.semi.n_realizations = ParseCount(value, where);
      else if (key == "window_radius") cfg.semi.window_radius = ParseNumber(value, where);
      else if (key == "seed") cfg.semi.seed = ParseCount(value, where);
      else if (key == "angular_nodes")
        cfg.semi.angular_nodes = static_cast<int>(ParseCount(value, where));
      else if (key == "rel_tol") cfg.semi.rel_tol = ParseNumber(value, where);
      else Fail(where, "unknown key");
    } else if (section == "zone") {
      if (key != "D") Fail(where, "unknown key");
      cfg.zone = ParseAxisValue(value, "D", where);
    } else if (section == "output") {
      if (key == "directory") cfg.output.directory = std::string(value);
      else if (key == "chart") cfg.output.chart = ParseBool(value, where);
      else if (key == "log_x") cfg.output.log_x = ParseBool(value, where);
      else if (key == "log_y") cfg.output.log_y = ParseBool(value, where);
      else Fail(where, "unknown key");
    }
  }
  if (!have_mode) Fail("config", "missing 'mode'");
  if (sweep.variable.empty()) Fail("[sweep]", "missing 'variable'");
  if (!sweep.values && !sweep.start && !sweep.stop && !sweep.step) {
    Fail("[sweep]", "missing 'values' or a start/stop/step range");
  }
  cfg.sweep = ExpandAxis(sweep, "[sweep]");
  cfg.series = ExpandAxis(series, "[series]");
  ValidateConfig(cfg);
  return cfg;
}

ExperimentConfig LoadConfig(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path.string() + ": cannot open");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return ParseConfig(buf.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

void ValidateConfig(const ExperimentConfig& cfg) {
  const auto& vars = SweepableVariables();
  auto check_axis = [&](const Axis& axis, const std::string& section, bool allow_special) {
    if (!axis.present()) return;
    if (std::find(vars.begin(), vars.end(), axis.variable) == vars.end()) {
      Fail(section, "cannot sweep '" + axis.variable + "'");
    }
    if (axis.values.empty()) Fail(section, "sweep list is empty");
    for (const auto& v : axis.values) {
      if (v.kind != AxisValue::Kind::kNumber && !allow_special) {
        Fail(section, "only numeric values may be swept");
      }
      if (v.kind == AxisValue::Kind::kOptimize && cfg.mode != Mode::kOptimize) {
        Fail(section, "D = optimize requires mode = optimize");
      }
    }
  };
  if (cfg.name.empty() ||
      cfg.name.find_first_not_of("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_-.") !=
          std::string::npos) {
    Fail("name", "must be a nonempty file stem of letters, digits, '_', '-' or '.'");
  }
  if (!cfg.sweep.present()) Fail("[sweep]", "missing 'variable'");
  check_axis(cfg.sweep, "[sweep]", false);
  check_axis(cfg.series, "[series]", true);
  if (cfg.series.present() && cfg.series.variable == cfg.sweep.variable) {
    Fail("[series]", "series and sweep must use different variables");
  }
  if (!(cfg.epsilon > 0 && cfg.epsilon < 1)) Fail("epsilon", "must lie in (0, 1)");
  try {
    cfg.network.Validate();
  } catch (const DomainError& e) {
    Fail("[network]", e.what());
  }
  if (cfg.zone.kind == AxisValue::Kind::kNumber && !(cfg.zone.number >= 0)) {
    Fail("[zone]", "D must be nonnegative");
  }
  if (cfg.zone.kind == AxisValue::Kind::kOptimize && cfg.mode != Mode::kOptimize) {
    Fail("[zone]", "D = optimize requires mode = optimize");
  }
  if (cfg.code.R_e && cfg.code.R_e_reference) Fail("[code]", "R_e given twice");
  if (cfg.sim.n_realizations == 0 || cfg.sim.batch_size == 0) {
    Fail("[sim]", "n_realizations and batch_size must be positive");
  }
  if (cfg.semi.n_realizations == 0 || cfg.semi.angular_nodes < 1 || !(cfg.semi.rel_tol > 0)) {
    Fail("[semi]", "n_realizations, angular_nodes and rel_tol must be positive");
  }

  auto swept = [&](std::string_view v) {
    return cfg.sweep.variable == v || cfg.series.variable == v;
  };
  const bool t = cfg.code.R_t || swept("R_t");
  const bool s = cfg.code.R_s || swept("R_s");
  const bool e = cfg.code.R_e || cfg.code.R_e_reference || swept("R_e");
  const bool have_t = t || (s && e);
  const bool have_s = s || (t && e);
  const bool have_e = e || (t && s);

  if (cfg.metrics.empty()) Fail("metrics", "no metrics requested");
  for (const auto& name : cfg.metrics) {
    const MetricInfo* m = FindMetric(name);
    if (!m) Fail("metrics", "unknown metric '" + name + "'");
    if (std::count(cfg.metrics.begin(), cfg.metrics.end(), name) > 1) {
      Fail("metrics", "'" + name + "' listed twice");
    }
    if (m->optimizer != (cfg.mode == Mode::kOptimize)) {
      Fail("metrics", "'" + name + "' is not available in mode " +
                          std::string(ModeName(cfg.mode)));
    }
    if (m->simulated && cfg.mode != Mode::kSimulate && cfg.mode != Mode::kValidate) {
      Fail("metrics", "'" + name + "' needs mode simulate or validate");
    }
    if (cfg.mode == Mode::kValidate && !m->reference.empty() &&
        std::find(cfg.metrics.begin(), cfg.metrics.end(), m->reference) == cfg.metrics.end()) {
      Fail("metrics", "validating '" + name + "' needs '" + std::string(m->reference) + "'");
    }
    for (char need : m->needs) {
      if ((need == 't' && !have_t) || (need == 's' && !have_s) || (need == 'e' && !have_e)) {
        Fail("[code]", "'" + name + "' needs R_" + std::string(1, need));
      }
    }
  }
}

std::string SerializeConfig(const ExperimentConfig& cfg) {
  std::ostringstream out;
  auto put = [&](std::string_view key, const std::string& value) {
    out << key << " = " << value << '\n';
  };
  put("name", cfg.name);
  put("mode", std::string(ModeName(cfg.mode)));
  std::string metrics;
  for (const auto& m : cfg.metrics) metrics += (metrics.empty() ? "" : ", ") + m;
  put("metrics", metrics);
  put("epsilon", Shortest(cfg.epsilon));

  out << "\n[network]\n";
  net::NetworkParams p = cfg.network;
  for (auto key : kNetworkKeys) put(key, Shortest(*NetworkField(p, key)));

  out << "\n[code]\n";
  if (cfg.code.R_t) put("R_t", Shortest(*cfg.code.R_t));
  if (cfg.code.R_s) put("R_s", Shortest(*cfg.code.R_s));
  if (cfg.code.R_e) put("R_e", Shortest(*cfg.code.R_e));
  if (cfg.code.R_e_reference) put("R_e", "ref");

  auto put_axis = [&](const char* section, const Axis& axis) {
    if (!axis.present()) return;
    out << "\n[" << section << "]\n";
    put("variable", axis.variable);
    std::string values;
    for (const auto& v : axis.values) values += (values.empty() ? "" : ", ") + AxisText(v);
    put("values", values);
  };
  put_axis("sweep", cfg.sweep);
  put_axis("series", cfg.series);

  out << "\n[sim]\n";
  put("n_realizations", std::to_string(cfg.sim.n_realizations));
  put("window_radius", Shortest(cfg.sim.window_radius));
  put("seed", std::to_string(cfg.sim.seed));
  put("batch_size", std::to_string(cfg.sim.batch_size));
  put("threads", std::to_string(cfg.sim.threads));

  out << "\n[semi]\n";
  put("n_realizations", std::to_string(cfg.semi.n_realizations));
  put("window_radius", Shortest(cfg.semi.window_radius));
  put("seed", std::to_string(cfg.semi.seed));
  put("angular_nodes", std::to_string(cfg.semi.angular_nodes));
  put("rel_tol", Shortest(cfg.semi.rel_tol));

  out << "\n[zone]\n";
  put("D", AxisText(cfg.zone));

  out << "\n[output]\n";
  if (!cfg.output.directory.empty()) put("directory", cfg.output.directory);
  put("chart", cfg.output.chart ? "true" : "false");
  put("log_x", cfg.output.log_x ? "true" : "false");
  put("log_y", cfg.output.log_y ? "true" : "false");
  return out.str();
}

}  // namespace uavsec::cli
