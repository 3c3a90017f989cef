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

// Experiment configuration: a flat `key = value` file with bracketed
// sections. Parsing validates everything up front so that a run never fails
// halfway on a typo.
//
//   name = fig3
//   mode = simulate              # analyze | simulate | validate | optimize
//   metrics = pc_approx, pc_mc_exact
//   epsilon = 0.01
//   [network]  lambda_u, lambda_e, theta_c, H, H_min, H_max, eta_L, eta_N,
//              alpha_L, alpha_N, P_t
//   [code]     R_t, R_s, R_e   (R_e = ref solves the outage constraint at the
//              unswept network for each zone radius)
//   [sweep]    variable, values | start, stop, step, scale = linear | log
//   [series]   variable, values
//   [sim]      n_realizations, window_radius, seed, batch_size, threads
//   [semi]     n_realizations, window_radius, seed, angular_nodes, rel_tol
//   [zone]     D = none | optimize | <metres>
//   [output]   directory, chart, log_x, log_y
//
// Angles accept a "deg" suffix. Lines starting with '#' are comments.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "uavsec/network.hpp"

namespace uavsec::cli {

enum class Mode { kAnalyze, kSimulate, kValidate, kOptimize };

std::string_view ModeName(Mode m);

// One value of a swept quantity. Only the zone radius may be "none" or
// "optimize".
struct AxisValue {
  enum class Kind { kNumber, kNone, kOptimize };
  Kind kind = Kind::kNumber;
  double number = 0.0;

  static AxisValue Number(double x) { return {Kind::kNumber, x}; }
  static AxisValue None() { return {Kind::kNone, 0.0}; }
  static AxisValue Optimize() { return {Kind::kOptimize, 0.0}; }
  bool operator==(const AxisValue&) const = default;
};

// Column-name label: "10", "0.001", "none", "opt".
std::string AxisLabel(const AxisValue& v);

struct Axis {
  std::string variable;  // empty when the axis is absent
  std::vector<AxisValue> values;

  bool present() const { return !variable.empty(); }
  bool operator==(const Axis&) const = default;
};

struct CodeSettings {
  std::optional<double> R_t;
  std::optional<double> R_s;
  std::optional<double> R_e;
  bool R_e_reference = false;

  bool operator==(const CodeSettings&) const = default;
};

struct SimSettings {
  std::uint64_t n_realizations = 100000;
  double window_radius = 0.0;  // 0 = automatic
  std::uint64_t seed = 1;
  std::uint64_t batch_size = 4096;
  unsigned threads = 0;

  bool operator==(const SimSettings&) const = default;
};

struct SemiSettings {
  std::uint64_t n_realizations = 200;
  double window_radius = 0.0;
  std::uint64_t seed = 1;
  int angular_nodes = 64;
  double rel_tol = 1e-6;

  bool operator==(const SemiSettings&) const = default;
};

struct OutputSettings {
  std::string directory;  // empty: $UAVSEC_OUTPUT_DIR, then "."
  bool chart = true;
  bool log_x = false;
  bool log_y = false;

  bool operator==(const OutputSettings&) const = default;
};

struct ExperimentConfig {
  std::string name;
  Mode mode = Mode::kAnalyze;
  std::vector<std::string> metrics;
  double epsilon = 0.01;
  net::NetworkParams network;
  CodeSettings code;
  Axis sweep;
  Axis series;
  AxisValue zone = AxisValue::None();
  SimSettings sim;
  SemiSettings semi;
  OutputSettings output;

  bool operator==(const ExperimentConfig&) const = default;
};

// Variables that may appear in [sweep] or [series].
const std::vector<std::string>& SweepableVariables();

// Metric catalogue. Each metric names the modes that may request it.
struct MetricInfo {
  std::string_view name;
  bool has_half_width;
  bool simulated;     // Monte Carlo; simulate and validate modes only
  bool optimizer;     // optimize mode only
  std::string_view reference;  // closed form it is validated against, if any
  std::string_view needs;      // rates required: 't' = R_t, 's' = R_s, 'e' = R_e
};
const std::vector<MetricInfo>& MetricCatalogue();
const MetricInfo* FindMetric(std::string_view name);

// Throw ConfigError with a message naming the offending line or field.
ExperimentConfig ParseConfig(std::string_view text);
ExperimentConfig LoadConfig(const std::filesystem::path& path);
void ValidateConfig(const ExperimentConfig& cfg);

// Canonical text form; ParseConfig(SerializeConfig(c)) == c.
std::string SerializeConfig(const ExperimentConfig& cfg);

}  // namespace uavsec::cli
