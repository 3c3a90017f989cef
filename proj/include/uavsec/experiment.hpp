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

// Sweep execution, CSV and SVG output, and the `run` entry point.
//
// CSV schema: the first column is the swept variable. Each requested metric
// follows in request order; with a series axis the metric columns repeat per
// series value with the suffix _<variable><label> (for example
// pso_approx_D10). Estimates with a confidence interval add a column with
// the same name plus _hw (95% half-width); validate mode adds _dev, the
// absolute difference from the closed form. Empty cells mean "not
// applicable". Numbers use %.10g.

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "uavsec/config.hpp"
#include "uavsec/network.hpp"

namespace uavsec::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitInfeasible = 3;
inline constexpr int kExitAccuracy = 4;

// The network, rates and zone at one (sweep, series) point.
struct PointSetup {
  net::NetworkParams network;
  double epsilon = 0.01;
  std::optional<double> R_t, R_s, R_e;
  AxisValue zone = AxisValue::None();
  bool altitude_pinned = false;  // H is an axis, so the optimizer keeps it fixed
};

// Throws ConfigError for inconsistent rates or an invalid swept network.
PointSetup ResolvePoint(const ExperimentConfig& cfg, const AxisValue& x,
                        const std::optional<AxisValue>& series_value);

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;  // NaN marks an empty cell
};

// Evaluates every point; prints one summary line per sweep point to `log`
// when it is non-null.
Table Execute(const ExperimentConfig& cfg, std::ostream* log);

void WriteCsv(const Table& table, std::ostream& out);

struct ChartOptions {
  std::string title;
  bool log_x = false;
  bool log_y = false;
};
// Polyline chart of every value column (half-width and deviation columns
// are skipped).
std::string RenderSvg(const Table& table, const ChartOptions& options);

// Config directory, else $UAVSEC_OUTPUT_DIR, else the working directory.
std::filesystem::path ResolveOutputDir(const ExperimentConfig& cfg);

// Loads, executes and writes <name>.csv (and <name>.svg). Returns one of the
// kExit* codes; errors are reported on `err` with their kind named.
int run(const std::filesystem::path& config_path, std::ostream& out, std::ostream& err);
int run(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace uavsec::cli
