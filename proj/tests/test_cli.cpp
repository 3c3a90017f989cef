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


#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "uavsec/config.hpp"
#include "uavsec/error.hpp"
#include "uavsec/experiment.hpp"
#include "uavsec/optimizer.hpp"
#include "uavsec/validate.hpp"

using namespace uavsec;
using namespace uavsec::cli;
namespace fs = std::filesystem;

namespace {

const char* kMinimal = R"(
name = t
mode = analyze
metrics = pc_approx, pso_approx
[code]
R_t = 5
R_s = 2
[sweep]
variable = lambda_u
values = 1e-4, 1e-3
)";

fs::path TempDir(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("uavsec_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string Slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("bundled configs parse and round-trip") {
  int count = 0;
  for (const auto& entry : fs::directory_iterator(UAVSEC_CONFIG_DIR)) {
    if (entry.path().extension() != ".cfg") continue;
    CAPTURE(entry.path().string());
    const auto cfg = LoadConfig(entry.path());
    CHECK(cfg.name == entry.path().stem().string());
    CHECK(ParseConfig(SerializeConfig(cfg)) == cfg);
    ++count;
  }
  CHECK(count >= 8);
}

TEST_CASE("fig3 config encodes the connection experiment") {
  const auto cfg = LoadConfig(fs::path(UAVSEC_CONFIG_DIR) / "fig3.cfg");
  CHECK(cfg.mode == Mode::kSimulate);
  CHECK(cfg.code.R_t == 5.0);
  CHECK(cfg.network.theta_c == doctest::Approx(std::numbers::pi / 4));
  CHECK(cfg.sweep.variable == "lambda_u");
  CHECK(cfg.sweep.values.size() == 5);
  CHECK(cfg.series.variable == "H");
}

TEST_CASE("parsing details") {
  auto cfg = ParseConfig(std::string(kMinimal) + "[network]\ntheta_c = 30 deg\n");
  CHECK(cfg.network.theta_c == doctest::Approx(std::numbers::pi / 6));
  CHECK(cfg.zone == AxisValue::None());

  cfg = ParseConfig(R"(name = r
mode = analyze
metrics = pc_approx
[code]
R_t = 3
[sweep]
variable = H
start = 10
stop = 30
step = 5
)");
  REQUIRE(cfg.sweep.values.size() == 5);
  CHECK(cfg.sweep.values.back().number == doctest::Approx(30));

  cfg = ParseConfig(R"(name = r
mode = analyze
metrics = pc_approx
[code]
R_t = 3
[sweep]
variable = lambda_u
start = 1e-4
stop = 1e-2
step = 10
scale = log
)");
  REQUIRE(cfg.sweep.values.size() == 3);
  CHECK(cfg.sweep.values[2].number == doctest::Approx(1e-2));
}

TEST_CASE("invalid configs are rejected with the field named") {
  auto rejects = [](const std::string& text, const std::string& needle) {
    try {
      ParseConfig(text);
    } catch (const ConfigError& e) {
      CAPTURE(e.what());
      CHECK(std::string(e.what()).find(needle) != std::string::npos);
      return;
    }
    FAIL("accepted: " << text);
  };
  const std::string head = "name = t\nmode = analyze\nmetrics = pc_approx\n[code]\nR_t = 5\n";
  rejects(head + "[sweep]\nvariable = lambda_u\nvalues =\n", "sweep list is empty");
  rejects(head + "[sweep]\nvariable = lambda_u\nvalues = 1e-3\n[network]\nspeed = 3\n",
          "unknown key");
  rejects(head + "[sweep]\nvariable = lambda_u\nvalues = abc\n", "expected a number");
  rejects(head + "[bogus]\n", "unknown section");
  rejects(head + "[sweep]\nvariable = colour\nvalues = 1\n", "cannot sweep");
  rejects("name = t\nmetrics = pc_approx\n[sweep]\nvariable = H\nvalues = 10\n", "mode");
  rejects("name = t\nmode = analyze\nmetrics = pso_mc\n[code]\nR_e = 3\n[sweep]\nvariable = H\n"
          "values = 10\n",
          "simulate");
  rejects("name = t\nmode = analyze\nmetrics = pso_approx\n[code]\nR_t = 3\n[sweep]\n"
          "variable = H\nvalues = 10\n",
          "R_e");
  rejects("name = t\nmode = validate\nmetrics = pc_mc_exact\n[code]\nR_t = 3\n[sweep]\n"
          "variable = H\nvalues = 10\n",
          "pc_approx");
  rejects("name = t\nmode = analyze\nmetrics = pc_approx\n[code]\nR_t = 3\n[sweep]\n"
          "variable = H\nvalues = 10\n[zone]\nD = optimize\n",
          "optimize");
  rejects(head + "[sweep]\nvariable = H\nvalues = 10\nepsilon = 0.1\n", "unknown key");
  rejects("name = t\nmode = analyze\nmetrics = pc_approx\nepsilon = 2\n[code]\nR_t = 3\n[sweep]\n"
          "variable = H\nvalues = 10\n",
          "epsilon");
}

TEST_CASE("points resolve rates and zones") {
  auto cfg = ParseConfig(kMinimal);
  auto s = ResolvePoint(cfg, AxisValue::Number(1e-3), std::nullopt);
  CHECK(s.network.lambda_u == 1e-3);
  CHECK(*s.R_e == doctest::Approx(3));

  cfg = LoadConfig(fs::path(UAVSEC_CONFIG_DIR) / "fig6.cfg");
  s = ResolvePoint(cfg, AxisValue::Number(1e-2), AxisValue::Number(10));
  CHECK(s.network.lambda_e == 1e-2);
  CHECK(s.zone == AxisValue::Number(10));
  CHECK(*s.R_e == doctest::Approx(opt::solve_re(cfg.network, 0.01, net::GuardZone{10})));
}

TEST_CASE("analyze run writes the documented CSV") {
  const auto dir = TempDir("analyze");
  auto cfg = ParseConfig(kMinimal);
  cfg.output.directory = dir.string();
  std::ostringstream out, err;
  REQUIRE(run(cfg, out, err) == kExitOk);
  const auto csv = Slurp(dir / "t.csv");
  CHECK(csv.rfind("lambda_u,pc_approx,pso_approx\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
  CHECK(fs::exists(dir / "t.svg"));
  CHECK(Slurp(dir / "t.svg").find("<polyline") != std::string::npos);
  CHECK(out.str().find("t: lambda_u=0.0001") != std::string::npos);
}

TEST_CASE("simulation CSVs are byte-identical across runs and thread counts") {
  const auto dir = TempDir("determinism");
  auto cfg = LoadConfig(fs::path(UAVSEC_CONFIG_DIR) / "fig3.cfg");
  cfg.sim.n_realizations = 500;
  cfg.sweep.values.resize(2);
  cfg.output.chart = false;
  std::ostringstream out, err;
  cfg.output.directory = (dir / "a").string();
  cfg.sim.threads = 1;
  REQUIRE(run(cfg, out, err) == kExitOk);
  cfg.output.directory = (dir / "b").string();
  cfg.sim.threads = 3;
  REQUIRE(run(cfg, out, err) == kExitOk);
  const auto a = Slurp(dir / "a" / "fig3.csv");
  CHECK(a == Slurp(dir / "b" / "fig3.csv"));
  CHECK(a.rfind("lambda_u,pc_approx_H10,pc_mc_rayleigh_H10,pc_mc_rayleigh_H10_hw,", 0) == 0);
}

TEST_CASE("validate mode adds deviation columns") {
  auto cfg = LoadConfig(fs::path(UAVSEC_CONFIG_DIR) / "fig4.cfg");
  cfg.mode = Mode::kValidate;
  cfg.sim.n_realizations = 300;
  cfg.sweep.values.resize(1);
  const auto table = Execute(cfg, nullptr);
  const std::vector<std::string> want = {"lambda_e", "pso_approx", "pso_mc", "pso_mc_hw",
                                         "pso_mc_dev"};
  CHECK(table.columns == want);
  CHECK(table.rows[0][4] == doctest::Approx(std::abs(table.rows[0][2] - table.rows[0][1])));
}

TEST_CASE("exit codes name the failure") {
  std::ostringstream out, err;
  const auto dir = TempDir("exit");
  const auto bad = dir / "bad.cfg";
  std::ofstream(bad) << "name = t\nmode = analyze\nmetrics = pc_approx\n[code]\nR_t = 5\n"
                        "[sweep]\nvariable = lambda_u\nvalues =\n";
  CHECK(run(bad, out, err) == kExitConfig);
  CHECK(err.str().find("sweep list is empty") != std::string::npos);
  CHECK(run(dir / "missing.cfg", out, err) == kExitConfig);

  auto cfg = ParseConfig(R"(name = inf
mode = optimize
metrics = cs_star
[network]
lambda_u = 1e-3
[sweep]
variable = lambda_u
values = 0
)");
  cfg.output.directory = dir.string();
  err.str("");
  CHECK(run(cfg, out, err) == kExitInfeasible);
  CHECK(err.str().find("infeasible") != std::string::npos);

  cfg = ParseConfig(R"(name = acc
mode = analyze
metrics = pso_approx, pso_exact
[code]
R_e = 3
[sweep]
variable = lambda_e
values = 1e-2
[semi]
n_realizations = 2
rel_tol = 1e-17
)");
  cfg.output.directory = dir.string();
  err.str("");
  CHECK(run(cfg, out, err) == kExitAccuracy);
  CHECK(err.str().find("accuracy") != std::string::npos);
}

TEST_CASE("output directory falls back to the environment") {
  auto cfg = ParseConfig(kMinimal);
  ::setenv("UAVSEC_OUTPUT_DIR", "/tmp/uavsec_env_dir", 1);
  CHECK(ResolveOutputDir(cfg) == fs::path("/tmp/uavsec_env_dir"));
  ::unsetenv("UAVSEC_OUTPUT_DIR");
  CHECK(ResolveOutputDir(cfg) == fs::path("."));
  cfg.output.directory = "x";
  CHECK(ResolveOutputDir(cfg) == fs::path("x"));
}

TEST_CASE("validation suite flags a corrupted gain ratio") {
  ValidationOptions o;
  o.n_realizations = 4000;
  o.include_outage = false;
  const auto clean = validate_suite(o);
  REQUIRE(clean.entries.size() == 2);
  CHECK(clean.entries[0].pass);
  o.eta_ratio_corruption = 100;  // eta_N = eta_L: every interferer looks LoS
  const auto corrupted = validate_suite(o);
  CHECK_FALSE(corrupted.entries[0].pass);
  CHECK_FALSE(corrupted.all_pass());
  CHECK(corrupted.entries[0].max_deviation > clean.entries[0].max_deviation);
  std::ostringstream out;
  PrintReport(corrupted, out);
  CHECK(out.str().find("FAIL") != std::string::npos);
}
