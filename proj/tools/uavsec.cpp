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


// uavsec: experiment runner for the secrecy transmission models.
//
//   uavsec run <config>      evaluate a sweep, write <name>.csv and <name>.svg
//   uavsec validate          closed forms versus the simulator
//   uavsec version

#include <iostream>

#include "CLI11.hpp"
#include "uavsec/experiment.hpp"
#include "uavsec/validate.hpp"
#include "uavsec/version.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Secrecy transmission in UAV networks: analysis, simulation, optimization"};
  app.require_subcommand(1);

  std::string config_path;
  auto* run = app.add_subcommand("run", "Run the experiment described by a config file");
  run->add_option("config", config_path, "Config file")->required();

  uavsec::cli::ValidationOptions vo;
  bool quick = false;
  auto* validate = app.add_subcommand("validate", "Compare closed forms with Monte Carlo");
  validate->add_option("-n,--realizations", vo.n_realizations, "Realizations per point")
      ->capture_default_str();
  validate->add_option("--seed", vo.seed, "Master seed")->capture_default_str();
  validate->add_option("--threads", vo.threads, "Worker threads (0 = all cores)");
  validate->add_option("--corrupt-eta", vo.eta_ratio_corruption,
                       "Scale eta_N in the closed forms (negative control)");
  validate->add_flag("--no-outage", quick, "Skip the outage checks");

  app.add_subcommand("version", "Print the version");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : uavsec::cli::kExitConfig;
  }

  if (run->parsed()) return uavsec::cli::run(config_path, std::cout, std::cerr);
  if (validate->parsed()) {
    vo.include_outage = !quick;
    const auto report = uavsec::cli::validate_suite(vo);
    uavsec::cli::PrintReport(report, std::cout);
    return report.all_pass() ? 0 : 1;
  }
  std::cout << "uavsec " << uavsec::kVersion << '\n';
  return 0;
}
