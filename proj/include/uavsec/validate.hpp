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

// Closed form versus simulator at the bundled validation setups. Each check
// reports the largest observed deviation and whether it met its tolerance.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace uavsec::cli {

struct ValidationOptions {
  std::uint64_t n_realizations = 100000;
  std::uint64_t seed = 1;
  unsigned threads = 0;
  bool include_outage = true;
  // Multiplies eta_N in the closed forms only; anything but 1 is a
  // negative control that the suite must flag.
  double eta_ratio_corruption = 1.0;
};

struct ValidationEntry {
  std::string check;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  int points = 0;   // points inside the claimed regime
  int passed = 0;
  int required = 0; // passes needed
  bool pass = false;
};

struct ValidationReport {
  std::vector<ValidationEntry> entries;
  bool all_pass() const;
};

ValidationReport validate_suite(const ValidationOptions& options = {});

void PrintReport(const ValidationReport& report, std::ostream& out);

}  // namespace uavsec::cli
