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

// Ground-truth simulator: samples both point processes and all fading
// coefficients and counts SIR threshold crossings.

#include <cstdint>
#include <optional>

#include "uavsec/estimate.hpp"
#include "uavsec/network.hpp"
#include "uavsec/parallel.hpp"

namespace uavsec::mc {

using net::FadingModel;
using net::GuardZone;
using net::NetworkParams;

struct SimConfig {
  std::uint64_t n_realizations = 100000;
  double window_radius = 0.0;  // 0 selects net::window_radius(p)
  std::uint64_t seed = 1;
  FadingModel model = FadingModel::kExactLoSNLoS;
  std::uint64_t batch_size = 4096;  // realizations per progress report
  unsigned threads = 0;             // 0 = hardware concurrency
  ProgressFn progress;

  // Throws DomainError on n_realizations == 0 or a window not exceeding K.
  double ResolveWindow(const NetworkParams& p) const;
};

// Fraction of realizations with SIR_0 > beta_t.
MetricEstimate sim_connection(const NetworkParams& p, double beta_t, const SimConfig& cfg);

// Both fading models from one set of realizations (common random numbers).
struct ConnectionPair {
  MetricEstimate exact;
  MetricEstimate rayleigh;
};
ConnectionPair sim_connection_both(const NetworkParams& p, double beta_t, const SimConfig& cfg);

// Fraction of realizations in which some eavesdropper has SIR > beta_e.
// With a zone, eavesdroppers are sampled on |w| >= D; interferers are never
// thinned because zone-blocked UAVs still radiate artificial noise.
MetricEstimate sim_outage(const NetworkParams& p, double beta_e, std::optional<GuardZone> zone,
                          const SimConfig& cfg);

// R_s times the simulated connection probability times the transmitter
// density (lambda_u exp(-pi lambda_e D^2) with a zone).
MetricEstimate sim_stc(const NetworkParams& p, const net::WiretapCode& code,
                       std::optional<GuardZone> zone, const SimConfig& cfg);

// Per-realization outcomes, exposed for cross-checking the fast paths
// against the direct SIR definitions.
struct ConnectionOutcome {
  bool exact = false;
  bool rayleigh = false;
};
ConnectionOutcome simulate_connection_once(const NetworkParams& p, double beta_t, double R_w,
                                           std::uint64_t seed, std::uint64_t id, bool want_exact,
                                           bool want_rayleigh);
bool simulate_outage_once(const NetworkParams& p, double beta_e, double D, double R_w,
                          FadingModel model, std::uint64_t seed, std::uint64_t id);

}  // namespace uavsec::mc
