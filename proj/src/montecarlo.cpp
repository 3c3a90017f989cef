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

#include "uavsec/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "uavsec/analytic.hpp"
#include "uavsec/error.hpp"

namespace uavsec::mc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Interferers bucketed into square cells (compressed row storage) so that
// interference at a point can be accumulated from the nearest cells outward.
class InterfererGrid {
 public:
  InterfererGrid(const std::vector<net::Point2>& points, double R_w, double lambda_u) {
    const double n = static_cast<double>(points.size());
    // About one point per cell, but never more cells than a few per point.
    double cell = lambda_u > 0.0 ? 1.0 / std::sqrt(lambda_u) : 2.0 * R_w;
    cell = std::max(cell, 2.0 * R_w / std::max(1.0, std::sqrt(4.0 * n + 16.0)));
    inv_cell_ = 1.0 / cell;
    origin_ = -R_w;
    side_ = std::max(1, static_cast<int>(std::ceil(2.0 * R_w * inv_cell_)));
    start_.assign(static_cast<std::size_t>(side_) * side_ + 1, 0);
    std::vector<int> cell_of(points.size());
    for (std::size_t k = 0; k < points.size(); ++k) {
      cell_of[k] = Index(CellX(points[k].x), CellX(points[k].y));
      ++start_[cell_of[k] + 1];
    }
    for (std::size_t c = 1; c < start_.size(); ++c) start_[c] += start_[c - 1];
    entries_.resize(points.size());
    std::vector<int> fill(start_.begin(), start_.end() - 1);
    for (std::size_t k = 0; k < points.size(); ++k) {
      entries_[fill[cell_of[k]]++] = {points[k], static_cast<std::uint32_t>(k + 1)};
    }
  }

  struct Entry {
    net::Point2 pos;
    std::uint32_t tx;  // fading id: radial rank + 1
  };

  int side() const { return side_; }
  int CellX(double v) const {
    return std::clamp(static_cast<int>((v - origin_) * inv_cell_), 0, side_ - 1);
  }
  int Index(int cx, int cy) const { return cy * side_ + cx; }

  // Calls visit(entry) for the interferers of one cell until it returns
  // true; reports whether it did.
  template <typename Visit>
  bool AnyInCell(int cx, int cy, Visit&& visit) const {
    const int c = Index(cx, cy);
    for (int k = start_[c]; k < start_[c + 1]; ++k) {
      if (visit(entries_[k])) return true;
    }
    return false;
  }

 private:
  double inv_cell_ = 1.0;
  double origin_ = 0.0;
  int side_ = 1;
  std::vector<int> start_;
  std::vector<Entry> entries_;
};

// Adds interference at `at` ring by ring around its cell and reports whether
// the total stays below `threshold` (i.e. the receiver decodes).
bool StaysBelow(const InterfererGrid& grid, net::Point2 at, std::uint32_t rx, double threshold,
                const NetworkParams& p, FadingModel model, double K2, const FadingSource& fading,
                std::uint64_t id) {
  const int cx = grid.CellX(at.x);
  const int cy = grid.CellX(at.y);
  const int side = grid.side();
  const int max_ring = std::max({cx, cy, side - 1 - cx, side - 1 - cy});
  double total = 0.0;
  const auto add = [&](const InterfererGrid::Entry& e) {
    total += net::link_gain_sq(net::Dist2(e.pos, at), p.H, K2, p, model,
                               fading.Draw(id, e.tx, rx));
    return total >= threshold;
  };
  for (int ring = 0; ring <= max_ring; ++ring) {
    const int x0 = cx - ring, x1 = cx + ring, y0 = cy - ring, y1 = cy + ring;
    for (int x = std::max(x0, 0); x <= std::min(x1, side - 1); ++x) {
      if (y0 >= 0 && grid.AnyInCell(x, y0, add)) return false;
      if (ring > 0 && y1 < side && grid.AnyInCell(x, y1, add)) return false;
    }
    for (int y = std::max(y0 + 1, 0); y <= std::min(y1 - 1, side - 1); ++y) {
      if (x0 >= 0 && grid.AnyInCell(x0, y, add)) return false;
      if (ring > 0 && x1 < side && grid.AnyInCell(x1, y, add)) return false;
    }
  }
  return true;
}

}  // namespace

double SimConfig::ResolveWindow(const NetworkParams& p) const {
  if (n_realizations == 0) throw DomainError("SimConfig: n_realizations must be >= 1");
  const double R_w = window_radius > 0.0 ? window_radius : net::window_radius(p);
  if (!(R_w > p.K())) throw DomainError("SimConfig: window radius must exceed K");
  return R_w;
}

ConnectionOutcome simulate_connection_once(const NetworkParams& p, double beta_t, double R_w,
                                           std::uint64_t seed, std::uint64_t id, bool want_exact,
                                           bool want_rayleigh) {
  const FadingSource fading(seed);
  const double H2 = p.H * p.H;
  const double K2 = p.K() * p.K();
  const double signal_exact = net::link_gain_sq(0.0, p.H, K2, p, FadingModel::kExactLoSNLoS, 1.0);
  const double signal_ray = net::link_gain_sq(0.0, p.H, K2, p, FadingModel::kAllRayleigh,
                                              fading.Draw(id, 0, 0));
  // Decoding fails as soon as interference reaches signal / beta_t.
  double limit_exact = want_exact ? signal_exact / beta_t : -1.0;
  double limit_ray = want_rayleigh ? signal_ray / beta_t : -1.0;
  double i_exact = 0.0, i_ray = 0.0;
  bool alive_exact = want_exact && i_exact < limit_exact;
  bool alive_ray = want_rayleigh && i_ray < limit_ray;

  RandomStream stream(seed, StreamTag::kInterferers, id);
  net::PppSampler sampler(p.lambda_u, {0.0, R_w}, stream);
  net::Point2 u;
  std::uint32_t tx = 0;
  while ((alive_exact || alive_ray) && sampler.Next(u)) {
    ++tx;
    const double r2 = u.Norm2();
    const double s = fading.Draw(id, tx, 0);
    if (r2 < K2) {
      const double g = p.eta_L * (p.alpha_L == 2.0 ? 1.0 / (r2 + H2) : std::pow(r2 + H2, -0.5 * p.alpha_L));
      i_exact += g;
      i_ray += g * s;
    } else {
      const double g = p.eta_N * s * (p.alpha_N == 4.0 ? 1.0 / ((r2 + H2) * (r2 + H2)) : std::pow(r2 + H2, -0.5 * p.alpha_N));
      i_exact += g;
      i_ray += g;
    }
    alive_exact = alive_exact && i_exact < limit_exact;
    alive_ray = alive_ray && i_ray < limit_ray;
  }
  return {alive_exact, alive_ray};
}

bool simulate_outage_once(const NetworkParams& p, double beta_e, double D, double R_w,
                          FadingModel model, std::uint64_t seed, std::uint64_t id) {
  if (p.lambda_e <= 0.0 || !(R_w > D)) return false;
  RandomStream su(seed, StreamTag::kInterferers, id);
  const std::vector<net::Point2> interferers = net::sample_ppp(p.lambda_u, {0.0, R_w}, su);
  RandomStream se(seed, StreamTag::kEavesdroppers, id);
  net::PppSampler eaves(p.lambda_e, {D, R_w}, se);
  net::Point2 e;
  if (interferers.empty()) return eaves.Next(e);

  const InterfererGrid grid(interferers, R_w, p.lambda_u);
  const FadingSource fading(seed);
  const double K2 = p.K() * p.K();
  std::uint32_t rx = 0;
  while (eaves.Next(e)) {
    ++rx;
    const double signal = net::link_gain_sq(e.Norm2(), p.H, K2, p, model, fading.Draw(id, 0, rx));
    const double threshold = beta_e > 0.0 ? signal / beta_e : kInf;
    if (StaysBelow(grid, e, rx, threshold, p, model, K2, fading, id)) return true;
  }
  return false;
}

namespace {

std::uint64_t CountHits(std::uint64_t n, const SimConfig& cfg,
                        const std::function<bool(std::uint64_t)>& trial) {
  std::vector<std::uint8_t> hit(n);
  ParallelFor(
      n, cfg.threads, cfg.batch_size,
      [&](std::size_t i) { hit[i] = trial(i) ? 1 : 0; }, cfg.progress);
  std::uint64_t total = 0;
  for (std::uint8_t h : hit) total += h;
  return total;
}

}  // namespace

ConnectionPair sim_connection_both(const NetworkParams& p, double beta_t, const SimConfig& cfg) {
  const double R_w = cfg.ResolveWindow(p);
  const std::uint64_t n = cfg.n_realizations;
  std::vector<std::uint8_t> hit(n);
  ParallelFor(
      n, cfg.threads, cfg.batch_size,
      [&](std::size_t i) {
        const ConnectionOutcome o = simulate_connection_once(p, beta_t, R_w, cfg.seed, i, true, true);
        hit[i] = static_cast<std::uint8_t>((o.exact ? 1 : 0) | (o.rayleigh ? 2 : 0));
      },
      cfg.progress);
  std::uint64_t exact = 0, rayleigh = 0;
  for (std::uint8_t h : hit) {
    exact += h & 1;
    rayleigh += (h >> 1) & 1;
  }
  return {ProportionEstimate(exact, n), ProportionEstimate(rayleigh, n)};
}

MetricEstimate sim_connection(const NetworkParams& p, double beta_t, const SimConfig& cfg) {
  const double R_w = cfg.ResolveWindow(p);
  const bool exact = cfg.model == FadingModel::kExactLoSNLoS;
  const std::uint64_t hits = CountHits(cfg.n_realizations, cfg, [&](std::uint64_t i) {
    const ConnectionOutcome o = simulate_connection_once(p, beta_t, R_w, cfg.seed, i, exact, !exact);
    return exact ? o.exact : o.rayleigh;
  });
  return ProportionEstimate(hits, cfg.n_realizations);
}

MetricEstimate sim_outage(const NetworkParams& p, double beta_e, std::optional<GuardZone> zone,
                          const SimConfig& cfg) {
  const double R_w = cfg.ResolveWindow(p);
  const double D = zone ? zone->D : 0.0;
  const std::uint64_t hits = CountHits(cfg.n_realizations, cfg, [&](std::uint64_t i) {
    return simulate_outage_once(p, beta_e, D, R_w, cfg.model, cfg.seed, i);
  });
  return ProportionEstimate(hits, cfg.n_realizations);
}

MetricEstimate sim_stc(const NetworkParams& p, const net::WiretapCode& code,
                       std::optional<GuardZone> zone, const SimConfig& cfg) {
  const double density =
      zone ? analytic::effective_density(p.lambda_u, p.lambda_e, *zone) : p.lambda_u;
  const MetricEstimate pc = sim_connection(p, code.beta_t(), cfg);
  return Scaled(pc, code.R_s * density);
}

}  // namespace uavsec::mc
