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

// System model: parameters, point-process sampling and the
// elevation-angle-dependent LoS/NLoS channel.

#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "uavsec/random.hpp"

namespace uavsec::net {

struct NetworkParams {
  double lambda_u = 1e-3;  // UAV (and legitimate receiver) density, per m^2
  double lambda_e = 1e-3;  // eavesdropper density, per m^2
  double theta_c = 0.7853981633974483;  // elevation threshold, rad
  double H = 10.0;                      // altitude, m
  double H_min = 10.0;
  double H_max = 100.0;
  double eta_L = 1.0;  // reference gains at 1 m, linear
  double eta_N = 0.01;
  double alpha_L = 2.0;
  double alpha_N = 4.0;
  double P_t = 1.0;  // cancels in every SIR

  // Throws DomainError when an invariant is violated.
  void Validate() const;
  double K() const;
  // sqrt(eta_N / eta_L), the factor that appears in every closed form.
  double GainRatioRoot() const { return std::sqrt(eta_N / eta_L); }
  NetworkParams WithAltitude(double h) const {
    NetworkParams p = *this;
    p.H = h;
    return p;
  }

  bool operator==(const NetworkParams&) const = default;
};

struct WiretapCode {
  double R_t = 0.0;
  double R_s = 0.0;

  // Throws DomainError unless R_t >= R_s >= 0.
  static WiretapCode Make(double R_t, double R_s);
  double R_e() const { return R_t - R_s; }
  double beta_t() const { return std::exp2(R_t) - 1.0; }
  double beta_e() const { return std::exp2(R_e()) - 1.0; }
};

inline double Beta(double rate) { return std::expm1(rate * 0.6931471805599453); }

struct GuardZone {
  double D = 0.0;
};

enum class FadingModel { kExactLoSNLoS, kAllRayleigh };

struct Point2 {
  double x = 0.0;
  double y = 0.0;
  double Norm2() const { return x * x + y * y; }
  double Norm() const { return std::hypot(x, y); }
};

inline double Dist2(Point2 a, Point2 b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

// Horizontal LoS radius K = H cot(theta_c).
double los_radius(double H, double theta_c);

// Annulus r_in <= |w| <= r_out around the origin.
struct Window {
  double r_in = 0.0;
  double r_out = 0.0;
};

// Smallest window radius for which the expected NLoS interference beyond it
// is below `tail_fraction` of the expected NLoS interference inside it.
double window_radius(const NetworkParams& p, double tail_fraction = 1e-3);

// Draws a homogeneous PPP on an annulus lazily, in order of increasing
// radius. Squared radii follow r^2 = r_in^2 + T_k / (pi * density) where T_k
// are the arrival times of a unit-rate Poisson process, so the number of
// points is Poisson and their positions are uniform.
class PppSampler {
 public:
  PppSampler(double density, Window window, RandomStream& stream);
  // Writes the next point and returns true, or returns false once the
  // window is exhausted.
  bool Next(Point2& out);

 private:
  double scale_;  // 1 / (pi * density); 0 when the process is empty
  double r2_;
  double r_out2_;
  RandomStream& stream_;
};

// Points sorted by increasing radius.
std::vector<Point2> sample_ppp(double density, Window window, RandomStream& stream);

// Received power factor eta * S * D^-alpha of a link with horizontal
// distance r. r == K belongs to the NLoS branch.
double link_gain(double r, double H, const NetworkParams& p, FadingModel model,
                 double fading_draw);
// Same, from a squared horizontal distance and a precomputed K^2.
double link_gain_sq(double r2, double H, double K2, const NetworkParams& p,
                    FadingModel model, double fading_draw);

// One snapshot of both point processes seen from the typical pair.
struct Realization {
  std::uint64_t seed = 0;
  std::uint64_t id = 0;
  std::vector<Point2> interferers;    // sorted by radius
  std::vector<Point2> eavesdroppers;  // sorted by radius

  // Samples interferers on [0, R_w] and eavesdroppers on [D, R_w] (D = 0
  // without a zone).
  static Realization Sample(const NetworkParams& p, double R_w, std::uint64_t seed,
                            std::uint64_t id, std::optional<GuardZone> zone = {});

  // Fading coefficient of tx -> rx; tx 0 is the typical UAV, tx k + 1 the
  // k-th interferer; rx 0 the legitimate receiver, rx e + 1 eavesdropper e.
  double Fading(std::uint32_t tx, std::uint32_t rx) const {
    return FadingSource(seed).Draw(id, tx, rx);
  }
};

// SIR at the legitimate receiver; +inf without interferers.
double sir_legitimate(const Realization& real, const NetworkParams& p, FadingModel model);

// SIR at eavesdropper `e_index`; +inf without interferers.
double sir_eavesdropper(const Realization& real, std::size_t e_index,
                        const NetworkParams& p, FadingModel model);

}  // namespace uavsec::net
