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

#include "uavsec/network.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "uavsec/error.hpp"

namespace uavsec::net {

void NetworkParams::Validate() const {
  const auto finite_nonneg = [](double v) { return std::isfinite(v) && v >= 0.0; };
  if (!finite_nonneg(lambda_u) || !finite_nonneg(lambda_e)) {
    throw DomainError("densities must be finite and >= 0");
  }
  if (!(theta_c > 0.0 && theta_c < std::numbers::pi / 2)) {
    throw DomainError("theta_c must lie in (0, pi/2)");
  }
  if (!(H > 0.0) || !(H_min > 0.0) || !(H_min <= H && H <= H_max)) {
    throw DomainError("altitude must satisfy 0 < H_min <= H <= H_max");
  }
  if (!(eta_N > 0.0) || !(eta_L >= eta_N) || !std::isfinite(eta_L)) {
    throw DomainError("gains must satisfy eta_L >= eta_N > 0");
  }
  if (!(alpha_L > 0.0) || !(alpha_N > 0.0)) {
    throw DomainError("path-loss exponents must be positive");
  }
}

double NetworkParams::K() const { return los_radius(H, theta_c); }

WiretapCode WiretapCode::Make(double R_t, double R_s) {
  if (!(R_s >= 0.0) || !(R_t >= R_s) || !std::isfinite(R_t)) {
    throw DomainError("wiretap code needs R_t >= R_s >= 0");
  }
  return {R_t, R_s};
}

double los_radius(double H, double theta_c) { return H / std::tan(theta_c); }

double window_radius(const NetworkParams& p, double tail_fraction) {
  // With alpha_N = 4 the mean NLoS interference from radii beyond R is
  // pi lambda / (R^2 + H^2), and from [K, R] it is
  // pi lambda (1 / (K^2 + H^2) - 1 / (R^2 + H^2)).
  const double K = p.K();
  const double ratio = 1.0 + 1.0 / tail_fraction;
  const double r2 = ratio * (K * K + p.H * p.H) - p.H * p.H;
  return std::sqrt(r2);
}

PppSampler::PppSampler(double density, Window window, RandomStream& stream)
    : scale_(density > 0.0 ? 1.0 / (std::numbers::pi * density) : 0.0),
      r2_(window.r_in * window.r_in),
      r_out2_(window.r_out * window.r_out),
      stream_(stream) {}

bool PppSampler::Next(Point2& out) {
  if (scale_ == 0.0) return false;
  r2_ += stream_.Exponential() * scale_;
  if (r2_ > r_out2_) {
    scale_ = 0.0;
    return false;
  }
  // Uniform direction by rejection from the square, which avoids trig calls.
  constexpr double kScale = 0x1.0p-31;
  for (;;) {
    const double a = (static_cast<double>(stream_.NextU32()) + 0.5) * kScale - 1.0;
    const double b = (static_cast<double>(stream_.NextU32()) + 0.5) * kScale - 1.0;
    const double s = a * a + b * b;
    if (s <= 1.0) {
      const double f = std::sqrt(r2_ / s);
      out = {a * f, b * f};
      return true;
    }
  }
}

std::vector<Point2> sample_ppp(double density, Window window, RandomStream& stream) {
  std::vector<Point2> points;
  if (density <= 0.0 || !(window.r_out > window.r_in)) return points;
  const double area = std::numbers::pi * (window.r_out * window.r_out - window.r_in * window.r_in);
  points.reserve(static_cast<std::size_t>(density * area * 1.2) + 8);
  PppSampler sampler(density, window, stream);
  Point2 pt;
  while (sampler.Next(pt)) points.push_back(pt);
  return points;
}

namespace {

double PathLoss(double d2, double alpha) {
  if (alpha == 2.0) return 1.0 / d2;
  if (alpha == 4.0) return 1.0 / (d2 * d2);
  return std::pow(d2, -0.5 * alpha);
}

}  // namespace

double link_gain_sq(double r2, double H, double K2, const NetworkParams& p,
                    FadingModel model, double fading_draw) {
  const double d2 = r2 + H * H;
  if (r2 < K2) {
    const double s = model == FadingModel::kAllRayleigh ? fading_draw : 1.0;
    return p.eta_L * s * PathLoss(d2, p.alpha_L);
  }
  return p.eta_N * fading_draw * PathLoss(d2, p.alpha_N);
}

double link_gain(double r, double H, const NetworkParams& p, FadingModel model,
                 double fading_draw) {
  const double K = los_radius(H, p.theta_c);
  return link_gain_sq(r * r, H, K * K, p, model, fading_draw);
}

Realization Realization::Sample(const NetworkParams& p, double R_w, std::uint64_t seed,
                                std::uint64_t id, std::optional<GuardZone> zone) {
  Realization real;
  real.seed = seed;
  real.id = id;
  RandomStream su(seed, StreamTag::kInterferers, id);
  real.interferers = sample_ppp(p.lambda_u, {0.0, R_w}, su);
  RandomStream se(seed, StreamTag::kEavesdroppers, id);
  const double r_in = zone ? zone->D : 0.0;
  real.eavesdroppers = sample_ppp(p.lambda_e, {r_in, R_w}, se);
  return real;
}

namespace {

double Interference(const Realization& real, Point2 at, std::uint32_t rx,
                    const NetworkParams& p, FadingModel model, double K2) {
  const FadingSource fading(real.seed);
  double total = 0.0;
  for (std::size_t k = 0; k < real.interferers.size(); ++k) {
    const auto tx = static_cast<std::uint32_t>(k + 1);
    total += link_gain_sq(Dist2(real.interferers[k], at), p.H, K2, p, model,
                          fading.Draw(real.id, tx, rx));
  }
  return total;
}

}  // namespace

double sir_legitimate(const Realization& real, const NetworkParams& p, FadingModel model) {
  if (real.interferers.empty()) return std::numeric_limits<double>::infinity();
  const double K = p.K();
  const double signal = link_gain_sq(0.0, p.H, K * K, p, model, real.Fading(0, 0));
  return signal / Interference(real, {0.0, 0.0}, 0, p, model, K * K);
}

double sir_eavesdropper(const Realization& real, std::size_t e_index, const NetworkParams& p,
                        FadingModel model) {
  if (e_index >= real.eavesdroppers.size()) throw DomainError("eavesdropper index out of range");
  if (real.interferers.empty()) return std::numeric_limits<double>::infinity();
  const double K = p.K();
  const Point2 at = real.eavesdroppers[e_index];
  const auto rx = static_cast<std::uint32_t>(e_index + 1);
  const double signal = link_gain_sq(at.Norm2(), p.H, K * K, p, model, real.Fading(0, rx));
  return signal / Interference(real, at, rx, p, model, K * K);
}

}  // namespace uavsec::net
