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

#include "uavsec/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "uavsec/error.hpp"
#include "uavsec/mathkit.hpp"

namespace uavsec::analytic {

namespace {

constexpr double kPi = std::numbers::pi;

// (1 - (1 + z) e^-z) / z^2, accurate for small z.
double GrowthKernel(double z) {
  if (z < 0.1) {
    double term = 0.5;  // k = 2 coefficient: (k - 1) / k!
    double sum = 0.0;
    double power = 1.0;
    double factorial = 2.0;
    for (int k = 2; k <= 14; ++k) {
      if (k > 2) {
        factorial *= k;
        power *= -z;
        term = (k - 1) / factorial * power;
      }
      sum += term;
    }
    return sum;
  }
  return (-std::expm1(-z) - z * std::exp(-z)) / (z * z);
}

// Log of the integral of s e^{-a s} over [lo, hi]; width = hi - lo is passed
// separately so that it keeps its precision. Small a*lo uses
// x^2 GrowthKernel(a x) at both ends; otherwise both ends are near 1/a^2
// and the difference is taken analytically:
// e^{-a lo} / a^2 [(1 + a lo)(1 - e^{-y}) - y e^{-y}], y = a * width.
double LogLosMass(double a, double lo, double hi, double width) {
  if (a * lo < 1.0) {
    const double mass = hi * hi * GrowthKernel(a * hi) - lo * lo * GrowthKernel(a * lo);
    return mass > 0.0 ? std::log(mass) : -std::numeric_limits<double>::infinity();
  }
  const double y = a * width;
  const double bracket = -(1.0 + a * lo) * std::expm1(-y) - y * std::exp(-y);
  if (!(bracket > 0.0)) return -std::numeric_limits<double>::infinity();
  return -a * lo - 2.0 * std::log(a) + std::log(bracket);
}

double PowerLoss(double d2, double alpha) {
  if (alpha == 2.0) return 1.0 / d2;
  if (alpha == 4.0) return 1.0 / (d2 * d2);
  return std::pow(d2, -0.5 * alpha);
}

}  // namespace

double q1(double lambda_u, double beta_e) {
  return lambda_u * kPi * kPi * std::sqrt(beta_e) / 2.0;
}

double pc_approx(const NetworkParams& p, double beta_t) {
  if (beta_t < 0.0 || std::isnan(beta_t)) throw DomainError("pc_approx: beta_t must be >= 0");
  if (beta_t == 0.0 || p.lambda_u == 0.0) return 1.0;
  if (std::isinf(beta_t)) return 0.0;
  const double K = p.K();
  const double H2 = p.H * p.H;
  const double c = p.H * std::sqrt(beta_t) * p.GainRatioRoot();
  // pi - 2 arctan(x) == 2 arctan(1 / x) for x > 0.
  const double nlos = kPi * p.lambda_u * c / 2.0 * 2.0 * std::atan2(c, H2 + K * K);
  const double los = kPi * p.lambda_u * H2 * beta_t * std::log1p(K * K / (H2 * (beta_t + 1.0)));
  return std::exp(-nlos - los);
}

double pso_approx(const NetworkParams& p, double beta_e) {
  return pso_zone_approx(p, beta_e, GuardZone{0.0});
}

double pso_zone_approx(const NetworkParams& p, double beta_e, GuardZone zone) {
  if (!(beta_e > 0.0)) throw DomainError("pso_approx: beta_e must be > 0");
  if (!(zone.D >= 0.0)) throw DomainError("pso_zone_approx: D must be >= 0");
  if (p.lambda_e == 0.0) return 0.0;
  if (std::isinf(beta_e)) return 0.0;
  if (p.lambda_u == 0.0) return 1.0;

  const double Q1 = q1(p.lambda_u, beta_e);
  const double K = p.K();
  const double H2 = p.H * p.H;
  const double base = kPi * p.lambda_u * H2;
  const double D = zone.D;

  double X = 0.0;
  if (D >= K) {
    X = kPi * p.lambda_e / Q1 * std::exp(base - Q1 * (H2 + D * D));
  } else {
    const double S = std::sqrt(H2 + K * K);
    const double SD = std::sqrt(H2 + D * D);
    const double a = Q1 * p.GainRatioRoot();
    const double nlos = std::exp(base - Q1 * S * S) / (2.0 * Q1);
    const double width = (K * K - D * D) / (S + SD);
    const double los = std::exp(base + LogLosMass(a, SD, S, width));
    X = 2.0 * kPi * p.lambda_e * (nlos + los);
  }
  return std::clamp(-std::expm1(-X), 0.0, 1.0);
}

double pc_simplified(const NetworkParams& p, double R_t) {
  if (R_t < 0.0 || std::isnan(R_t)) throw DomainError("pc_simplified: R_t must be >= 0");
  const double exponent =
      kPi / 2.0 * p.lambda_u * p.H * (p.GainRatioRoot() * kPi * std::exp2(R_t / 2.0) - 2.0 * p.H);
  return std::exp(-exponent);
}

double effective_density(double lambda_u, double lambda_e, GuardZone zone) {
  return lambda_u * std::exp(-kPi * lambda_e * zone.D * zone.D);
}

double stc(double R_s, double p_c, double density) {
  if (R_s < 0.0 || p_c < 0.0 || density < 0.0) throw DomainError("stc: arguments must be >= 0");
  return R_s * p_c * density;
}

// ---------------------------------------------------------------------------

double pc_exact_given(const net::Realization& real, const NetworkParams& p, double beta_t) {
  if (real.interferers.empty() || beta_t == 0.0) return 1.0;
  if (std::isinf(beta_t)) return 0.0;
  const double K2 = p.K() * p.K();
  const double H2 = p.H * p.H;
  double los = 0.0;
  std::vector<double> rates;
  rates.reserve(real.interferers.size());
  for (const net::Point2& u : real.interferers) {
    const double r2 = u.Norm2();
    if (r2 < K2) {
      los += PowerLoss(r2 + H2, p.alpha_L);
    } else {
      rates.push_back(1.0 / PowerLoss(r2 + H2, p.alpha_N));
    }
  }
  const double y = p.eta_L * (PowerLoss(H2, p.alpha_L) / beta_t - los) / p.eta_N;
  if (y <= 0.0) return 0.0;
  if (rates.empty()) return 1.0;
  return mathkit::hypoexp_cdf(mathkit::HypoExpRates(std::move(rates)), y);
}

double exceedance_given(const net::Realization& real, net::Point2 at, const NetworkParams& p,
                        double beta_e) {
  if (real.interferers.empty() || beta_e == 0.0) return 1.0;
  const double K2 = p.K() * p.K();
  const double H2 = p.H * p.H;
  const double d0 = at.Norm2() + H2;

  double los = 0.0;
  if (at.Norm2() < K2) {
    std::vector<double> rates;
    for (const net::Point2& u : real.interferers) {
      const double r2 = net::Dist2(u, at);
      if (r2 < K2) {
        los += PowerLoss(r2 + H2, p.alpha_L);
      } else {
        rates.push_back(1.0 / PowerLoss(r2 + H2, p.alpha_N));
      }
    }
    const double y = p.eta_L * (PowerLoss(d0, p.alpha_L) / beta_e - los) / p.eta_N;
    if (y <= 0.0) return 0.0;
    if (rates.empty()) return 1.0;
    return mathkit::hypoexp_cdf(mathkit::HypoExpRates(std::move(rates)), y);
  }

  // NLoS signal: average the Rayleigh signal fade against every interferer.
  const double s = beta_e / PowerLoss(d0, p.alpha_N);
  double log_p = 0.0;
  for (const net::Point2& u : real.interferers) {
    const double r2 = net::Dist2(u, at);
    if (r2 < K2) {
      los += PowerLoss(r2 + H2, p.alpha_L);
    } else {
      log_p -= std::log1p(s * PowerLoss(r2 + H2, p.alpha_N));
    }
  }
  log_p -= s * p.eta_L * los / p.eta_N;
  return std::exp(log_p);
}

SpatialIntegral exceedance_integral(const net::Realization& real, const NetworkParams& p,
                                    double beta_e, double D, double R_w, int angular_nodes,
                                    double angle_offset, double rel_tol, double abs_tol) {
  SpatialIntegral out;
  if (!(R_w > D)) return out;
  const double K = p.K();
  const double step = 2.0 * kPi / angular_nodes;
  mathkit::QuadratureOptions qo;
  qo.rel_tol = rel_tol;
  qo.abs_tol = abs_tol;
  std::vector<double> cuts;
  for (int j = 0; j < angular_nodes; ++j) {
    const double phi = step * (j + angle_offset);
    const double c = std::cos(phi);
    const double s = std::sin(phi);
    // The integrand jumps where the eavesdropper crosses its own LoS radius
    // and wherever it enters or leaves the LoS disk of an interferer.
    cuts.assign(1, K);
    for (const net::Point2& u : real.interferers) {
      const double b = u.x * c + u.y * s;
      const double disc = b * b - u.Norm2() + K * K;
      if (disc <= 0.0) continue;
      const double root = std::sqrt(disc);
      cuts.push_back(b - root);
      cuts.push_back(b + root);
    }
    const auto f = [&](double rho) {
      return rho * exceedance_given(real, {rho * c, rho * s}, p, beta_e);
    };
    const mathkit::QuadratureResult r = mathkit::integrate_radial(f, D, R_w, cuts, qo);
    out.value += r.value;
    out.error += r.error;
  }
  out.value *= step;
  out.error *= step;
  return out;
}

namespace {

net::Realization SampleInterferers(const NetworkParams& p, double R_w, std::uint64_t seed,
                                   std::uint64_t id) {
  net::Realization real;
  real.seed = seed;
  real.id = id;
  RandomStream stream(seed, StreamTag::kInterferers, id);
  real.interferers = net::sample_ppp(p.lambda_u, {0.0, R_w}, stream);
  return real;
}

MetricEstimate Summarize(const std::vector<double>& values) {
  double sum = 0.0;
  double sum_sq = 0.0;
  for (double v : values) {
    sum += v;
    sum_sq += v * v;
  }
  return MeanEstimate(sum, sum_sq, values.size(), Method::kSemiAnalytic);
}

}  // namespace

MetricEstimate pc_exact(const NetworkParams& p, double beta_t, const SemiAnalyticOptions& o) {
  if (o.n_realizations == 0) throw DomainError("pc_exact: need at least one realization");
  const double R_w = o.window_radius > 0.0 ? o.window_radius : net::window_radius(p);
  std::vector<double> values(o.n_realizations);
  ParallelFor(
      o.n_realizations, o.threads, 64,
      [&](std::size_t i) {
        values[i] = pc_exact_given(SampleInterferers(p, R_w, o.seed, i), p, beta_t);
      },
      o.progress);
  return Summarize(values);
}

MetricEstimate pso_exact(const NetworkParams& p, double beta_e, std::optional<GuardZone> zone,
                         const SemiAnalyticOptions& o) {
  if (o.n_realizations == 0) throw DomainError("pso_exact: need at least one realization");
  if (p.lambda_e == 0.0) return {0.0, Method::kSemiAnalytic, 0.0, o.n_realizations};
  const double R_w = o.window_radius > 0.0 ? o.window_radius : net::window_radius(p);
  const double D = zone ? zone->D : 0.0;
  // Per-realization absolute error budget on lambda_e * integral, tied to
  // rel_tol (the default 1e-6 allows 1e-5).
  const double abs_tol = 10.0 * o.rel_tol / (p.lambda_e * 2.0 * kPi);

  std::vector<double> values(o.n_realizations);
  ParallelFor(
      o.n_realizations, o.threads, 1,
      [&](std::size_t i) {
        const net::Realization real = SampleInterferers(p, R_w, o.seed, i);
        if (real.interferers.empty()) {
          values[i] = 1.0;
          return;
        }
        RandomStream offset(o.seed, StreamTag::kAngularOffset, i);
        const SpatialIntegral x = exceedance_integral(real, p, beta_e, D, R_w, o.angular_nodes,
                                                      offset.Uniform(), o.rel_tol, abs_tol);
        values[i] = -std::expm1(-p.lambda_e * x.value);
      },
      o.progress);

  MetricEstimate e = Summarize(values);
  // Exceedance mass outside the window, from the Rayleigh-model tail.
  const double Q1 = q1(p.lambda_u, beta_e);
  if (Q1 > 0.0 && beta_e > 0.0) {
    const double H2 = p.H * p.H;
    const double rho = std::max(R_w, D);
    e.half_width += kPi * p.lambda_e / Q1 *
                    std::exp(kPi * p.lambda_u * H2 - Q1 * (rho * rho + H2));
  }
  return e;
}

}  // namespace uavsec::analytic
