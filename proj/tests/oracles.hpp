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

// Independent reference values for the test suites: the polar-coordinate
// integral forms of the closed-form probabilities, evaluated with Boost
// quadrature rather than the library's own integrator.

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>

#include "uavsec/network.hpp"

namespace uavsec::oracle {

inline double Finite(const auto& f, double a, double b) {
  if (!(b > a)) return 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 20, 1e-14);
}

inline double Tail(const auto& f, double a) {
  boost::math::quadrature::exp_sinh<double> integrator;
  return integrator.integrate([&](double t) { return f(a + t); }, 1e-14);
}

// Pc = exp(-2 pi lambda_u [int_K^inf NLoS term + int_0^K LoS term]) with the
// typical link at distance H and every interferer Rayleigh-faded.
inline double PcRadial(const net::NetworkParams& p, double beta_t) {
  const double H = p.H, K = p.K();
  const double s = beta_t * std::pow(H, p.alpha_L);
  auto term = [&](double r, double eta_ratio, double alpha) {
    const double x = s * eta_ratio * std::pow(r * r + H * H, -alpha / 2);
    return x / (1 + x) * r;
  };
  const double los = Finite([&](double r) { return term(r, 1.0, p.alpha_L); }, 0.0, K);
  const double nlos = Tail([&](double r) { return term(r, p.eta_N / p.eta_L, p.alpha_N); }, K);
  return std::exp(-2 * std::numbers::pi * p.lambda_u * (los + nlos));
}

// Outage with eavesdroppers restricted to |e| >= D (D = 0: no zone):
// 1 - exp(-2 pi lambda_e int_D^inf exp(-(pi/2) lambda_u rho sqrt(beta_e)
// (pi c - 2 H^2 / (rho sqrt(beta_e)))) r dr), where rho = (r^2+H^2)^(alpha/4)
// and c = sqrt(eta_N / eta_0e).
inline double PsoRadial(const net::NetworkParams& p, double beta_e, double D) {
  const double pi = std::numbers::pi;
  const double H = p.H, K = p.K();
  const double sb = std::sqrt(beta_e);
  auto term = [&](double r, double c, double alpha) {
    const double rho = std::pow(r * r + H * H, alpha / 4);
    return std::exp(-pi / 2 * p.lambda_u * rho * sb * (pi * c - 2 * H * H / (rho * sb))) * r;
  };
  const double c_los = std::sqrt(p.eta_N / p.eta_L);
  double mass = 0.0;
  if (D < K) mass += Finite([&](double r) { return term(r, c_los, p.alpha_L); }, D, K);
  mass += Tail([&](double r) { return term(r, 1.0, p.alpha_N); }, std::max(D, K));
  return -std::expm1(-2 * pi * p.lambda_e * mass);
}

}  // namespace uavsec::oracle
