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

#include "uavsec/mathkit.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <queue>
#include <string>

#include <boost/math/tools/roots.hpp>

#include "uavsec/error.hpp"

namespace uavsec::mathkit {

namespace {

constexpr double kInvE = 0.36787944117144233;

double LambertInitialGuess(double x) {
  if (x < -0.32) {
    // Branch-point expansion in p = sqrt(2 (e x + 1)).
    const double p = std::sqrt(std::max(0.0, 2.0 * (std::numbers::e * x + 1.0)));
    return -1.0 + p * (1.0 + p * (-1.0 / 3.0 + p * 11.0 / 72.0));
  }
  if (x < 0.5) return x * (1.0 + x * (-1.0 + x * 1.5));
  if (x < std::numbers::e) return 0.5 * std::log1p(x) + 0.15 * std::log1p(x) * (x < 1.0);
  const double l1 = std::log(x);
  const double l2 = std::log(l1);
  return l1 - l2 + l2 / l1;
}

}  // namespace

double lambert_w0(double x) {
  if (std::isnan(x) || x < -kInvE) {
    throw DomainError("lambert_w0: argument below -1/e");
  }
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return x;
  // Near the branch point w e^w - x cannot resolve the distance to -1/e, so
  // use the series in p = sqrt(2 (e x + 1)) with e x + 1 formed from a
  // two-term split of e.
  constexpr double kEHi = 2.718281828459045;
  constexpr double kELo = 1.4456468917292502e-16;
  const double t = std::fma(kEHi, x, 1.0) + kELo * x;
  if (t <= 0.0) return -1.0;
  if (t < 5e-7) {
    const double p = std::sqrt(2.0 * t);
    return -1.0 + p * (1.0 + p * (-1.0 / 3 + p * (11.0 / 72 + p * (-43.0 / 540 +
                                                                   p * (769.0 / 17280)))));
  }

  double w = LambertInitialGuess(x);
  for (int it = 0; it < 64; ++it) {
    const double ew = std::exp(w);
    const double f = w * ew - x;
    const double wp1 = w + 1.0;
    if (wp1 == 0.0) break;
    const double denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
    const double step = f / denom;
    w -= step;
    if (std::abs(step) <= 4.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(w))) {
      break;
    }
  }
  return std::max(w, -1.0);
}

// ---------------------------------------------------------------------------

HypoExpRates::HypoExpRates(std::vector<double> rates) : rates_(std::move(rates)) {
  for (double r : rates_) {
    if (!(r > 0.0) || !std::isfinite(r)) {
      throw DomainError("HypoExpRates: rates must be positive and finite");
    }
  }
  std::sort(rates_.begin(), rates_.end());

  constexpr double kClash = 1e-9;
  constexpr double kSpread = 1e-8;
  for (int pass = 0; pass < 16; ++pass) {
    bool changed = false;
    std::size_t i = 0;
    while (i < rates_.size()) {
      std::size_t j = i + 1;
      while (j < rates_.size() && rates_[j] - rates_[j - 1] < kClash * rates_[j]) ++j;
      const std::size_t count = j - i;
      if (count > 1) {
        const double centre = 0.5 * static_cast<double>(count - 1);
        for (std::size_t k = 0; k < count; ++k) {
          rates_[i + k] *= 1.0 + (static_cast<double>(k) - centre) * kSpread;
        }
        changed = true;
      }
      i = j;
    }
    if (!changed) return;
    perturbed_ = true;
    std::sort(rates_.begin(), rates_.end());
  }
  throw DomainError("HypoExpRates: could not separate clashing rates");
}

namespace {

// Minimal RAII holder for an MPFR value with its own precision.
class MpReal {
 public:
  explicit MpReal(mpfr_prec_t bits) { mpfr_init2(v_, bits); }
  MpReal(const MpReal&) = delete;
  MpReal& operator=(const MpReal&) = delete;
  ~MpReal() { mpfr_clear(v_); }
  mpfr_ptr get() { return v_; }

 private:
  mpfr_t v_;
};

// Survival sum over the kept indices, redone with `bits` of precision.
double SurvivalExtended(std::span<const double> rates, std::span<const std::size_t> kept,
                        double y, mpfr_prec_t bits) {
  MpReal sum(bits), delta(bits), diff(bits), tmp(bits), ex(bits);
  mpfr_set_zero(sum.get(), 1);
  for (std::size_t i : kept) {
    mpfr_set_ui(delta.get(), 1, MPFR_RNDN);
    for (std::size_t j = 0; j < rates.size(); ++j) {
      if (j == i) continue;
      mpfr_set_d(diff.get(), rates[j], MPFR_RNDN);
      mpfr_sub_d(diff.get(), diff.get(), rates[i], MPFR_RNDN);
      mpfr_set_d(tmp.get(), rates[j], MPFR_RNDN);
      mpfr_div(tmp.get(), tmp.get(), diff.get(), MPFR_RNDN);
      mpfr_mul(delta.get(), delta.get(), tmp.get(), MPFR_RNDN);
    }
    mpfr_set_d(ex.get(), -rates[i], MPFR_RNDN);
    mpfr_mul_d(ex.get(), ex.get(), y, MPFR_RNDN);
    mpfr_exp(ex.get(), ex.get(), MPFR_RNDN);
    mpfr_mul(delta.get(), delta.get(), ex.get(), MPFR_RNDN);
    mpfr_add(sum.get(), sum.get(), delta.get(), MPFR_RNDN);
  }
  return mpfr_get_d(sum.get(), MPFR_RNDN);
}

}  // namespace

double hypoexp_cdf(const HypoExpRates& rates, double y) {
  if (rates.empty()) throw DegenerateSumError("hypoexp_cdf: empty rate set");
  if (std::isnan(y) || y < 0.0) throw DomainError("hypoexp_cdf: y must be >= 0");
  if (y == 0.0) return 0.0;
  if (std::isinf(y)) return 1.0;

  const std::span<const double> lam = rates.values();
  const std::size_t n = lam.size();
  if (n == 1) return std::clamp(-std::expm1(-lam[0] * y), 0.0, 1.0);

  // Terms below exp(-kDrop) are invisible next to an O(1) survival value.
  constexpr double kDrop = 760.0;
  const double nm1 = static_cast<double>(n - 1);

  std::vector<std::size_t> kept;
  std::vector<double> terms;
  kept.reserve(n);
  terms.reserve(n);
  double max_log_term = -std::numeric_limits<double>::infinity();

  for (std::size_t i = 0; i < n; ++i) {
    // Bound log|delta_i| before paying for the O(n) product. A factor
    // rate_j / |rate_j - rate_i| is at most 2 when rate_j lies outside
    // (rate_i / 2, 2 rate_i); inside that window it is at most the factor of
    // the nearest neighbour on either side.
    double neighbour = 1.0;
    if (i + 1 < n) neighbour = std::max(neighbour, lam[i + 1] / (lam[i + 1] - lam[i]));
    if (i > 0) neighbour = std::max(neighbour, lam[i - 1] / (lam[i] - lam[i - 1]));
    const auto lo = std::upper_bound(lam.begin(), lam.end(), 0.5 * lam[i]);
    const auto hi = std::lower_bound(lam.begin(), lam.end(), 2.0 * lam[i]);
    const double close = static_cast<double>(hi - lo) - 1.0;
    const double bound = (nm1 - close) * std::numbers::ln2 + close * std::log(neighbour);
    const double exponent = -lam[i] * y;
    if (exponent + bound < -kDrop) continue;

    // delta_i as mantissa * 2^scale to survive long products.
    double mant = 1.0;
    long scale = 0;
    int since = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      mant *= lam[j] / (lam[j] - lam[i]);
      if (++since == 16) {
        int e = 0;
        mant = std::frexp(mant, &e);
        scale += e;
        since = 0;
      }
    }
    int e = 0;
    mant = std::frexp(mant, &e);
    scale += e;
    const double log_abs =
        std::log(std::abs(mant)) + static_cast<double>(scale) * std::numbers::ln2 + exponent;
    if (log_abs < -kDrop) continue;
    kept.push_back(i);
    const double t = std::copysign(std::exp(log_abs), mant);
    terms.push_back(t);
    max_log_term = std::max(max_log_term, log_abs);
  }

  double survival = 0.0;
  if (!kept.empty()) {
    // Neumaier summation of the kept terms.
    double comp = 0.0;
    for (double t : terms) {
      const double s = survival + t;
      comp += std::abs(survival) >= std::abs(t) ? (survival - s) + t : (t - s) + survival;
      survival = s;
    }
    survival += comp;

    // Cancellation loses about log10(max |term|) digits; past three of
    // them the double result is no longer trustworthy to 1e-10.
    constexpr double kMaxLogTerm = 6.9;  // ln(1e3)
    if (max_log_term > kMaxLogTerm) {
      const double digits = max_log_term / std::numbers::ln10 + 30.0;
      const auto bits = static_cast<mpfr_prec_t>(std::ceil(digits * 3.33)) + 64;
      survival = SurvivalExtended(lam, kept, y, bits);
    }
  }
  return std::clamp(1.0 - survival, 0.0, 1.0);
}

// ---------------------------------------------------------------------------

RootResult bisect_root_counted(const std::function<double(double)>& f, double lo,
                               double hi, double tol) {
  if (!(lo <= hi)) std::swap(lo, hi);
  const double flo = f(lo);
  const double fhi = f(hi);
  if (flo == 0.0) return {lo, 0};
  if (fhi == 0.0) return {hi, 0};
  if ((flo < 0.0) == (fhi < 0.0) || std::isnan(flo) || std::isnan(fhi)) {
    throw BracketError("bisect_root: no sign change on [" + std::to_string(lo) + ", " +
                       std::to_string(hi) + "]");
  }
  std::uintmax_t iterations = 400;
  const auto done = [tol](double a, double b) { return std::abs(b - a) <= tol; };
  const auto [a, b] = boost::math::tools::bisect(f, lo, hi, done, iterations);
  return {0.5 * (a + b), static_cast<int>(iterations)};
}

double bisect_root(const std::function<double(double)>& f, double lo, double hi,
                   double tol) {
  return bisect_root_counted(f, lo, hi, tol).x;
}

// ---------------------------------------------------------------------------

namespace {

constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a;
  double b;
  double value;
  double error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

// QUADPACK qk15 on [a, b] of the (already transformed) integrand g.
Panel Kronrod15(const std::function<double(double)>& g, double a, double b) {
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = g(centre);
  double resk = fc * kWgk[7];
  double resg = fc * kWg[3];
  double resabs = std::abs(resk);
  double fv1[7], fv2[7];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double f1 = g(centre - dx);
    const double f2 = g(centre + dx);
    fv1[j] = f1;
    fv2[j] = f2;
    resk += kWgk[j] * (f1 + f2);
    resabs += kWgk[j] * (std::abs(f1) + std::abs(f2));
    if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
  }
  const double reskh = 0.5 * resk;
  double resasc = kWgk[7] * std::abs(fc - reskh);
  for (int j = 0; j < 7; ++j) {
    resasc += kWgk[j] * (std::abs(fv1[j] - reskh) + std::abs(fv2[j] - reskh));
  }
  const double value = resk * half;
  resasc *= std::abs(half);
  resabs *= std::abs(half);
  double err = std::abs((resk - resg) * half);
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  const double uflow = std::numeric_limits<double>::min();
  const double eps = std::numeric_limits<double>::epsilon();
  if (resabs > uflow / (50.0 * eps)) err = std::max(eps * 50.0 * resabs, err);
  return {a, b, value, err};
}

}  // namespace

QuadratureResult integrate_radial(const std::function<double(double)>& f, double a,
                                  double b, std::span<const double> breakpoints,
                                  const QuadratureOptions& options) {
  if (std::isnan(a) || std::isnan(b) || std::isinf(a)) {
    throw DomainError("integrate_radial: invalid limits");
  }
  if (b == a) return {};
  if (b < a) throw DomainError("integrate_radial: b < a");

  const bool infinite = std::isinf(b);
  int evaluations = 0;
  std::function<double(double)> g;
  double lo = a, hi = b;
  if (infinite) {
    lo = 0.0;
    hi = 1.0;
    g = [&](double t) {
      ++evaluations;
      const double s = 1.0 - t;
      return f(a + t / s) / (s * s);
    };
  } else {
    g = [&](double r) {
      ++evaluations;
      return f(r);
    };
  }

  std::vector<double> cuts{lo};
  for (double p : breakpoints) {
    if (!(p > a) || !(p < b)) continue;
    cuts.push_back(infinite ? (p - a) / (1.0 + p - a) : p);
  }
  cuts.push_back(hi);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::priority_queue<Panel> panels;
  double total = 0.0, total_err = 0.0;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    Panel p = Kronrod15(g, cuts[k], cuts[k + 1]);
    total += p.value;
    total_err += p.error;
    panels.push(p);
  }

  const auto converged = [&] {
    return total_err <= std::max(options.abs_tol, options.rel_tol * std::abs(total));
  };
  int subdivisions = 0;
  while (!converged()) {
    if (subdivisions >= options.max_subdivisions || panels.empty()) {
      throw AccuracyError("integrate_radial: tolerance not met within subdivision budget",
                          total, total_err);
    }
    const Panel worst = panels.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      throw AccuracyError("integrate_radial: panel below floating-point resolution", total,
                          total_err);
    }
    panels.pop();
    const Panel left = Kronrod15(g, worst.a, mid);
    const Panel right = Kronrod15(g, mid, worst.b);
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    panels.push(left);
    panels.push(right);
    ++subdivisions;
    // Re-sum occasionally; the running totals drift after many updates.
    if (subdivisions % 64 == 0) {
      auto copy = panels;
      total = 0.0;
      total_err = 0.0;
      while (!copy.empty()) {
        total += copy.top().value;
        total_err += copy.top().error;
        copy.pop();
      }
    }
  }
  return {total, total_err, evaluations};
}

double integrate_radial(const std::function<double(double)>& f, double a, double b,
                        double tol) {
  QuadratureOptions options;
  options.rel_tol = tol;
  return integrate_radial(f, a, b, {}, options).value;
}

}  // namespace uavsec::mathkit
