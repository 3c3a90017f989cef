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

#include "uavsec/estimate.hpp"

#include <algorithm>
#include <cmath>

namespace uavsec {

namespace {
constexpr double kZ = 1.959963984540054;
}

std::string_view MethodName(Method m) {
  switch (m) {
    case Method::kClosedForm:
      return "closed-form";
    case Method::kSemiAnalytic:
      return "semi-analytic";
    case Method::kMonteCarlo:
      return "monte-carlo";
  }
  return "unknown";
}

MetricEstimate ProportionEstimate(std::uint64_t hits, std::uint64_t n) {
  MetricEstimate e;
  e.method = Method::kMonteCarlo;
  e.samples = n;
  if (n == 0) return e;
  const double nn = static_cast<double>(n);
  const double p = static_cast<double>(hits) / nn;
  e.value = p;
  const double edge = 5.0 / nn;
  if (p <= edge || p >= 1.0 - edge) {
    const double z2 = kZ * kZ;
    e.half_width =
        kZ / (1.0 + z2 / nn) * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn));
  } else {
    e.half_width = kZ * std::sqrt(p * (1.0 - p) / nn);
  }
  return e;
}

MetricEstimate MeanEstimate(double sum, double sum_sq, std::uint64_t n, Method method) {
  MetricEstimate e;
  e.method = method;
  e.samples = n;
  if (n == 0) return e;
  const double nn = static_cast<double>(n);
  e.value = sum / nn;
  if (n > 1) {
    const double var = std::max(0.0, (sum_sq - sum * e.value) / (nn - 1.0));
    e.half_width = kZ * std::sqrt(var / nn);
  }
  return e;
}

}  // namespace uavsec
