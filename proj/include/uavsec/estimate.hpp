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

#include <cstdint>
#include <string_view>

namespace uavsec {

enum class Method { kClosedForm, kSemiAnalytic, kMonteCarlo };

std::string_view MethodName(Method m);

// A probability or capacity with its 95% confidence half-width (0 for
// closed forms).
struct MetricEstimate {
  double value = 0.0;
  Method method = Method::kClosedForm;
  double half_width = 0.0;
  std::uint64_t samples = 0;
};

// Fraction of `hits` among `n` Bernoulli trials. Uses the normal
// approximation, or the Wilson interval when the fraction is within 5/n of
// 0 or 1 (where the normal interval collapses).
MetricEstimate ProportionEstimate(std::uint64_t hits, std::uint64_t n);

// Sample mean with the normal-approximation half-width 1.96 s / sqrt(n).
MetricEstimate MeanEstimate(double sum, double sum_sq, std::uint64_t n, Method method);

inline MetricEstimate Scaled(MetricEstimate e, double factor) {
  e.value *= factor;
  e.half_width *= factor;
  return e;
}

}  // namespace uavsec
