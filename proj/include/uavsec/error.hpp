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

#include <stdexcept>
#include <string>

namespace uavsec {

// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Root bracket without a sign change.
class BracketError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Hypoexponential sum with no terms.
class DegenerateSumError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Quadrature that did not reach its tolerance within the subdivision budget.
class AccuracyError : public std::runtime_error {
 public:
  AccuracyError(const std::string& what, double best_estimate,
                double error_estimate)
      : std::runtime_error(what),
        best_estimate_(best_estimate),
        error_estimate_(error_estimate) {}

  double best_estimate() const noexcept { return best_estimate_; }
  double error_estimate() const noexcept { return error_estimate_; }

 private:
  double best_estimate_;
  double error_estimate_;
};

// The outage constraint cannot be met.
class InfeasibleError : public std::runtime_error {
 public:
  InfeasibleError(const std::string& what, double min_outage)
      : std::runtime_error(what), min_outage_(min_outage) {}

  // Smallest secrecy outage probability reached while searching.
  double min_outage() const noexcept { return min_outage_; }

 private:
  double min_outage_;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace uavsec
