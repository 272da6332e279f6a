// Copyright 2026 The qfreq Authors
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

namespace qfreq {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The time-local rates diverge because xi(t) vanishes.
class SingularRateError : public std::runtime_error {
 public:
  SingularRateError(const std::string& what, double time)
      : std::runtime_error(what), time_(time) {}
  double time() const noexcept { return time_; }

 private:
  double time_;
};

/// Dense representation requested beyond the memory guard.
class SizeError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// A result that should be a probability/energy is inconsistent beyond
/// rounding (e.g. a probability below -1e-14).
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Efficiency with a vanishing cost per round.
class UndefinedEfficiencyError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Budget does not cover a single protocol round.
class InsufficientBudgetError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Golden-section refinement did not reach tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double lo, double hi)
      : std::runtime_error(what), lo_(lo), hi_(hi) {}
  double bracket_lo() const noexcept { return lo_; }
  double bracket_hi() const noexcept { return hi_; }

 private:
  double lo_;
  double hi_;
};

}  // namespace qfreq
