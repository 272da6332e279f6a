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

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "qfreq/channel.hpp"

namespace qfreq::testing {

inline ::testing::AssertionResult RelClose(double actual, double expected, double rel) {
  const double scale = std::max(std::abs(expected), 1e-300);
  const double err = std::abs(actual - expected) / scale;
  if (err <= rel) return ::testing::AssertionSuccess();
  return ::testing::AssertionFailure() << "actual " << actual << " vs expected " << expected
                                       << ", relative error " << err << " > " << rel;
}

/// Reference parameters omega = 1, T = 200, gamma0 = 1e-4, lambda = 5.
inline NoiseParams reference_params() { return {1.0, 200.0, 1e-4, 5.0}; }

/// Random parameters with R < 1/4 and epsilon in [eps_lo, eps_hi].
inline NoiseParams random_params(std::mt19937_64& rng, double eps_lo = 0.01,
                                 double eps_hi = 0.5, double r_max = 0.249) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double omega = 0.5 + 1.5 * u(rng);
  const double eps = eps_lo + (eps_hi - eps_lo) * u(rng);
  const double temperature = omega / (2.0 * std::atanh(eps));
  const double lambda = 0.5 * std::pow(100.0, u(rng));
  const double ratio = r_max * u(rng);
  return {omega, temperature, ratio * lambda * std::tanh(omega / (2.0 * temperature)), lambda};
}

}  // namespace qfreq::testing
