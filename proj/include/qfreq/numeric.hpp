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
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

namespace qfreq::numeric {

/// Pairwise (cascade) summation. The split point is fixed by the length
/// alone, so results are reproducible for a given input order.
double pairwise_sum(std::span<const double> values);

/// log(exp(a) + exp(b)) without overflow.
inline double log_add_exp(double a, double b) {
  if (a == -std::numeric_limits<double>::infinity()) return b;
  if (b == -std::numeric_limits<double>::infinity()) return a;
  const double hi = a > b ? a : b;
  const double lo = a > b ? b : a;
  return hi + std::log1p(std::exp(lo - hi));
}

/// exp(a) - exp(b) evaluated as sign * exp(log_magnitude).
struct SignedLog {
  int sign = 0;  // -1, 0, +1
  double log_magnitude = -std::numeric_limits<double>::infinity();

  double value() const { return sign == 0 ? 0.0 : sign * std::exp(log_magnitude); }
  /// value() * exp(shift), computed without intermediate underflow.
  double scaled(double shift) const {
    return sign == 0 ? 0.0 : sign * std::exp(log_magnitude + shift);
  }
};

/// exp(a) - exp(b) where the difference a - b is supplied separately so the
/// caller can pass an exactly-computed gap (avoids cancellation when a ~ b).
inline SignedLog log_sub_exp(double a, double b, double a_minus_b) {
  if (a_minus_b == 0.0) return {};
  const double hi = a_minus_b > 0 ? a : b;
  const double gap = std::abs(a_minus_b);
  return {a_minus_b > 0 ? 1 : -1, hi + std::log(-std::expm1(-gap))};
}

/// Central difference with one level of Richardson extrapolation:
/// (4 D(h/2) - D(h)) / 3, error O(h^4).
template <class F>
double richardson_derivative(F&& f, double x, double h) {
  const double d1 = (f(x + h) - f(x - h)) / (2.0 * h);
  const double h2 = 0.5 * h;
  const double d2 = (f(x + h2) - f(x - h2)) / (2.0 * h2);
  return (4.0 * d2 - d1) / 3.0;
}

/// Elementwise Richardson derivative of a vector-valued function.
template <class F>
std::vector<double> richardson_gradient(F&& f, double x, double h) {
  const std::vector<double> fp = f(x + h);
  const std::vector<double> fm = f(x - h);
  const std::vector<double> fp2 = f(x + 0.5 * h);
  const std::vector<double> fm2 = f(x - 0.5 * h);
  std::vector<double> out(fp.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double d1 = (fp[i] - fm[i]) / (2.0 * h);
    const double d2 = (fp2[i] - fm2[i]) / h;
    out[i] = (4.0 * d2 - d1) / 3.0;
  }
  return out;
}

/// Least-squares line y = slope * x + intercept.
struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

LineFit fit_line(std::span<const double> x, std::span<const double> y);

}  // namespace qfreq::numeric
