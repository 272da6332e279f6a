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

// Template body of maximize_on_log_grid; included from optimize.hpp.

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "qfreq/errors.hpp"

namespace qfreq {

template <class F>
OptimalTime maximize_on_log_grid(F&& objective, double t_lo, double t_hi,
                                 const TimeSearchOptions& options) {
  if (!(t_lo > 0.0) || !(t_hi > t_lo)) {
    throw DomainError("maximize_on_log_grid: need 0 < t_lo < t_hi");
  }
  if (options.grid_points < 3) throw DomainError("maximize_on_log_grid: grid too small");

  const int points = options.grid_points;
  const double log_lo = std::log(t_lo);
  const double log_step = (std::log(t_hi) - log_lo) / (points - 1);
  std::vector<double> grid(static_cast<std::size_t>(points));
  std::vector<double> values(grid.size());
  for (int i = 0; i < points; ++i) {
    grid[static_cast<std::size_t>(i)] = i == points - 1 ? t_hi : std::exp(log_lo + i * log_step);
    values[static_cast<std::size_t>(i)] = objective(grid[static_cast<std::size_t>(i)]);
  }

  double best_value = values[0];
  for (double v : values) best_value = std::max(best_value, v);
  // smallest t among the (near-)maxima
  std::size_t best = 0;
  const double tie = 1e-10 * std::abs(best_value);
  while (values[best] < best_value - tie) ++best;

  double a = grid[best == 0 ? 0 : best - 1];
  double b = grid[std::min(best + 1, grid.size() - 1)];

  OptimalTime out;
  const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - (b - a) * inv_phi;
  double d = a + (b - a) * inv_phi;
  double fc = objective(c);
  double fd = objective(d);
  int steps = 0;
  while (b - a > options.relative_tolerance * 0.5 * (a + b)) {
    if (++steps > options.max_steps) {
      std::ostringstream msg;
      msg << "optimal_time: no convergence after " << options.max_steps
          << " golden-section steps, bracket [" << a << ", " << b << "]";
      throw ConvergenceError(msg.str(), a, b);
    }
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - (b - a) * inv_phi;
      fc = objective(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + (b - a) * inv_phi;
      fd = objective(d);
    }
  }

  out.t_star = fc >= fd ? c : d;
  out.value = fc >= fd ? fc : fd;
  if (values[best] > out.value) {
    out.t_star = grid[best];
    out.value = values[best];
  }
  out.bracket_lo = grid[best == 0 ? 0 : best - 1];
  out.bracket_hi = grid[std::min(best + 1, grid.size() - 1)];
  out.converged = true;
  out.steps = steps;
  return out;
}

}  // namespace qfreq
