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

#include <cstdint>
#include <utility>
#include <vector>

#include "qfreq/blockstate.hpp"
#include "qfreq/channel.hpp"
#include "qfreq/energetics.hpp"

namespace qfreq {

/// Fisher value used by the efficiencies. small_R is qfi_small_R (cheap);
/// exact is cfi_exact at the parity-rule setting with omega_bar = omega.
enum class FisherMode { small_R, exact };

enum class Objective { eta_time, eta_energy };

struct EfficiencyPoint {
  int n = 0;
  double t = 0.0;
  double fisher = 0.0;
  FisherMode mode = FisherMode::small_R;
  double eta_time = 0.0;
  double eta_energy = 0.0;
};

/// Fisher information for `mode` at the optimal setting. Throws for t <= 0.
double fisher_value(const NoiseParams& params, int n, double t, FisherMode mode);

/// fisher / cost_per_round. Throws UndefinedEfficiencyError when the cost
/// is not positive.
double eta_energy(const EnergyLedger& ledger, double fisher);
double eta_energy(const NoiseParams& params, int n, double t,
                  FisherMode mode = FisherMode::small_R);

/// fisher / t.
double eta_time(const NoiseParams& params, int n, double t,
                FisherMode mode = FisherMode::small_R);

EfficiencyPoint efficiency_point(const NoiseParams& params, int n, double t,
                                 FisherMode mode = FisherMode::small_R);

struct TimeSearchOptions {
  double t_max = 0.0;            // <= 0 selects 20 / (lambda R max(1, n))
  double t_min_fraction = 1e-6;  // grid starts at t_max * t_min_fraction
  int grid_points = 200;
  double relative_tolerance = 1e-8;
  int max_steps = 500;
};

struct OptimalTime {
  double t_star = 0.0;
  Objective objective = Objective::eta_time;
  double value = 0.0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  bool converged = false;
  int steps = 0;
};

/// Default upper end of the time search, 20 / (lambda R max(1, n)).
/// Throws DomainError when gamma0 = 0 (no decay, unbounded efficiency).
double default_t_max(const NoiseParams& params, int n);

/// Global maximiser of objective(t) over (0, t_max]: log grid, then golden
/// section on the cell around the best grid point (smallest t wins ties).
/// Throws ConvergenceError after max_steps refinement steps.
OptimalTime optimal_time(const NoiseParams& params, int n, Objective objective,
                         FisherMode mode = FisherMode::small_R,
                         const TimeSearchOptions& options = {});

/// Generic version used by the above; exposed for tests.
template <class F>
OptimalTime maximize_on_log_grid(F&& objective, double t_lo, double t_hi,
                                 const TimeSearchOptions& options);

/// Jointly tuned (t, zeta1, zeta2) by coordinate ascent on cfi_exact,
/// starting from the parity rule at t_star of the eta objective.
struct JointOptimum {
  double t = 0.0;
  MeasurementSetting setting;
  double value = 0.0;
  int sweeps = 0;
};
JointOptimum optimize_joint(const NoiseParams& params, int n, Objective objective,
                            int sweeps = 3);

struct RoundsBound {
  std::int64_t rounds = 0;
  double delta_omega = 0.0;
};

/// M = floor(budget / cost_per_round) and delta omega >= 1 / sqrt(M F).
/// Throws InsufficientBudgetError when M = 0.
RoundsBound rounds_and_bound(double total_energy, const EnergyLedger& ledger, double fisher);

struct ScalingFit {
  double exponent = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  double n_min = 0.0;
  double n_max = 0.0;
};

/// Least squares on (log n, log value). Needs >= 3 points, all positive.
ScalingFit scaling_fit(const std::vector<std::pair<double, double>>& points);

}  // namespace qfreq

#include "qfreq/detail/optimize_impl.hpp"
