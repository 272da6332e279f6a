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

#include "qfreq/optimize.hpp"

#include <cmath>
#include <functional>
#include <numbers>

#include "qfreq/errors.hpp"
#include "qfreq/metrology.hpp"
#include "qfreq/numeric.hpp"

namespace qfreq {

namespace {

void require_positive_time(double t, const char* who) {
  if (!(t > 0.0)) throw DomainError(std::string(who) + ": t must be positive");
}

double objective_value(const NoiseParams& params, int n, double t, Objective objective,
                       FisherMode mode) {
  return objective == Objective::eta_time ? eta_time(params, n, t, mode)
                                          : eta_energy(params, n, t, mode);
}

// Maximum of a periodic function on [0, 2 pi): uniform grid, then golden
// section on the neighbouring cells.
double maximize_angle(const std::function<double(double)>& f, int grid_points) {
  const double two_pi = 2.0 * std::numbers::pi;
  const double step = two_pi / grid_points;
  int best = 0;
  double best_value = f(0.0);
  for (int i = 1; i < grid_points; ++i) {
    const double v = f(i * step);
    if (v > best_value) {
      best_value = v;
      best = i;
    }
  }
  double a = (best - 1) * step;
  double b = (best + 1) * step;
  const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - (b - a) * inv_phi;
  double d = a + (b - a) * inv_phi;
  double fc = f(c);
  double fd = f(d);
  for (int k = 0; k < 200 && b - a > 1e-12; ++k) {
    if (fc >= fd) {
      b = d, d = c, fd = fc;
      c = b - (b - a) * inv_phi;
      fc = f(c);
    } else {
      a = c, c = d, fc = fd;
      d = a + (b - a) * inv_phi;
      fd = f(d);
    }
  }
  const double arg = fc >= fd ? c : d;
  return std::max(fc, fd) >= best_value ? arg : best * step;
}

}  // namespace

double fisher_value(const NoiseParams& params, int n, double t, FisherMode mode) {
  require_positive_time(t, "fisher_value");
  if (mode == FisherMode::small_R) return qfi_small_R(params, n, t);
  return cfi(params, n, t, optimal_setting(n, params.omega(), t),
             DerivativeMode::finite_difference);
}

double eta_energy(const EnergyLedger& ledger, double fisher) {
  if (!(ledger.cost_per_round > 0.0)) {
    throw UndefinedEfficiencyError("eta_energy: cost per round is not positive");
  }
  return fisher / ledger.cost_per_round;
}

double eta_energy(const NoiseParams& params, int n, double t, FisherMode mode) {
  require_positive_time(t, "eta_energy");
  const EnergyLedger l = ledger(params, n, t, optimal_setting(n, params.omega(), t));
  return eta_energy(l, fisher_value(params, n, t, mode));
}

double eta_time(const NoiseParams& params, int n, double t, FisherMode mode) {
  require_positive_time(t, "eta_time");
  return fisher_value(params, n, t, mode) / t;
}

EfficiencyPoint efficiency_point(const NoiseParams& params, int n, double t, FisherMode mode) {
  require_positive_time(t, "efficiency_point");
  EfficiencyPoint p;
  p.n = n;
  p.t = t;
  p.mode = mode;
  p.fisher = fisher_value(params, n, t, mode);
  p.eta_time = p.fisher / t;
  p.eta_energy = eta_energy(ledger(params, n, t, optimal_setting(n, params.omega(), t)), p.fisher);
  return p;
}

double default_t_max(const NoiseParams& params, int n) {
  if (!(params.gamma0() > 0.0)) {
    throw DomainError("default_t_max: gamma0 = 0 gives no decay, so the efficiency has no maximum");
  }
  return 20.0 / (params.lambda() * params.ratio() * std::max(1, n));
}

OptimalTime optimal_time(const NoiseParams& params, int n, Objective objective, FisherMode mode,
                         const TimeSearchOptions& options) {
  if (n < 1) throw DomainError("optimal_time: n must be at least 1");
  const double t_max = options.t_max > 0.0 ? options.t_max : default_t_max(params, n);
  OptimalTime out = maximize_on_log_grid(
      [&](double t) { return objective_value(params, n, t, objective, mode); },
      t_max * options.t_min_fraction, t_max, options);
  out.objective = objective;
  return out;
}

JointOptimum optimize_joint(const NoiseParams& params, int n, Objective objective, int sweeps) {
  const double omega = params.omega();
  const OptimalTime start = optimal_time(params, n, objective, FisherMode::exact);

  // zeta1 = pi/2 - omega t + offset, so the offset stays meaningful as t moves
  double t = start.t_star;
  double offset = 0.0;
  double zeta2 = optimal_setting(n, omega, t).zeta2;
  auto setting_at = [&](double tt, double off, double z2) {
    MeasurementSetting s = optimal_setting(n, omega, tt);
    s.zeta1 += off;
    s.zeta2 = z2;
    return s;
  };
  auto value = [&](double tt, double off, double z2) {
    const MeasurementSetting s = setting_at(tt, off, z2);
    const double f = cfi(params, n, tt, s, DerivativeMode::finite_difference);
    if (objective == Objective::eta_time) return f / tt;
    return eta_energy(ledger(params, n, tt, s), f);
  };

  constexpr int kAngleGrid = 721;
  for (int sweep = 0; sweep < sweeps; ++sweep) {
    zeta2 = maximize_angle([&](double z) { return value(t, offset, z); }, kAngleGrid);
    offset = maximize_angle([&](double o) { return value(t, o, zeta2); }, kAngleGrid);
    TimeSearchOptions local;
    local.grid_points = 41;
    t = maximize_on_log_grid([&](double tt) { return value(tt, offset, zeta2); }, t / 3.0,
                             t * 3.0, local)
            .t_star;
  }
  JointOptimum out;
  out.t = t;
  out.setting = setting_at(t, offset, zeta2);
  out.value = value(t, offset, zeta2);
  out.sweeps = sweeps;
  return out;
}

RoundsBound rounds_and_bound(double total_energy, const EnergyLedger& ledger, double fisher) {
  if (!(total_energy > 0.0)) throw DomainError("rounds_and_bound: budget must be positive");
  if (!(ledger.cost_per_round > 0.0)) {
    throw UndefinedEfficiencyError("rounds_and_bound: cost per round is not positive");
  }
  if (!(fisher > 0.0)) throw DomainError("rounds_and_bound: Fisher information must be positive");
  const double m = std::floor(total_energy / ledger.cost_per_round);
  if (m < 1.0) {
    throw InsufficientBudgetError("rounds_and_bound: budget does not cover one round");
  }
  RoundsBound out;
  out.rounds = static_cast<std::int64_t>(m);
  out.delta_omega = 1.0 / std::sqrt(m * fisher);
  return out;
}

ScalingFit scaling_fit(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 3) throw DomainError("scaling_fit: need at least 3 points");
  std::vector<double> x, y;
  x.reserve(points.size());
  y.reserve(points.size());
  ScalingFit out;
  out.n_min = points.front().first;
  out.n_max = points.front().first;
  for (const auto& [n, v] : points) {
    if (!(n > 0.0) || !(v > 0.0)) throw DomainError("scaling_fit: values must be positive");
    x.push_back(std::log(n));
    y.push_back(std::log(v));
    out.n_min = std::min(out.n_min, n);
    out.n_max = std::max(out.n_max, n);
  }
  const numeric::LineFit fit = numeric::fit_line(x, y);
  out.exponent = fit.slope;
  out.intercept = fit.intercept;
  out.r_squared = fit.r_squared;
  return out;
}

}  // namespace qfreq
