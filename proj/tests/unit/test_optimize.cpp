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

#include <cmath>
#include <utility>
#include <vector>

#include <gtest/gtest.h>

#include "qfreq/errors.hpp"
#include "qfreq/metrology.hpp"
#include "qfreq/optimize.hpp"
#include "qfreq/parallel.hpp"
#include "support.hpp"

using namespace qfreq;
using qfreq::testing::RelClose;

TEST(Efficiency, EnergyEfficiencyFromLedgerAndQfi) {
  const NoiseParams p = qfreq::testing::reference_params();
  const double t = 0.8;
  const double value = eta_energy(p, 2, t);
  ASSERT_GT(value, 0.0);
  ASSERT_TRUE(std::isfinite(value));
  const EnergyLedger l = ledger(p, 2, t, optimal_setting(2, 1.0, t));
  const double expected = qfi_small_R(p, 2, t) / (l.e_init + l.e_meas);
  EXPECT_TRUE(RelClose(value, expected, 1e-15));

  const EfficiencyPoint pt = efficiency_point(p, 2, t);
  EXPECT_EQ(pt.eta_energy, value);
  EXPECT_EQ(pt.eta_time, pt.fisher / t);
  EXPECT_EQ(pt.fisher, qfi_small_R(p, 2, t));
}

TEST(Efficiency, ZeroCostIsUndefined) {
  EnergyLedger l;
  EXPECT_THROW(eta_energy(l, 0.0), UndefinedEfficiencyError);
  // the epsilon -> 0 limit cannot even be constructed
  EXPECT_THROW(NoiseParams(1e-300, 1e300, 1e-4, 5.0), DomainError);
}

TEST(Efficiency, TimeEfficiencyWithoutBiasIsZero) {
  const NoiseParams p(1.0, 1e300, 1e-4, 5.0);
  EXPECT_EQ(eta_time(p, 1, 1.0), 0.0);
  EXPECT_THROW(eta_time(p, 1, 0.0), DomainError);
}

TEST(Efficiency, ExactModeUsesCfiAtParityRule) {
  const NoiseParams p = qfreq::testing::reference_params();
  EXPECT_EQ(fisher_value(p, 4, 1.0, FisherMode::exact),
            cfi(p, 4, 1.0, optimal_setting(4, 1.0, 1.0), DerivativeMode::finite_difference));
}

TEST(OptimalTime, SingleAtomMatchesStationaryPointAndDenseScan) {
  const NoiseParams p = qfreq::testing::reference_params();
  const double r = p.ratio() / 2;
  const double lam = p.lambda();
  // d/dt [t eta_perp^2] = 0  <=>  eta_perp + 2 t eta_perp' = 0
  auto g = [&](double t) { return xi(r, lam, t) + 2.0 * t * xi_derivative(r, lam, t); };
  double lo = 1.0, hi = default_t_max(p, 1);
  ASSERT_GT(g(lo), 0.0);
  ASSERT_LT(g(hi), 0.0);
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) > 0 ? lo : hi) = mid;
  }
  const OptimalTime opt = optimal_time(p, 1, Objective::eta_time);
  EXPECT_TRUE(opt.converged);
  EXPECT_TRUE(RelClose(opt.t_star, lo, 1e-6));

  // brute force: 10^6 points on (0, t_max]
  const double t_max = default_t_max(p, 1);
  double best_t = 0.0, best = -1.0;
  for (int i = 1; i <= 1000000; ++i) {
    const double t = t_max * i / 1e6;
    const double eta = xi(r, lam, t);
    const double v = t * eta * eta;
    if (v > best) best = v, best_t = t;
  }
  EXPECT_NEAR(opt.t_star, best_t, 2 * t_max / 1e6);
  const double eps = p.epsilon();
  EXPECT_TRUE(RelClose(opt.value, best * eps * eps, 1e-6));
}

TEST(OptimalTime, LocalMaximality) {
  const NoiseParams p = qfreq::testing::reference_params();
  for (int n : {1, 2, 5, 20, 80}) {
    for (Objective obj : {Objective::eta_time, Objective::eta_energy}) {
      const OptimalTime opt = optimal_time(p, n, obj);
      auto eval = [&](double t) {
        return obj == Objective::eta_time ? eta_time(p, n, t) : eta_energy(p, n, t);
      };
      EXPECT_GE(opt.value, eval(0.9 * opt.t_star)) << n;
      EXPECT_GE(opt.value, eval(1.1 * opt.t_star)) << n;
      EXPECT_GE(opt.value, eval(opt.bracket_lo));
      EXPECT_GE(opt.value, eval(opt.bracket_hi));
      EXPECT_EQ(opt.objective, obj);
    }
  }
}

TEST(OptimalTime, DeterministicAcrossCallsAndThreads) {
  const NoiseParams p = qfreq::testing::reference_params();
  const OptimalTime a = optimal_time(p, 30, Objective::eta_energy);
  const OptimalTime b = optimal_time(p, 30, Objective::eta_energy);
  EXPECT_EQ(a.t_star, b.t_star);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.steps, b.steps);
  const std::vector<double> serial = parallel_map<double>(
      8, 1, [&](std::size_t i) { return optimal_time(p, 10 + 5 * static_cast<int>(i), Objective::eta_time).t_star; });
  const std::vector<double> threaded = parallel_map<double>(
      8, 4, [&](std::size_t i) { return optimal_time(p, 10 + 5 * static_cast<int>(i), Objective::eta_time).t_star; });
  EXPECT_EQ(serial, threaded);
}

TEST(OptimalTime, DimensionlessProductIsScaleInvariant) {
  const NoiseParams p = qfreq::testing::reference_params();
  for (double s : {0.25, 3.0}) {
    const NoiseParams q(s * p.omega(), s * p.temperature(), s * p.gamma0(), s * p.lambda());
    for (Objective obj : {Objective::eta_time, Objective::eta_energy}) {
      const double a = p.omega() * optimal_time(p, 6, obj).t_star;
      const double b = q.omega() * optimal_time(q, 6, obj).t_star;
      EXPECT_TRUE(RelClose(a, b, 1e-7)) << s;
    }
  }
}

TEST(OptimalTime, Errors) {
  const NoiseParams p = qfreq::testing::reference_params();
  EXPECT_THROW(optimal_time(p, 0, Objective::eta_time), DomainError);
  EXPECT_THROW(optimal_time(NoiseParams(1.0, 200.0, 0.0, 5.0), 3, Objective::eta_time), DomainError);
  TimeSearchOptions tight;
  tight.max_steps = 3;
  try {
    optimal_time(p, 3, Objective::eta_time, FisherMode::small_R, tight);
    FAIL() << "expected ConvergenceError";
  } catch (const ConvergenceError& e) {
    EXPECT_LT(e.bracket_lo(), e.bracket_hi());
  }
}

TEST(OptimalTime, MaximizerPrefersEarliestOfEqualPeaks) {
  // two identical bumps in log t
  auto f = [](double t) {
    const double a = std::log(t / 0.01), b = std::log(t / 1.0);
    return std::exp(-a * a) + std::exp(-b * b);
  };
  const OptimalTime opt = maximize_on_log_grid(f, 1e-4, 1e2, TimeSearchOptions{});
  EXPECT_LT(opt.t_star, 0.1);
  EXPECT_TRUE(RelClose(opt.t_star, 0.01, 1e-3));
}

TEST(Scan, EnergyEfficiencyDecreasesWithSize) {
  const NoiseParams p = qfreq::testing::reference_params();
  double prev = INFINITY;
  for (int n = 2; n <= 50; ++n) {
    const double v = optimal_time(p, n, Objective::eta_energy).value;
    EXPECT_LT(v, prev) << n;
    prev = v;
  }
}

TEST(Scan, EnergyEfficiencyDecreasesWithLambda) {
  const NoiseParams p = qfreq::testing::reference_params();
  double prev = INFINITY;
  for (int k = 0; k <= 20; ++k) {
    const double lam = std::pow(100.0, k / 20.0);
    const double v = optimal_time(p.with_lambda(lam), 2, Objective::eta_energy).value;
    EXPECT_LT(v, prev) << lam;
    prev = v;
  }
}

TEST(JointOptimum, NoWorseThanParityRule) {
  const NoiseParams p(1.0, 2.0, 0.02, 1.0);
  for (Objective obj : {Objective::eta_time, Objective::eta_energy}) {
    const OptimalTime start = optimal_time(p, 3, obj, FisherMode::exact);
    const JointOptimum j = optimize_joint(p, 3, obj);
    EXPECT_GE(j.value, start.value * (1 - 1e-9));
    EXPECT_EQ(j.sweeps, 3);
  }
}

TEST(RoundsAndBound, Examples) {
  EnergyLedger l;
  l.cost_per_round = 0.0125;
  const RoundsBound r = rounds_and_bound(100.0, l, 2.0);
  EXPECT_EQ(r.rounds, 8000);
  EXPECT_DOUBLE_EQ(r.delta_omega, 1.0 / std::sqrt(16000.0));
  EXPECT_DOUBLE_EQ(rounds_and_bound(100.0, l, 8.0).delta_omega, 0.5 * r.delta_omega);
  EXPECT_THROW(rounds_and_bound(0.01, l, 2.0), InsufficientBudgetError);
  EXPECT_THROW(rounds_and_bound(-1.0, l, 2.0), DomainError);
  EXPECT_THROW(rounds_and_bound(1.0, l, 0.0), DomainError);
  l.cost_per_round = 0.0;
  EXPECT_THROW(rounds_and_bound(1.0, l, 1.0), UndefinedEfficiencyError);
}

TEST(ScalingFit, ExactPowerLaw) {
  std::vector<std::pair<double, double>> pts;
  for (int n = 3; n <= 40; n += 3) pts.emplace_back(n, 7.0 * n * n * n);
  const ScalingFit fit = scaling_fit(pts);
  EXPECT_NEAR(fit.exponent, 3.0, 1e-10);
  EXPECT_NEAR(fit.intercept, std::log(7.0), 1e-10);
  EXPECT_NEAR(fit.r_squared, 1.0, 1e-12);
  EXPECT_EQ(fit.n_min, 3.0);
  EXPECT_EQ(fit.n_max, 39.0);
}

TEST(ScalingFit, Errors) {
  EXPECT_THROW(scaling_fit({{1, 1}, {2, 2}}), DomainError);
  EXPECT_THROW(scaling_fit({{1, 1}, {2, 0}, {3, 3}}), DomainError);
}

TEST(ParallelMap, RethrowsLowestIndexFailure) {
  try {
    parallel_map<int>(50, 4, [](std::size_t i) -> int {
      if (i == 7 || i == 31) throw std::runtime_error(std::to_string(i));
      return static_cast<int>(i);
    });
    FAIL();
  } catch (const std::runtime_error& e) {
    EXPECT_STREQ(e.what(), "7");
  }
}
