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

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "qfreq/energetics.hpp"
#include "qfreq/errors.hpp"
#include "qfreq/oracle.hpp"

namespace qfreq::oracle {

namespace {

struct Draw {
  NoiseParams params;
  int n;
  double t;
  MeasurementSetting setting;
};

// Parameters inside the CP region: R < 1/4 and epsilon <= 1/2 (for larger
// biases the cone condition can fail even below the threshold).
Draw random_draw(std::mt19937_64& rng, int n_min, int n_max) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> size(n_min, n_max);
  const double omega = 0.5 + 1.5 * unit(rng);
  const double eps = 0.01 + 0.49 * unit(rng);
  const double temperature = omega / (2.0 * std::atanh(eps));
  const double lambda = 0.5 * std::pow(100.0, unit(rng));
  const double ratio = 0.24 * unit(rng);
  const double gamma0 = ratio * lambda * std::tanh(omega / (2.0 * temperature));
  const double t = 0.02 * std::pow(250.0, unit(rng));
  MeasurementSetting setting;
  setting.zeta1 = 2.0 * std::numbers::pi * unit(rng);
  setting.zeta2 = 2.0 * std::numbers::pi * unit(rng);
  setting.omega_bar = omega;
  const int n = size(rng);
  return {NoiseParams(omega, temperature, gamma0, lambda), n, t, setting};
}

void record(CheckResult& c, double deviation) {
  if (!(deviation <= c.max_deviation)) c.max_deviation = deviation;  // NaN sticks
}

}  // namespace

bool VerifyReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

VerifyReport verify_equivalence(const VerifyOptions& options) {
  if (options.n_min < 1 || options.n_max < options.n_min) {
    throw DomainError("verify_equivalence: invalid size range");
  }
  if (options.n_max > 6) {
    std::ostringstream msg;
    msg << "verify_equivalence: n = " << options.n_max << " exceeds the verification limit 6";
    throw SizeError(msg.str());
  }
  if (options.draws < 1) throw DomainError("verify_equivalence: need at least one draw");

  CheckResult probs{"probabilities", 0.0, 1e-10, false, true};
  CheckResult e4{"energy_rho4", 0.0, 1e-10, false, true};
  CheckResult e6{"energy_rho6", 0.0, 1e-10, false, true};
  CheckResult fisher{"cfi", 0.0, 1e-6, true, true};

  std::mt19937_64 rng(options.seed);
  for (int k = 0; k < options.draws; ++k) {
    const Draw d = random_draw(rng, options.n_min, options.n_max);
    const ChannelSnapshot snap = channel_at(d.params, d.t);
    ProbeBlocks blocks = block_coefficients(d.n, d.params.epsilon(), snap);
    if (options.fault == Fault::flip_coherence_sign) blocks = blocks.with_flipped_coherence();

    const DenseState rho4 = evolve_dense(prepare_rho3_dense(d.n, d.params.epsilon()), snap);
    const DenseState rho6 = premeasure_dense(rho4, d.setting);
    const std::vector<double> dense_p = probabilities(rho6);
    const OutcomeDistribution analytic = readout_probabilities(blocks, snap.phi, d.setting);

    const std::size_t half = dense_p.size() / 2;
    for (std::size_t x = 0; x < half; ++x) {
      const int m = std::popcount(x);
      record(probs, std::abs(dense_p[x] - analytic.p0(m)));
      record(probs, std::abs(dense_p[half + x] - analytic.p1(m)));
    }

    const double omega = d.params.omega();
    record(e4, std::abs(energy(rho4, omega) - energy_rho4(d.n, omega, snap.kappa)));
    record(e6, std::abs(energy(rho6, omega) - energy_rho6(blocks, d.params, d.t, d.setting)));

    const double dense_f = cfi_dense(d.params, d.n, d.t, d.setting);
    const double analytic_f = cfi(d.params, d.n, d.t, d.setting, DerivativeMode::finite_difference);
    const double scale = std::max(std::abs(dense_f), 1e-300);
    record(fisher, std::abs(dense_f - analytic_f) / scale);
  }

  VerifyReport report;
  report.draws = options.draws;
  for (CheckResult* c : {&probs, &e4, &e6, &fisher}) {
    c->passed = c->max_deviation <= c->tolerance;
    report.checks.push_back(*c);
  }
  return report;
}

}  // namespace qfreq::oracle
