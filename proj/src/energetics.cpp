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

#include "qfreq/energetics.hpp"

#include <cmath>
#include <vector>

#include "qfreq/errors.hpp"
#include "qfreq/numeric.hpp"

namespace qfreq {

double init_cost(int n, double omega, double epsilon) {
  if (n < 1) throw DomainError("init_cost: n must be at least 1");
  return 0.5 * omega * n * epsilon;
}

double energy_rho4(int n, double omega, double kappa) { return 0.5 * omega * n * kappa; }

double energy_rho6(const ProbeBlocks& blocks, const NoiseParams& params, double t,
                   const MeasurementSetting& setting) {
  const int n = blocks.n();
  const ChannelSnapshot s = channel_at(params, t);
  const double eps = params.epsilon();
  const double omega = params.omega();
  const double phi = omega * t;

  std::vector<double> terms(static_cast<std::size_t>(n));
  for (int m = 0; m < n; ++m) {
    const BlockCoefficients& b = blocks.block(m);
    terms[static_cast<std::size_t>(m)] =
        b.weighted_c() * std::cos(readout_angle(b.f, phi, setting));
  }
  const double register_part =
      0.5 * omega * (n - 1) * (eps * eps * s.eta_par * s.eta_par + s.kappa * s.kappa);
  return register_part + omega * numeric::pairwise_sum(terms);
}

double energy_rho6_blockwise(const ProbeBlocks& blocks, const NoiseParams& params, double t,
                             const MeasurementSetting& setting) {
  const double omega = params.omega();
  const OutcomeDistribution p = readout_probabilities(blocks, omega * t, setting);
  std::vector<double> terms(static_cast<std::size_t>(blocks.n()));
  for (std::size_t m = 0; m < terms.size(); ++m) {
    // |0,x> has energy omega f / 2, |1,x> has omega (f - 2) / 2
    const double f = blocks.f_values()[m];
    terms[m] = f * blocks.weighted_population()[m] - 2.0 * p.weighted_p1[m];
  }
  return 0.5 * omega * numeric::pairwise_sum(terms);
}

EnergyLedger ledger(const NoiseParams& params, int n, double t,
                    const MeasurementSetting& setting, double surcharge) {
  if (!(t >= 0.0)) throw DomainError("ledger: t must be nonnegative");
  if (!(surcharge >= 0.0)) throw DomainError("ledger: surcharge must be nonnegative");
  const ChannelSnapshot s = channel_at(params, t);
  const ProbeBlocks blocks = block_coefficients(n, params.epsilon(), s);
  EnergyLedger out;
  out.e_init = init_cost(n, params.omega(), params.epsilon());
  out.e_rho4 = energy_rho4(n, params.omega(), s.kappa);
  out.e_rho6 = energy_rho6(blocks, params, t, setting);
  out.e_meas = out.e_rho6 - out.e_rho4;
  out.surcharge = surcharge;
  out.cost_per_round = out.e_init + out.e_meas + surcharge;
  return out;
}

}  // namespace qfreq
