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

#include "qfreq/blockstate.hpp"
#include "qfreq/channel.hpp"

namespace qfreq {

/// Average energies of one protocol round, H = (omega/2) sum_k sigma_z^(k).
struct EnergyLedger {
  double e_init = 0.0;
  double e_rho4 = 0.0;
  double e_rho6 = 0.0;
  double e_meas = 0.0;          // e_rho6 - e_rho4
  double surcharge = 0.0;       // optional constant per-round projection cost
  double cost_per_round = 0.0;  // e_init + e_meas + surcharge
};

/// omega n epsilon / 2: the work needed to take the thermal product state to
/// the zero-energy GHZ-diagonal probe. Throws DomainError for n < 1.
double init_cost(int n, double omega, double epsilon);

/// omega n kappa / 2.
double energy_rho4(int n, double omega, double kappa);

/// Probe energy after the pre-measurement unitaries:
///   omega/2 (n-1)(eps^2 eta_par^2 + kappa^2) + omega sum_m C(n-1,m) c_m cos(angle_m).
double energy_rho6(const ProbeBlocks& blocks, const NoiseParams& params, double t,
                   const MeasurementSetting& setting);

/// Same quantity summed block by block from the rho6 diagonal,
/// omega/2 sum_m C(n-1,m) [f_m (a_m + b_m) - 2 p1_m]. Used as a cross-check.
double energy_rho6_blockwise(const ProbeBlocks& blocks, const NoiseParams& params, double t,
                             const MeasurementSetting& setting);

EnergyLedger ledger(const NoiseParams& params, int n, double t,
                    const MeasurementSetting& setting, double surcharge = 0.0);

}  // namespace qfreq
