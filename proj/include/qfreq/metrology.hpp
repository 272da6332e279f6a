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

#include <vector>

#include "qfreq/blockstate.hpp"
#include "qfreq/channel.hpp"

namespace qfreq {

/// How d/d omega is taken. finite_difference follows omega through epsilon,
/// R, the channel and the phase; frozen_R_epsilon differentiates the phase
/// only, treating R and epsilon as constants.
enum class DerivativeMode { finite_difference, frozen_R_epsilon };

/// Relative step (times omega) of the central differences.
inline constexpr double kDefaultRelativeStep = 1e-6;

struct FisherReport {
  double cfi_exact = 0.0;
  double cfi_small_R = 0.0;
  double qfi_exact = 0.0;
  double qfi_small_R = 0.0;
  DerivativeMode derivative_mode = DerivativeMode::finite_difference;
};

/// Eigen-decomposition of one 2x2 block [[a, z], [conj z, b]].
/// Eigenvectors are |+> = (cos h, e^{i arg z'} sin h), |-> = (-sin h, ...)
/// with h the mixing half-angle; only the parameters are stored.
struct BlockEigen {
  double nu_plus = 0.0;
  double nu_minus = 0.0;
  double gap = 0.0;          // sqrt((a - b)^2 + 4 |z|^2)
  double mixing_angle = 0.0; // 2h, atan2(2|z|, a - b)
  double phase = 0.0;        // arg z
};

struct BlockEigensystem {
  std::vector<BlockEigen> blocks;  // unweighted, one per register weight
};

/// Eigensystem of the evolved blocks with coherence phase -f (phi + zeta1).
BlockEigensystem block_eigensystem(const ProbeBlocks& blocks, double phi, double zeta1);

/// Fisher information of the energy-basis readout. Throws DomainError for t <= 0.
double cfi(const NoiseParams& params, int n, double t, const MeasurementSetting& setting,
           DerivativeMode mode, double relative_step = kDefaultRelativeStep);

/// Classical Fisher information from grouped probabilities and their
/// derivatives (multiplicity-weighted). Shared with the dense oracle.
double classical_fisher(const std::vector<double>& p0, const std::vector<double>& p1,
                        const std::vector<double>& d0, const std::vector<double>& d1);

/// sum_m C(n-1,m) 4 (n-2m)^2 t^2 c_m^2 / (a_m + b_m).
double qfi_small_R(const NoiseParams& params, int n, double t);
double qfi_small_R(const ProbeBlocks& blocks, double t);

/// Blockwise QFI of the evolved probe. In frozen mode the derivative of each
/// block is the analytic phase derivative.
double qfi_exact(const NoiseParams& params, int n, double t,
                 DerivativeMode mode = DerivativeMode::finite_difference,
                 double relative_step = kDefaultRelativeStep);

/// zeta1 = pi/2 - omega_bar t; zeta2 = pi/2 for even n and 0 for odd n.
MeasurementSetting optimal_setting(int n, double omega_bar, double t);

FisherReport fisher_report(const NoiseParams& params, int n, double t,
                           const MeasurementSetting& setting,
                           DerivativeMode mode = DerivativeMode::finite_difference);

}  // namespace qfreq
