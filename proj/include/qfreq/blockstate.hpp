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

#include <complex>
#include <span>
#include <vector>

#include "qfreq/channel.hpp"
#include "qfreq/numeric.hpp"

namespace qfreq {

/// Readout angles. zeta1 is the per-qubit pre-rotation, zeta2 the phase of
/// the generalised Hadamard on the control qubit, omega_bar the frequency
/// estimate zeta1 was tuned against. Raw values are kept; reduced_* is for
/// display only.
struct MeasurementSetting {
  double zeta1 = 0.0;
  double zeta2 = 0.0;
  double omega_bar = 0.0;

  double reduced_zeta1() const;
  double reduced_zeta2() const;
};

/// Coefficients of one Hamming-weight block m (register weight h(x) = m).
/// Magnitudes are stored as logarithms so that probes with thousands of
/// atoms stay representable; the multiplicity C(n-1, m) is kept separately.
struct BlockCoefficients {
  int weight = 0;              // m
  int f = 0;                   // n - 2m
  double log_multiplicity = 0.0;
  double log_a = 0.0;
  double log_b = 0.0;
  numeric::SignedLog c;

  double a() const { return std::exp(log_a); }
  double b() const { return std::exp(log_b); }
  double c_value() const { return c.value(); }

  double weighted_a() const { return std::exp(log_multiplicity + log_a); }
  double weighted_b() const { return std::exp(log_multiplicity + log_b); }
  double weighted_c() const { return c.scaled(log_multiplicity); }
};

/// The evolved GHZ-diagonal probe, compressed to one 2x2 block per register
/// Hamming weight. Each block stands for C(n-1, m) identical blocks
///   [[a_m, e^{-i f phi} c_m], [e^{i f phi} c_m, b_m]] (x) |x><x|.
class ProbeBlocks {
 public:
  ProbeBlocks(int n, std::vector<BlockCoefficients> blocks);

  int n() const noexcept { return n_; }
  std::span<const BlockCoefficients> blocks() const noexcept { return blocks_; }
  const BlockCoefficients& block(int m) const { return blocks_.at(static_cast<std::size_t>(m)); }

  /// Contiguous per-block arrays: C(n-1,m)(a_m + b_m), C(n-1,m) c_m, f_m.
  std::span<const double> weighted_population() const noexcept { return population_; }
  std::span<const double> weighted_coherence() const noexcept { return coherence_; }
  std::span<const double> f_values() const noexcept { return f_; }

  /// sum_m C(n-1,m) (a_m + b_m).
  double trace() const;

  /// Copy with every c_m negated. Only used to check that verification
  /// catches a corrupted coherence sign.
  ProbeBlocks with_flipped_coherence() const;

 private:
  int n_;
  std::vector<BlockCoefficients> blocks_;
  std::vector<double> population_;
  std::vector<double> coherence_;
  std::vector<double> f_;
};

/// Outcome probabilities of the energy-basis measurement, grouped by register
/// weight. weighted_p0[m] = C(n-1,m) p_{0,m} is the total probability of the
/// C(n-1,m) outcomes |0,x> with h(x) = m; likewise for p1.
struct OutcomeDistribution {
  int n = 0;
  std::vector<double> log_multiplicity;
  std::vector<double> weighted_p0;
  std::vector<double> weighted_p1;

  double p0(int m) const;
  double p1(int m) const;
  double total() const;
};

/// One control-qubit block of the pre-measured state rho6 for weight m.
struct PremeasuredBlock {
  double a_tilde = 0.0;
  double b_tilde = 0.0;
  std::complex<double> c_tilde;
};

/// log C(n, m). Exact integer arithmetic for small n, log-gamma otherwise.
/// Throws DomainError unless 0 <= m <= n.
double binomial_log(int n, int m);

/// Block coefficients of the probe after free evolution by `snapshot`.
/// Throws DomainError on bad n or epsilon, or if the snapshot is not CP.
ProbeBlocks block_coefficients(int n, double epsilon, const ChannelSnapshot& snapshot);

/// Angle zeta2 - f_m (phi + zeta1) entering the readout of block m.
double readout_angle(int f, double phi, const MeasurementSetting& setting);

/// Probabilities of the energy measurement on rho6. `phi` is the accumulated
/// phase omega t. Throws ConsistencyError if a probability is below -1e-14.
OutcomeDistribution readout_probabilities(const ProbeBlocks& blocks, double phi,
                                          const MeasurementSetting& setting);

/// Unweighted rho6 block for weight m.
PremeasuredBlock premeasured_block(const ProbeBlocks& blocks, int m, double phi,
                                   const MeasurementSetting& setting);

}  // namespace qfreq
