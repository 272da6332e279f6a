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

#include <array>
#include <complex>

namespace qfreq {

using Complex = std::complex<double>;

/// Physical configuration of one atom and its bath, in units hbar = k_B = 1.
/// The polarization bias and the ratio R = gamma0 / (lambda * epsilon) are
/// derived on construction and cannot be set independently.
class NoiseParams {
 public:
  /// Throws DomainError unless omega > 0, T > 0, gamma0 >= 0, lambda > 0.
  NoiseParams(double omega, double temperature, double gamma0, double lambda);

  double omega() const noexcept { return omega_; }
  double temperature() const noexcept { return temperature_; }
  double gamma0() const noexcept { return gamma0_; }
  double lambda() const noexcept { return lambda_; }
  double epsilon() const noexcept { return epsilon_; }
  /// R = gamma0 / (lambda * epsilon).
  double ratio() const noexcept { return ratio_; }

  /// Markovian emission rate gamma0 * (1 + 1 / (exp(omega/T) - 1)).
  double gkls_emission_rate() const;
  /// Markovian absorption rate exp(-omega/T) times the emission rate.
  double gkls_absorption_rate() const;

  NoiseParams with_omega(double omega) const {
    return {omega, temperature_, gamma0_, lambda_};
  }
  NoiseParams with_lambda(double lambda) const {
    return {omega_, temperature_, gamma0_, lambda};
  }

 private:
  double omega_;
  double temperature_;
  double gamma0_;
  double lambda_;
  double epsilon_;
  double ratio_;
};

/// The phase-covariant qubit channel at one instant. `deficit_par` and
/// `deficit_perp` hold 1 - eta with full relative accuracy; they feed the
/// complete-positivity margins, which are tiny near t = 0.
struct ChannelSnapshot {
  double t = 0.0;
  double eta_par = 1.0;
  double eta_perp = 1.0;
  double kappa = 0.0;
  double phi = 0.0;
  double deficit_par = 0.0;
  double deficit_perp = 0.0;

  static ChannelSnapshot identity() { return {}; }

  /// Snapshot from bare (eta_par, eta_perp, kappa, phi); deficits are 1 - eta.
  static ChannelSnapshot from_parameters(double eta_par, double eta_perp,
                                         double kappa, double phi = 0.0);

  /// 4x4 Pauli transfer matrix acting on (1, <sx>, <sy>, <sz>).
  std::array<std::array<double, 4>, 4> transfer_matrix() const;
};

struct TimeLocalRates {
  double gamma_plus = 0.0;   // sigma_+ dissipator (absorption)
  double gamma_minus = 0.0;  // sigma_- dissipator (emission)
  double gamma_z = 0.0;      // pure dephasing
};

enum class CPViolation { none, eta_plus_kappa, eta_minus_kappa, cone };

struct CPStatus {
  bool is_cp = true;
  /// Smallest (bound - value) over the three conditions.
  double margin = 0.0;
  CPViolation violated_condition = CPViolation::none;
};

/// 2x2 density matrix in the {|0>, |1>} basis, sigma_z |0> = +|0>.
struct QubitState {
  std::array<std::array<Complex, 2>, 2> m{};

  Complex& operator()(int r, int c) { return m[r][c]; }
  const Complex& operator()(int r, int c) const { return m[r][c]; }

  static QubitState thermal(double epsilon);
};

/// Switch window around R = 1/4 inside which xi is evaluated by its series.
inline constexpr double kXiBranchWindow = 1e-8;

/// tanh(omega / 2T). Throws DomainError for nonpositive arguments.
double polarization_bias(double omega, double temperature);

/// xi_R(t) = exp(-lambda t / 2) [sinh(a)/A + cosh(a)], a = lambda t A / 2,
/// A = sqrt(1 - 4R), continued analytically through R = 1/4.
double xi(double ratio, double lambda, double t);

/// d/dt xi_R(t), closed form.
double xi_derivative(double ratio, double lambda, double t);

/// 1 - xi_R(t) with full relative accuracy near t = 0.
double xi_deficit(double ratio, double lambda, double t);

/// First positive zero of xi_R; +inf when R <= 1/4.
double xi_first_zero(double ratio, double lambda);

ChannelSnapshot channel_at(const NoiseParams& params, double t);

/// Throws SingularRateError at or beyond the first zero of xi_R or xi_{R/2}.
TimeLocalRates time_local_rates(const NoiseParams& params, double t);

CPStatus cp_check(const ChannelSnapshot& snapshot);

/// True iff R >= 1/4, i.e. the dynamics eventually breaks positivity.
bool positivity_threshold(const NoiseParams& params);

/// Single-qubit action of the channel. Throws DomainError if `state` is not
/// a density matrix (tolerance 1e-12).
QubitState apply_to_qubit(const ChannelSnapshot& snapshot, const QubitState& state);

}  // namespace qfreq
