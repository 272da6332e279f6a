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

#include "qfreq/channel.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "qfreq/errors.hpp"

namespace qfreq {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// e^{-v} cosh(v A) and e^{-v} sinh(v A) / A for D = A^2 = 1 - 4R, with
// A possibly imaginary. xi = even + odd; xi' = -2 lambda R odd.
struct XiTerms {
  double even;
  double odd;
};

// sum_k z^k / (2k + offset)!  for offset in {0, 1}, |z| <= 1.
double even_odd_series(double z, int offset) {
  double term = 1.0;
  double acc = 1.0;
  for (int k = 1; k < 40; ++k) {
    term *= z / (static_cast<double>(2 * k - 1 + offset) * (2 * k + offset));
    acc += term;
    if (std::abs(term) < 1e-18 * std::abs(acc)) break;
  }
  return acc;
}

XiTerms xi_terms(double ratio, double lambda, double t) {
  const double v = 0.5 * lambda * t;
  const double d = 1.0 - 4.0 * ratio;
  const double z = d * v * v;
  const double damp = std::exp(-v);

  if (std::abs(d) < kXiBranchWindow && std::abs(z) <= 1.0) {
    return {damp * even_odd_series(z, 0), damp * v * even_odd_series(z, 1)};
  }
  if (d > 0.0) {
    const double a = std::sqrt(d);
    const double u = v * a;
    const double grow = std::exp(-v + u);
    const double shrink = std::exp(-v - u);
    const double even = 0.5 * (grow + shrink);
    const double odd = u < 0.5 ? damp * v * even_odd_series(u * u, 1)
                               : (grow - shrink) / (2.0 * a);
    return {even, odd};
  }
  const double b = std::sqrt(-d);
  const double u = v * b;
  const double odd = u < 0.5 ? damp * v * even_odd_series(-u * u, 1)
                             : damp * std::sin(u) / b;
  return {damp * std::cos(u), odd};
}

void check_time(double t) {
  if (!(t >= 0.0)) throw DomainError("time must be nonnegative");
}

}  // namespace

NoiseParams::NoiseParams(double omega, double temperature, double gamma0, double lambda)
    : omega_(omega), temperature_(temperature), gamma0_(gamma0), lambda_(lambda) {
  if (!(omega > 0.0) || !(temperature > 0.0)) {
    throw DomainError("NoiseParams: omega and temperature must be positive");
  }
  if (!(gamma0 >= 0.0)) throw DomainError("NoiseParams: gamma0 must be nonnegative");
  if (!(lambda > 0.0)) throw DomainError("NoiseParams: lambda must be positive");
  epsilon_ = polarization_bias(omega, temperature);
  if (!(epsilon_ > 0.0)) {
    throw DomainError("NoiseParams: polarization bias underflows to zero");
  }
  ratio_ = gamma0 / (lambda * epsilon_);
}

double NoiseParams::gkls_emission_rate() const {
  return -gamma0_ / std::expm1(-omega_ / temperature_);
}

double NoiseParams::gkls_absorption_rate() const {
  return std::exp(-omega_ / temperature_) * gkls_emission_rate();
}

ChannelSnapshot ChannelSnapshot::from_parameters(double eta_par, double eta_perp,
                                                 double kappa, double phi) {
  ChannelSnapshot s;
  s.eta_par = eta_par;
  s.eta_perp = eta_perp;
  s.kappa = kappa;
  s.phi = phi;
  s.deficit_par = 1.0 - eta_par;
  s.deficit_perp = 1.0 - eta_perp;
  return s;
}

std::array<std::array<double, 4>, 4> ChannelSnapshot::transfer_matrix() const {
  const double c = eta_perp * std::cos(phi);
  const double s = eta_perp * std::sin(phi);
  return {{{1.0, 0.0, 0.0, 0.0},
           {0.0, c, -s, 0.0},
           {0.0, s, c, 0.0},
           {kappa, 0.0, 0.0, eta_par}}};
}

QubitState QubitState::thermal(double epsilon) {
  QubitState q;
  q(0, 0) = 0.5 * (1.0 - epsilon);
  q(1, 1) = 0.5 * (1.0 + epsilon);
  return q;
}

double polarization_bias(double omega, double temperature) {
  if (!(omega > 0.0) || !(temperature > 0.0)) {
    throw DomainError("polarization_bias: omega and T must be positive");
  }
  return std::tanh(omega / (2.0 * temperature));
}

double xi(double ratio, double lambda, double t) {
  check_time(t);
  const XiTerms x = xi_terms(ratio, lambda, t);
  return x.even + x.odd;
}

double xi_derivative(double ratio, double lambda, double t) {
  check_time(t);
  return -2.0 * lambda * ratio * xi_terms(ratio, lambda, t).odd;
}

double xi_deficit(double ratio, double lambda, double t) {
  check_time(t);
  const double v = 0.5 * lambda * t;
  const double d = 1.0 - 4.0 * ratio;
  if (v > 2.0 || std::abs(d) * v * v > 4.0) return 1.0 - xi(ratio, lambda, t);

  // 1 - xi = e^{-v} sum_j (1 - D^floor(j/2)) v^j / j!
  const double log1p_minus4r = d > 0.0 ? std::log1p(-4.0 * ratio) : 0.0;
  double power = 1.0;  // v^j / j!
  double acc = 0.0;
  for (int j = 1; j < 80; ++j) {
    power *= v / j;
    const int k = j / 2;
    if (k == 0) continue;
    const double weight =
        d > 0.0 ? -std::expm1(k * log1p_minus4r) : 1.0 - std::pow(d, k);
    const double term = weight * power;
    acc += term;
    if (j > 4 && std::abs(term) < 1e-18 * std::abs(acc)) break;
  }
  return std::exp(-v) * acc;
}

double xi_first_zero(double ratio, double lambda) {
  const double d = 1.0 - 4.0 * ratio;
  if (d >= 0.0) return kInf;
  const double b = std::sqrt(-d);
  const double u = std::numbers::pi - std::atan(b);
  return 2.0 * u / (lambda * b);
}

ChannelSnapshot channel_at(const NoiseParams& params, double t) {
  check_time(t);
  const double r = params.ratio();
  const double lam = params.lambda();
  ChannelSnapshot s;
  s.t = t;
  s.deficit_par = xi_deficit(r, lam, t);
  s.deficit_perp = xi_deficit(0.5 * r, lam, t);
  s.eta_par = xi(r, lam, t);
  s.eta_perp = xi(0.5 * r, lam, t);
  s.kappa = -params.epsilon() * s.deficit_par;
  s.phi = params.omega() * t;
  return s;
}

TimeLocalRates time_local_rates(const NoiseParams& params, double t) {
  check_time(t);
  const double r = params.ratio();
  const double lam = params.lambda();
  const double zero = std::min(xi_first_zero(r, lam), xi_first_zero(0.5 * r, lam));
  if (t >= zero) {
    std::ostringstream msg;
    msg << "time_local_rates: xi vanishes at t = " << zero << " (requested t = " << t << ")";
    throw SingularRateError(msg.str(), zero);
  }
  const double log_rate_full = xi_derivative(r, lam, t) / xi(r, lam, t);
  const double log_rate_half = xi_derivative(0.5 * r, lam, t) / xi(0.5 * r, lam, t);
  const double eps = params.epsilon();
  TimeLocalRates rates;
  rates.gamma_plus = -0.5 * (1.0 - eps) * log_rate_full;
  rates.gamma_minus = -0.5 * (1.0 + eps) * log_rate_full;
  rates.gamma_z = 0.25 * (log_rate_full - 2.0 * log_rate_half);
  return rates;
}

CPStatus cp_check(const ChannelSnapshot& s) {
  const double plus_margin = s.deficit_par - s.kappa;
  const double minus_margin = s.deficit_par + s.kappa;

  // (1 + eta_par) - sqrt(4 eta_perp^2 + kappa^2), rationalised so that the
  // leading cancellation happens in 2 deficit_perp - deficit_par instead.
  const double gap = 2.0 * s.deficit_perp - s.deficit_par;  // 1 + eta_par - 2 eta_perp
  const double sum = 1.0 + s.eta_par + 2.0 * s.eta_perp;
  const double root = std::sqrt(4.0 * s.eta_perp * s.eta_perp + s.kappa * s.kappa);
  const double denom = 1.0 + s.eta_par + root;
  const double cone_margin =
      denom > 0.0 ? (gap * sum - s.kappa * s.kappa) / denom : (1.0 + s.eta_par) - root;

  CPStatus status;
  status.margin = plus_margin;
  status.violated_condition = CPViolation::eta_plus_kappa;
  if (minus_margin < status.margin) {
    status.margin = minus_margin;
    status.violated_condition = CPViolation::eta_minus_kappa;
  }
  if (cone_margin < status.margin) {
    status.margin = cone_margin;
    status.violated_condition = CPViolation::cone;
  }
  status.is_cp = status.margin >= 0.0;
  if (status.is_cp) status.violated_condition = CPViolation::none;
  return status;
}

bool positivity_threshold(const NoiseParams& params) { return params.ratio() >= 0.25; }

QubitState apply_to_qubit(const ChannelSnapshot& s, const QubitState& in) {
  constexpr double tol = 1e-12;
  const double a = in(0, 0).real();
  const double b = in(1, 1).real();
  const Complex c = in(0, 1);
  const bool hermitian = std::abs(in(0, 0).imag()) <= tol && std::abs(in(1, 1).imag()) <= tol &&
                         std::abs(c - std::conj(in(1, 0))) <= tol;
  const bool unit_trace = std::abs(a + b - 1.0) <= tol;
  const bool positive = a >= -tol && b >= -tol && a * b - std::norm(c) >= -tol;
  if (!hermitian || !unit_trace || !positive) {
    throw DomainError("apply_to_qubit: input is not a density matrix");
  }
  const double alpha_plus = 0.5 * (1.0 + s.eta_par + s.kappa);
  const double alpha_minus = 0.5 * (1.0 - s.eta_par + s.kappa);
  const double beta_plus = 0.5 * (1.0 - s.eta_par - s.kappa);
  const double beta_minus = 0.5 * (1.0 + s.eta_par - s.kappa);
  const Complex coherence = c * std::polar(s.eta_perp, -s.phi);

  QubitState out;
  out(0, 0) = a * alpha_plus + b * alpha_minus;
  out(1, 1) = a * beta_plus + b * beta_minus;
  out(0, 1) = coherence;
  out(1, 0) = std::conj(coherence);
  return out;
}

}  // namespace qfreq
