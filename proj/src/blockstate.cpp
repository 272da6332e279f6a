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

#include "qfreq/blockstate.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "qfreq/errors.hpp"
#include "qfreq/kernels.hpp"

namespace qfreq {

namespace {

constexpr double kLn2 = std::numbers::ln2;
constexpr double kProbabilityFloor = -1e-14;
constexpr double kCpSlack = 1e-12;

double reduce_angle(double x) {
  const double two_pi = 2.0 * std::numbers::pi;
  double r = std::fmod(x, two_pi);
  if (r < 0.0) r += two_pi;
  return r;
}

// log((1 + x) / 2)
double log_half_one_plus(double x) {
  if (!(x > -1.0)) {
    throw DomainError("block_coefficients: single-qubit population is not positive");
  }
  return std::log1p(x) - kLn2;
}

}  // namespace

double MeasurementSetting::reduced_zeta1() const { return reduce_angle(zeta1); }
double MeasurementSetting::reduced_zeta2() const { return reduce_angle(zeta2); }

ProbeBlocks::ProbeBlocks(int n, std::vector<BlockCoefficients> blocks)
    : n_(n), blocks_(std::move(blocks)) {
  if (n < 1) throw DomainError("ProbeBlocks: n must be at least 1");
  if (blocks_.size() != static_cast<std::size_t>(n)) {
    throw DomainError("ProbeBlocks: expected one block per register weight");
  }
  population_.reserve(blocks_.size());
  coherence_.reserve(blocks_.size());
  f_.reserve(blocks_.size());
  for (const BlockCoefficients& b : blocks_) {
    population_.push_back(std::exp(b.log_multiplicity + numeric::log_add_exp(b.log_a, b.log_b)));
    coherence_.push_back(b.weighted_c());
    f_.push_back(static_cast<double>(b.f));
  }
}

double ProbeBlocks::trace() const { return numeric::pairwise_sum(population_); }

ProbeBlocks ProbeBlocks::with_flipped_coherence() const {
  std::vector<BlockCoefficients> flipped = blocks_;
  for (BlockCoefficients& b : flipped) b.c.sign = -b.c.sign;
  return ProbeBlocks(n_, std::move(flipped));
}

double OutcomeDistribution::p0(int m) const {
  return weighted_p0.at(static_cast<std::size_t>(m)) *
         std::exp(-log_multiplicity.at(static_cast<std::size_t>(m)));
}

double OutcomeDistribution::p1(int m) const {
  return weighted_p1.at(static_cast<std::size_t>(m)) *
         std::exp(-log_multiplicity.at(static_cast<std::size_t>(m)));
}

double OutcomeDistribution::total() const {
  std::vector<double> all(weighted_p0);
  all.insert(all.end(), weighted_p1.begin(), weighted_p1.end());
  return numeric::pairwise_sum(all);
}

double binomial_log(int n, int m) {
  if (n < 0 || m < 0 || m > n) {
    std::ostringstream msg;
    msg << "binomial_log: need 0 <= m <= n, got n = " << n << ", m = " << m;
    throw DomainError(msg.str());
  }
  if (m == 0 || m == n) return 0.0;
  if (n <= 50) {
    // C(50, 25) < 2^53, so the product below is exact.
    const int k = m < n - m ? m : n - m;
    double value = 1.0;
    for (int i = 1; i <= k; ++i) value = value * (n - k + i) / i;
    return std::log(value);
  }
  return std::lgamma(n + 1.0) - std::lgamma(m + 1.0) - std::lgamma(n - m + 1.0);
}

ProbeBlocks block_coefficients(int n, double epsilon, const ChannelSnapshot& snapshot) {
  if (n < 1) throw DomainError("block_coefficients: n must be at least 1");
  if (!(epsilon >= 0.0 && epsilon < 1.0)) {
    throw DomainError("block_coefficients: epsilon must lie in [0, 1)");
  }
  const CPStatus cp = cp_check(snapshot);
  if (cp.margin < -kCpSlack) {
    throw DomainError("block_coefficients: snapshot is not completely positive");
  }

  // Single-qubit populations alpha_s = (1 + s eta + kappa)/2 and
  // beta_s = (1 - s eta - kappa)/2 for s = -epsilon (thermal input) and
  // s = +epsilon (bit-flipped thermal input).
  // eta = 1 - deficit; for the thermal channel kappa = -epsilon deficit and
  // the thermal populations come out exactly (1 -/+ epsilon)/2.
  const double kappa = snapshot.kappa;
  const double shift = epsilon * snapshot.deficit_par;
  const double log_alpha_thermal = log_half_one_plus(-epsilon + (shift + kappa));
  const double log_beta_thermal = log_half_one_plus(epsilon - (shift + kappa));
  const double log_alpha_flipped = log_half_one_plus(epsilon + (kappa - shift));
  const double log_beta_flipped = log_half_one_plus(-epsilon - (kappa - shift));

  // c_m = eta_perp^n / 2^{n+1} [(1-e)^{n-m} (1+e)^m - (1-e)^m (1+e)^{n-m}]
  const double log_one_minus = std::log1p(-epsilon);
  const double log_one_plus = std::log1p(epsilon);
  const double two_atanh = 2.0 * std::atanh(epsilon);
  const int perp_sign = snapshot.eta_perp > 0.0 ? 1 : (snapshot.eta_perp < 0.0 ? -1 : 0);
  const int prefactor_sign = (perp_sign < 0 && n % 2 == 1) ? -1 : perp_sign;
  const double log_prefactor =
      n * std::log(std::abs(snapshot.eta_perp)) - (n + 1) * kLn2;

  std::vector<BlockCoefficients> blocks(static_cast<std::size_t>(n));
  for (int m = 0; m < n; ++m) {
    const int zeros = n - m;  // h(x-bar) + 1: the control qubit counts as a zero
    BlockCoefficients& b = blocks[static_cast<std::size_t>(m)];
    b.weight = m;
    b.f = n - 2 * m;
    b.log_multiplicity = binomial_log(n - 1, m);
    b.log_a = numeric::log_add_exp(zeros * log_alpha_thermal + m * log_beta_thermal,
                                   zeros * log_alpha_flipped + m * log_beta_flipped) -
              kLn2;
    b.log_b = numeric::log_add_exp(m * log_alpha_thermal + zeros * log_beta_thermal,
                                   m * log_alpha_flipped + zeros * log_beta_flipped) -
              kLn2;
    if (prefactor_sign == 0 || epsilon == 0.0 || b.f == 0) {
      b.c = {};
    } else {
      const double first = zeros * log_one_minus + m * log_one_plus;
      const double second = m * log_one_minus + zeros * log_one_plus;
      numeric::SignedLog diff = numeric::log_sub_exp(first, second, -b.f * two_atanh);
      diff.sign *= prefactor_sign;
      diff.log_magnitude += log_prefactor;
      b.c = diff;
    }
  }
  return ProbeBlocks(n, std::move(blocks));
}

double readout_angle(int f, double phi, const MeasurementSetting& setting) {
  return setting.zeta2 - f * (phi + setting.zeta1);
}

OutcomeDistribution readout_probabilities(const ProbeBlocks& blocks, double phi,
                                          const MeasurementSetting& setting) {
  const std::size_t count = static_cast<std::size_t>(blocks.n());
  std::vector<double> cosine(count);
  for (std::size_t m = 0; m < count; ++m) {
    cosine[m] = std::cos(readout_angle(blocks.blocks()[m].f, phi, setting));
  }
  OutcomeDistribution out;
  out.n = blocks.n();
  out.weighted_p0.resize(count);
  out.weighted_p1.resize(count);
  out.log_multiplicity.resize(count);
  kernels::active_kernels().readout(blocks.weighted_population().data(),
                                    blocks.weighted_coherence().data(), cosine.data(),
                                    out.weighted_p0.data(), out.weighted_p1.data(), count);
  for (std::size_t m = 0; m < count; ++m) {
    out.log_multiplicity[m] = blocks.blocks()[m].log_multiplicity;
    for (double* p : {&out.weighted_p0[m], &out.weighted_p1[m]}) {
      if (*p < 0.0) {
        if (*p < kProbabilityFloor) {
          std::ostringstream msg;
          msg << "readout_probabilities: probability " << *p << " at weight " << m
              << " is negative beyond rounding";
          throw ConsistencyError(msg.str());
        }
        *p = 0.0;
      }
    }
  }
  return out;
}

PremeasuredBlock premeasured_block(const ProbeBlocks& blocks, int m, double phi,
                                   const MeasurementSetting& setting) {
  const BlockCoefficients& b = blocks.block(m);
  const double angle = readout_angle(b.f, phi, setting);
  const double a = b.a();
  const double bb = b.b();
  const double c = b.c_value();
  PremeasuredBlock out;
  out.a_tilde = 0.5 * (a + bb + 2.0 * c * std::cos(angle));
  out.b_tilde = 0.5 * (a + bb - 2.0 * c * std::cos(angle));
  out.c_tilde = std::complex<double>(0.5 * (a - bb), -c * std::sin(angle));
  return out;
}

}  // namespace qfreq
