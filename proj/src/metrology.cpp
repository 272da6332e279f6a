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

#include "qfreq/metrology.hpp"

#include <cmath>
#include <numbers>

#include "qfreq/errors.hpp"
#include "qfreq/kernels.hpp"
#include "qfreq/numeric.hpp"

namespace qfreq {

namespace {

constexpr double kQfiDenominatorFloor = 1e-30;

void require_positive_time(double t, const char* who) {
  if (!(t > 0.0)) throw DomainError(std::string(who) + ": t must be positive");
}

ProbeBlocks evolved_blocks(const NoiseParams& params, int n, double t) {
  return block_coefficients(n, params.epsilon(), channel_at(params, t));
}

// Weighted entries (a, b, Re z, Im z) of every block, z = C e^{-i f omega t}.
std::vector<double> weighted_entries(const ProbeBlocks& blocks, double phi) {
  std::vector<double> out;
  out.reserve(4 * static_cast<std::size_t>(blocks.n()));
  for (const BlockCoefficients& b : blocks.blocks()) {
    const double c = b.weighted_c();
    const double angle = -b.f * phi;
    out.push_back(b.weighted_a());
    out.push_back(b.weighted_b());
    out.push_back(c * std::cos(angle));
    out.push_back(c * std::sin(angle));
  }
  return out;
}

struct Block2 {
  double a, b;
  Complex z;
};

// QFI of one (unnormalised) 2x2 block given its derivative.
double block_qfi(const Block2& rho, const Block2& d) {
  const double diff = rho.a - rho.b;
  const double mod = std::abs(rho.z);
  const double gap = std::hypot(diff, 2.0 * mod);
  const double sum = rho.a + rho.b;
  const double nu_plus = 0.5 * (sum + gap);
  const double nu_minus = 0.5 * (sum - gap);

  const double half = 0.5 * std::atan2(2.0 * mod, diff);
  const double ch = std::cos(half);
  const double sh = std::sin(half);
  const Complex rot = mod > 0.0 ? std::conj(rho.z) / mod : Complex(1.0, 0.0);  // e^{-i psi}

  // |+> = (ch, rot sh), |-> = (-sh, rot ch)
  const Complex plus[2] = {ch, rot * sh};
  const Complex minus[2] = {-sh, rot * ch};
  const Complex dm[2][2] = {{d.a, d.z}, {std::conj(d.z), d.b}};
  auto element = [&](const Complex* u, const Complex* v) {
    Complex acc = 0.0;
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) acc += std::conj(u[i]) * dm[i][j] * v[j];
    }
    return acc;
  };
  const double dpp = element(plus, plus).real();
  const double dmm = element(minus, minus).real();
  const double dpm = std::norm(element(plus, minus));

  double q = 0.0;
  if (nu_plus > kQfiDenominatorFloor) q += dpp * dpp / nu_plus;
  if (nu_minus > kQfiDenominatorFloor) q += dmm * dmm / nu_minus;
  if (sum > kQfiDenominatorFloor) q += 4.0 * dpm / sum;
  return q;
}

}  // namespace

BlockEigensystem block_eigensystem(const ProbeBlocks& blocks, double phi, double zeta1) {
  BlockEigensystem out;
  out.blocks.reserve(static_cast<std::size_t>(blocks.n()));
  for (const BlockCoefficients& b : blocks.blocks()) {
    const double a = b.a();
    const double bb = b.b();
    const double c = b.c_value();
    BlockEigen e;
    e.gap = std::hypot(a - bb, 2.0 * c);
    e.nu_plus = 0.5 * (a + bb + e.gap);
    e.nu_minus = 0.5 * (a + bb - e.gap);
    e.mixing_angle = std::atan2(2.0 * std::abs(c), a - bb);
    e.phase = std::arg(std::polar(c, -b.f * (phi + zeta1)));
    out.blocks.push_back(e);
  }
  return out;
}

double classical_fisher(const std::vector<double>& p0, const std::vector<double>& p1,
                        const std::vector<double>& d0, const std::vector<double>& d1) {
  std::vector<double> terms(p0.size());
  kernels::active_kernels().fisher_terms(p0.data(), p1.data(), d0.data(), d1.data(),
                                         terms.data(), terms.size());
  return numeric::pairwise_sum(terms);
}

double cfi(const NoiseParams& params, int n, double t, const MeasurementSetting& setting,
           DerivativeMode mode, double relative_step) {
  require_positive_time(t, "cfi");
  const double omega = params.omega();

  if (mode == DerivativeMode::frozen_R_epsilon) {
    const ProbeBlocks blocks = evolved_blocks(params, n, t);
    const std::size_t count = static_cast<std::size_t>(n);
    std::vector<double> cosine(count), sine(count), terms(count);
    for (std::size_t m = 0; m < count; ++m) {
      const double angle = readout_angle(blocks.blocks()[m].f, omega * t, setting);
      cosine[m] = std::cos(angle);
      sine[m] = std::sin(angle);
    }
    kernels::active_kernels().phase_fisher_terms(
        blocks.weighted_population().data(), blocks.weighted_coherence().data(),
        blocks.f_values().data(), cosine.data(), sine.data(), t, terms.data(), count);
    return numeric::pairwise_sum(terms);
  }

  auto distribution = [&](double w) {
    const NoiseParams shifted = params.with_omega(w);
    const OutcomeDistribution d =
        readout_probabilities(evolved_blocks(shifted, n, t), w * t, setting);
    std::vector<double> joined(d.weighted_p0);
    joined.insert(joined.end(), d.weighted_p1.begin(), d.weighted_p1.end());
    return joined;
  };
  const std::vector<double> grad =
      numeric::richardson_gradient(distribution, omega, relative_step * omega);
  const OutcomeDistribution base =
      readout_probabilities(evolved_blocks(params, n, t), omega * t, setting);
  const auto half = static_cast<std::ptrdiff_t>(n);
  return classical_fisher(base.weighted_p0, base.weighted_p1,
                          std::vector<double>(grad.begin(), grad.begin() + half),
                          std::vector<double>(grad.begin() + half, grad.end()));
}

double qfi_small_R(const ProbeBlocks& blocks, double t) {
  std::vector<double> terms(static_cast<std::size_t>(blocks.n()));
  kernels::active_kernels().qfi_terms(blocks.weighted_population().data(),
                                      blocks.weighted_coherence().data(),
                                      blocks.f_values().data(), t, terms.data(), terms.size());
  return numeric::pairwise_sum(terms);
}

double qfi_small_R(const NoiseParams& params, int n, double t) {
  require_positive_time(t, "qfi_small_R");
  return qfi_small_R(evolved_blocks(params, n, t), t);
}

double qfi_exact(const NoiseParams& params, int n, double t, DerivativeMode mode,
                 double relative_step) {
  require_positive_time(t, "qfi_exact");
  const double omega = params.omega();
  const ProbeBlocks blocks = evolved_blocks(params, n, t);
  const std::vector<double> base = weighted_entries(blocks, omega * t);

  std::vector<double> deriv(base.size());
  if (mode == DerivativeMode::frozen_R_epsilon) {
    // d/d omega of C e^{-i f omega t} = -i f t z
    for (std::size_t m = 0; m < static_cast<std::size_t>(n); ++m) {
      const double ft = blocks.blocks()[m].f * t;
      deriv[4 * m + 2] = ft * base[4 * m + 3];
      deriv[4 * m + 3] = -ft * base[4 * m + 2];
    }
  } else {
    deriv = numeric::richardson_gradient(
        [&](double w) {
          return weighted_entries(evolved_blocks(params.with_omega(w), n, t), w * t);
        },
        omega, relative_step * omega);
  }

  std::vector<double> terms(static_cast<std::size_t>(n));
  for (std::size_t m = 0; m < terms.size(); ++m) {
    const Block2 rho{base[4 * m], base[4 * m + 1], {base[4 * m + 2], base[4 * m + 3]}};
    const Block2 d{deriv[4 * m], deriv[4 * m + 1], {deriv[4 * m + 2], deriv[4 * m + 3]}};
    terms[m] = block_qfi(rho, d);
  }
  return numeric::pairwise_sum(terms);
}

MeasurementSetting optimal_setting(int n, double omega_bar, double t) {
  require_positive_time(t, "optimal_setting");
  if (n < 1) throw DomainError("optimal_setting: n must be at least 1");
  MeasurementSetting s;
  s.zeta1 = 0.5 * std::numbers::pi - omega_bar * t;
  s.zeta2 = n % 2 == 0 ? 0.5 * std::numbers::pi : 0.0;
  s.omega_bar = omega_bar;
  return s;
}

FisherReport fisher_report(const NoiseParams& params, int n, double t,
                           const MeasurementSetting& setting, DerivativeMode mode) {
  FisherReport r;
  r.derivative_mode = mode;
  r.cfi_exact = cfi(params, n, t, setting, DerivativeMode::finite_difference);
  r.cfi_small_R = cfi(params, n, t, setting, DerivativeMode::frozen_R_epsilon);
  r.qfi_exact = qfi_exact(params, n, t, mode);
  r.qfi_small_R = qfi_small_R(params, n, t);
  return r;
}

}  // namespace qfreq
