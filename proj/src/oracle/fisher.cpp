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
#include <numbers>
#include <sstream>

#include "qfreq/errors.hpp"
#include "qfreq/numeric.hpp"
#include "qfreq/oracle.hpp"

namespace qfreq::oracle {

namespace {

// Dense differences use a coarser step than the analytic code: the dense
// pipeline carries more rounding per entry.
constexpr double kDenseRelativeStep = 1e-4;
constexpr double kEigenSumFloor = 1e-12;

// Evolved probe for frequency w. In frozen mode epsilon and the channel are
// taken at the base frequency and only the phase follows w.
DenseState rho4_at(const NoiseParams& base, int n, double t, double w, DerivativeMode mode) {
  const bool frozen = mode == DerivativeMode::frozen_R_epsilon;
  const NoiseParams p = frozen ? base : base.with_omega(w);
  ChannelSnapshot s = channel_at(p, t);
  s.phi = w * t;
  return evolve_dense(prepare_rho3_dense(n, p.epsilon()), s);
}

std::vector<double> flatten(const DenseState& s) {
  std::vector<double> out;
  out.reserve(2 * s.data().size());
  for (const Complex& z : s.data()) {
    out.push_back(z.real());
    out.push_back(z.imag());
  }
  return out;
}

}  // namespace

double cfi_dense(const NoiseParams& params, int n, double t, const MeasurementSetting& setting,
                 DerivativeMode mode) {
  if (!(t > 0.0)) throw DomainError("cfi_dense: t must be positive");
  auto probs = [&](double w) {
    return probabilities(premeasure_dense(rho4_at(params, n, t, w, mode), setting));
  };
  const double omega = params.omega();
  const std::vector<double> p = probs(omega);
  const std::vector<double> d =
      numeric::richardson_gradient(probs, omega, kDenseRelativeStep * omega);
  const auto half = static_cast<std::ptrdiff_t>(p.size() / 2);
  return classical_fisher(std::vector<double>(p.begin(), p.begin() + half),
                          std::vector<double>(p.begin() + half, p.end()),
                          std::vector<double>(d.begin(), d.begin() + half),
                          std::vector<double>(d.begin() + half, d.end()));
}

double qfi_dense(const NoiseParams& params, int n, double t, DerivativeMode mode) {
  if (n > kMaxQfiQubits) {
    std::ostringstream msg;
    msg << "qfi_dense: n = " << n << " exceeds " << kMaxQfiQubits;
    throw SizeError(msg.str());
  }
  if (!(t > 0.0)) throw DomainError("qfi_dense: t must be positive");
  const double omega = params.omega();
  // rho5: the zeta1 rotation is tuned to the base frequency and stays fixed.
  MeasurementSetting setting;
  setting.zeta1 = 0.5 * std::numbers::pi - omega * t;
  auto rho5 = [&](double w) {
    DenseState s = rho4_at(params, n, t, w, mode);
    apply_gate(s, {GateKind::z_rotation, setting.zeta1});
    apply_gate(s, {GateKind::cnot_fanout});
    return s;
  };
  const DenseState base = rho5(omega);
  const std::size_t dim = base.dim();
  const std::vector<double> grad = numeric::richardson_gradient(
      [&](double w) { return flatten(rho5(w)); }, omega, kDenseRelativeStep * omega);
  std::vector<Complex> d(dim * dim);
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = {grad[2 * i], grad[2 * i + 1]};

  const HermitianEigen eig = jacobi_eigen(base.data(), dim);
  const std::vector<Complex>& v = eig.vectors;
  // V^dagger D V
  std::vector<Complex> dv(dim * dim, Complex(0.0, 0.0));
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t k = 0; k < dim; ++k) {
      const Complex x = d[r * dim + k];
      if (x == Complex(0.0, 0.0)) continue;
      for (std::size_t c = 0; c < dim; ++c) dv[r * dim + c] += x * v[k * dim + c];
    }
  }
  std::vector<double> terms;
  terms.reserve(dim * dim);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      const double denom = eig.values[i] + eig.values[j];
      if (denom <= kEigenSumFloor) continue;
      Complex element = 0.0;
      for (std::size_t r = 0; r < dim; ++r) element += std::conj(v[r * dim + i]) * dv[r * dim + j];
      terms.push_back(2.0 * std::norm(element) / denom);
    }
  }
  return numeric::pairwise_sum(terms);
}

}  // namespace qfreq::oracle
