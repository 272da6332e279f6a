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

using Mat2 = std::array<std::array<Complex, 2>, 2>;

std::size_t qubit_bit(int n, int k) { return std::size_t{1} << (n - 1 - k); }

void apply_single(DenseState& s, int k, const Mat2& u) {
  const std::size_t dim = s.dim();
  const std::size_t bit = qubit_bit(s.n(), k);
  // rows: U rho
  for (std::size_t r0 = 0; r0 < dim; ++r0) {
    if (r0 & bit) continue;
    const std::size_t r1 = r0 | bit;
    for (std::size_t c = 0; c < dim; ++c) {
      const Complex x0 = s(r0, c);
      const Complex x1 = s(r1, c);
      s(r0, c) = u[0][0] * x0 + u[0][1] * x1;
      s(r1, c) = u[1][0] * x0 + u[1][1] * x1;
    }
  }
  // columns: (U rho) U^dagger
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c0 = 0; c0 < dim; ++c0) {
      if (c0 & bit) continue;
      const std::size_t c1 = c0 | bit;
      const Complex x0 = s(r, c0);
      const Complex x1 = s(r, c1);
      s(r, c0) = x0 * std::conj(u[0][0]) + x1 * std::conj(u[0][1]);
      s(r, c1) = x0 * std::conj(u[1][0]) + x1 * std::conj(u[1][1]);
    }
  }
}

void apply_fanout(DenseState& s) {
  const std::size_t dim = s.dim();
  const std::size_t control = qubit_bit(s.n(), 0);
  const std::size_t register_mask = control - 1;
  auto perm = [&](std::size_t i) { return (i & control) ? i ^ register_mask : i; };
  DenseState out(s.n());
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) out(r, c) = s(perm(r), perm(c));
  }
  out.channel_not_cp = s.channel_not_cp;
  s = std::move(out);
}

// Pauli-transfer action on one 2x2 operator block [[m00, m01], [m10, m11]].
void transfer_block(const std::array<std::array<double, 4>, 4>& t, Complex& m00, Complex& m01,
                    Complex& m10, Complex& m11) {
  const Complex i_unit(0.0, 1.0);
  const Complex in[4] = {m00 + m11, m01 + m10, i_unit * (m01 - m10), m00 - m11};
  Complex out[4];
  for (int r = 0; r < 4; ++r) {
    out[r] = 0.0;
    for (int c = 0; c < 4; ++c) out[r] += t[r][c] * in[c];
  }
  m00 = 0.5 * (out[0] + out[3]);
  m11 = 0.5 * (out[0] - out[3]);
  m01 = 0.5 * (out[1] - i_unit * out[2]);
  m10 = 0.5 * (out[1] + i_unit * out[2]);
}

}  // namespace

DenseState::DenseState(int n) : n_(n) {
  if (n < 1 || n > kMaxDenseQubits) {
    std::ostringstream msg;
    msg << "DenseState: n = " << n << " outside [1, " << kMaxDenseQubits << "]";
    throw SizeError(msg.str());
  }
  dim_ = std::size_t{1} << n;
  data_.assign(dim_ * dim_, Complex(0.0, 0.0));
}

Complex DenseState::trace() const {
  Complex acc = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) acc += (*this)(i, i);
  return acc;
}

double DenseState::hermiticity_error() const {
  double worst = 0.0;
  for (std::size_t r = 0; r < dim_; ++r) {
    for (std::size_t c = r; c < dim_; ++c) {
      worst = std::max(worst, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
    }
  }
  return worst;
}

std::array<std::array<Complex, 2>, 2> gate_matrix(const GateSpec& gate) {
  const double r = 1.0 / std::numbers::sqrt2;
  switch (gate.kind) {
    case GateKind::hadamard_control:
      return {{{r, r}, {r, -r}}};
    case GateKind::generalized_hadamard:
      return {{{r, r * std::polar(1.0, -gate.angle)}, {r * std::polar(1.0, gate.angle), -r}}};
    case GateKind::z_rotation:
      return {{{std::polar(1.0, -0.5 * gate.angle), 0.0}, {0.0, std::polar(1.0, 0.5 * gate.angle)}}};
    case GateKind::cnot_fanout:
      break;
  }
  throw DomainError("gate_matrix: the fan-out CNOT is not a single-qubit gate");
}

void apply_gate(DenseState& state, const GateSpec& gate) {
  switch (gate.kind) {
    case GateKind::cnot_fanout:
      apply_fanout(state);
      return;
    case GateKind::hadamard_control:
    case GateKind::generalized_hadamard:
      apply_single(state, 0, gate_matrix(gate));
      return;
    case GateKind::z_rotation: {
      const Mat2 u = gate_matrix(gate);
      for (int k = 0; k < state.n(); ++k) apply_single(state, k, u);
      return;
    }
  }
}

DenseState thermal_product(int n, double epsilon) {
  DenseState s(n);
  for (std::size_t i = 0; i < s.dim(); ++i) {
    double p = 1.0;
    for (int k = 0; k < n; ++k) p *= (i & qubit_bit(n, k)) ? 0.5 * (1.0 + epsilon) : 0.5 * (1.0 - epsilon);
    s(i, i) = p;
  }
  return s;
}

DenseState prepare_rho3_dense(int n, double epsilon) {
  DenseState s = thermal_product(n, epsilon);
  apply_gate(s, {GateKind::cnot_fanout});
  apply_gate(s, {GateKind::hadamard_control});
  apply_gate(s, {GateKind::cnot_fanout});
  return s;
}

DenseState evolve_dense(const DenseState& state, const ChannelSnapshot& snapshot) {
  DenseState s = state;
  if (!cp_check(snapshot).is_cp) s.channel_not_cp = true;
  const auto t = snapshot.transfer_matrix();
  const std::size_t dim = s.dim();
  for (int k = 0; k < s.n(); ++k) {
    const std::size_t bit = qubit_bit(s.n(), k);
    for (std::size_t r = 0; r < dim; ++r) {
      if (r & bit) continue;
      for (std::size_t c = 0; c < dim; ++c) {
        if (c & bit) continue;
        transfer_block(t, s(r, c), s(r, c | bit), s(r | bit, c), s(r | bit, c | bit));
      }
    }
  }
  return s;
}

DenseState premeasure_dense(const DenseState& state, const MeasurementSetting& setting) {
  DenseState s = state;
  apply_gate(s, {GateKind::z_rotation, setting.zeta1});
  apply_gate(s, {GateKind::cnot_fanout});
  apply_gate(s, {GateKind::generalized_hadamard, setting.zeta2});
  return s;
}

std::vector<double> probabilities(const DenseState& state) {
  std::vector<double> p(state.dim());
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = state(i, i).real();
  return p;
}

double energy(const DenseState& state, double omega) {
  std::vector<double> terms(state.dim());
  for (std::size_t i = 0; i < terms.size(); ++i) {
    int z = 0;
    for (int k = 0; k < state.n(); ++k) z += (i & qubit_bit(state.n(), k)) ? -1 : 1;
    terms[i] = 0.5 * omega * z * state(i, i).real();
  }
  return numeric::pairwise_sum(terms);
}

DenseState pipeline_rho6(const NoiseParams& params, int n, double t,
                         const MeasurementSetting& setting) {
  const DenseState rho3 = prepare_rho3_dense(n, params.epsilon());
  return premeasure_dense(evolve_dense(rho3, channel_at(params, t)), setting);
}

}  // namespace qfreq::oracle
