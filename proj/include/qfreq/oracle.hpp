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
#include <cstdint>
#include <string>
#include <vector>

#include "qfreq/blockstate.hpp"
#include "qfreq/channel.hpp"
#include "qfreq/metrology.hpp"

// Brute-force reference implementation on the full 2^n density matrix.
// Nothing here uses the block representation; it exists to check it.
// Qubit 0 is the control and the most significant bit of a basis index.

namespace qfreq::oracle {

inline constexpr int kMaxDenseQubits = 12;
inline constexpr int kMaxQfiQubits = 8;

class DenseState {
 public:
  /// Zero matrix on n qubits. Throws SizeError unless 1 <= n <= 12.
  explicit DenseState(int n);

  int n() const noexcept { return n_; }
  std::size_t dim() const noexcept { return dim_; }
  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * dim_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * dim_ + c]; }
  const std::vector<Complex>& data() const noexcept { return data_; }

  Complex trace() const;
  /// max |rho_ij - conj(rho_ji)|
  double hermiticity_error() const;

  /// Set when a non-CP snapshot was applied by evolve_dense.
  bool channel_not_cp = false;

 private:
  int n_;
  std::size_t dim_;
  std::vector<Complex> data_;
};

enum class GateKind { cnot_fanout, hadamard_control, generalized_hadamard, z_rotation };

struct GateSpec {
  GateKind kind = GateKind::cnot_fanout;
  double angle = 0.0;  // zeta2 for generalized_hadamard, zeta1 for z_rotation
};

/// 2x2 matrix of a single-qubit gate (identity-free kinds only).
std::array<std::array<Complex, 2>, 2> gate_matrix(const GateSpec& gate);

/// rho -> U rho U^dagger. z_rotation acts on every qubit, the Hadamards on
/// the control, cnot_fanout flips every register qubit when the control is 1.
void apply_gate(DenseState& state, const GateSpec& gate);

/// Thermal product state diag((1-eps)/2, (1+eps)/2)^{(x) n}.
DenseState thermal_product(int n, double epsilon);

/// Fan-out CNOT, control Hadamard, fan-out CNOT applied to the thermal product.
DenseState prepare_rho3_dense(int n, double epsilon);

/// Applies the channel to every qubit through its Pauli transfer matrix.
DenseState evolve_dense(const DenseState& state, const ChannelSnapshot& snapshot);

/// z rotations by zeta1 on all qubits, fan-out CNOT, generalized Hadamard.
DenseState premeasure_dense(const DenseState& state, const MeasurementSetting& setting);

/// Diagonal of the state (energy-basis outcome probabilities).
std::vector<double> probabilities(const DenseState& state);

/// tr(H rho) with H = (omega/2) sum_k sigma_z^(k).
double energy(const DenseState& state, double omega);

/// rho6 for the given parameters: prepare, evolve, premeasure.
DenseState pipeline_rho6(const NoiseParams& params, int n, double t,
                         const MeasurementSetting& setting);

/// Hermitian eigen-decomposition by cyclic Jacobi. Eigenvectors are the
/// columns of `vectors` (row-major dim x dim), eigenvalues ascending.
struct HermitianEigen {
  std::vector<double> values;
  std::vector<Complex> vectors;
  int sweeps = 0;
};
HermitianEigen jacobi_eigen(const std::vector<Complex>& matrix, std::size_t dim);

/// Classical Fisher information of the energy measurement from dense
/// probabilities, derivative by central differences.
double cfi_dense(const NoiseParams& params, int n, double t, const MeasurementSetting& setting,
                 DerivativeMode mode = DerivativeMode::finite_difference);

/// QFI of rho5 from its full eigen-decomposition. Throws SizeError for n > 8.
double qfi_dense(const NoiseParams& params, int n, double t,
                 DerivativeMode mode = DerivativeMode::finite_difference);

/// Adaptive Dormand-Prince integration of the time-local master equation.
/// Throws SingularRateError if the rates diverge before t.
struct IntegrationStats {
  int accepted = 0;
  int rejected = 0;
};
QubitState integrate_time_local(const NoiseParams& params, const QubitState& initial, double t,
                                double absolute_tolerance = 1e-10,
                                IntegrationStats* stats = nullptr);

// ---- full-pipeline equivalence check ---------------------------------------

enum class Fault { none, flip_coherence_sign };

struct VerifyOptions {
  std::uint64_t seed = 20260101;
  int draws = 200;
  int n_min = 2;
  int n_max = 6;
  Fault fault = Fault::none;
};

struct CheckResult {
  std::string name;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  bool relative = false;
  bool passed = true;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  int draws = 0;
  bool all_passed() const;
};

/// Checks the analytic readout and energies against the dense
/// pipeline on random parameters with R < 1/4. Throws SizeError if n_max > 6.
VerifyReport verify_equivalence(const VerifyOptions& options);

}  // namespace qfreq::oracle
