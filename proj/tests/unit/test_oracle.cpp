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
#include <random>

#include <gtest/gtest.h>

#include "qfreq/errors.hpp"
#include "qfreq/metrology.hpp"
#include "qfreq/oracle.hpp"
#include "support.hpp"

using namespace qfreq;
using namespace qfreq::oracle;
using qfreq::testing::RelClose;

namespace {

double max_abs_diff(const DenseState& a, const DenseState& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i) m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

double min_eigenvalue(const DenseState& s) { return jacobi_eigen(s.data(), s.dim()).values.front(); }

}  // namespace

TEST(DenseState, SizeGuard) {
  EXPECT_THROW(DenseState(0), SizeError);
  EXPECT_THROW(DenseState(13), SizeError);
  EXPECT_THROW(prepare_rho3_dense(13, 0.1), SizeError);
  EXPECT_NO_THROW(DenseState(1));
}

TEST(Gates, AreUnitary) {
  for (GateSpec g : {GateSpec{GateKind::hadamard_control, 0.0}, GateSpec{GateKind::generalized_hadamard, 0.7},
                     GateSpec{GateKind::z_rotation, 1.9}}) {
    const auto u = gate_matrix(g);
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        Complex acc = 0.0;
        for (int k = 0; k < 2; ++k) acc += u[i][k] * std::conj(u[j][k]);
        EXPECT_NEAR(std::abs(acc - Complex(i == j ? 1.0 : 0.0)), 0.0, 1e-15);
      }
    }
  }
}

TEST(Prepare, ZeroTemperatureLimitIsGhz) {
  for (int n = 1; n <= 5; ++n) {
    const DenseState s = prepare_rho3_dense(n, 1.0);
    const std::size_t last = s.dim() - 1;
    EXPECT_NEAR(s(0, 0).real(), 0.5, 1e-15);
    EXPECT_NEAR(s(last, last).real(), 0.5, 1e-15);
    EXPECT_NEAR(s(0, last).real(), -0.5, 1e-15);
    EXPECT_NEAR(std::abs(s.trace() - 1.0), 0.0, 1e-15);
  }
}

TEST(Prepare, SingleAtomIsHadamardOfThermal) {
  const double eps = 0.3;
  const DenseState s = prepare_rho3_dense(1, eps);
  EXPECT_NEAR(s(0, 0).real(), 0.5, 1e-15);
  EXPECT_NEAR(s(1, 1).real(), 0.5, 1e-15);
  EXPECT_NEAR(s(0, 1).real(), -eps / 2, 1e-15);
}

TEST(Prepare, ZeroEnergyAndValidState) {
  for (int n = 1; n <= 6; ++n) {
    const DenseState s = prepare_rho3_dense(n, 0.42);
    EXPECT_NEAR(energy(s, 1.3), 0.0, 1e-14);
    EXPECT_LT(s.hermiticity_error(), 1e-15);
    EXPECT_GT(min_eigenvalue(s), -1e-10);
  }
}

TEST(Evolve, IdentityAndThermalFixedPoint) {
  const NoiseParams p = qfreq::testing::reference_params();
  const DenseState s = prepare_rho3_dense(4, 0.2);
  EXPECT_LT(max_abs_diff(evolve_dense(s, ChannelSnapshot::identity()), s), 1e-15);
  const DenseState th = thermal_product(4, p.epsilon());
  EXPECT_LT(max_abs_diff(evolve_dense(th, channel_at(p, 3.0)), th), 1e-15);
}

TEST(Evolve, FlagsNonCpSnapshot) {
  const DenseState s = prepare_rho3_dense(2, 0.2);
  const DenseState bad = evolve_dense(s, ChannelSnapshot::from_parameters(0.9, 0.99, 0.0));
  EXPECT_TRUE(bad.channel_not_cp);
  EXPECT_FALSE(evolve_dense(s, ChannelSnapshot::identity()).channel_not_cp);
}

TEST(Premeasure, UndoesPreparationAtIdentityChannel) {
  // zeta1 = zeta2 = 0 with no evolution: H CNOT CNOT H CNOT = CNOT, so the
  // statistics are thermal with the register flipped when the control is 1
  for (int n = 1; n <= 5; ++n) {
    const double eps = 0.35;
    const DenseState rho6 = premeasure_dense(prepare_rho3_dense(n, eps), MeasurementSetting{});
    const std::vector<double> p = probabilities(rho6);
    const std::vector<double> th = probabilities(thermal_product(n, eps));
    const std::size_t half = p.size() / 2;
    for (std::size_t i = 0; i < p.size(); ++i) {
      const std::size_t j = i < half ? i : half + ((~i) & (half - 1));
      EXPECT_NEAR(p[i], th[j], 1e-14) << n << " " << i;
    }
  }
}

TEST(Premeasure, PreservesSpectrum) {
  const NoiseParams p = qfreq::testing::reference_params();
  const DenseState rho4 = evolve_dense(prepare_rho3_dense(4, 0.3), channel_at(p, 1.0));
  const DenseState rho6 = premeasure_dense(rho4, MeasurementSetting{0.4, 1.7, 1.0});
  const HermitianEigen a = jacobi_eigen(rho4.data(), rho4.dim());
  const HermitianEigen b = jacobi_eigen(rho6.data(), rho6.dim());
  for (std::size_t i = 0; i < a.values.size(); ++i) EXPECT_NEAR(a.values[i], b.values[i], 1e-12);
  EXPECT_NEAR(std::abs(rho6.trace() - 1.0), 0.0, 1e-12);
}

TEST(Jacobi, ReconstructsMatrix) {
  std::mt19937_64 rng(6);
  std::normal_distribution<double> g;
  const std::size_t dim = 16;
  std::vector<Complex> m(dim * dim);
  for (std::size_t i = 0; i < dim; ++i) {
    m[i * dim + i] = g(rng);
    for (std::size_t j = i + 1; j < dim; ++j) {
      m[i * dim + j] = Complex(g(rng), g(rng));
      m[j * dim + i] = std::conj(m[i * dim + j]);
    }
  }
  const HermitianEigen e = jacobi_eigen(m, dim);
  for (std::size_t i = 1; i < dim; ++i) EXPECT_LE(e.values[i - 1], e.values[i]);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      Complex acc = 0.0;
      for (std::size_t k = 0; k < dim; ++k) {
        acc += e.vectors[i * dim + k] * e.values[k] * std::conj(e.vectors[j * dim + k]);
      }
      EXPECT_LT(std::abs(acc - m[i * dim + j]), 1e-12);
    }
  }
}

TEST(QfiDense, ClosedFormAndGuards) {
  const NoiseParams p = qfreq::testing::reference_params();
  const double eta = channel_at(p, 1.0).eta_perp;
  const double expected = eta * eta * p.epsilon() * p.epsilon();
  EXPECT_TRUE(RelClose(qfi_dense(p, 1, 1.0, DerivativeMode::frozen_R_epsilon), expected, 1e-6));
  EXPECT_THROW(qfi_dense(p, 9, 1.0), SizeError);
  const NoiseParams flat(1.0, 1e300, 1e-4, 5.0);
  EXPECT_LT(qfi_dense(flat, 3, 1.0, DerivativeMode::frozen_R_epsilon), 1e-12);
}

TEST(IntegrateTimeLocal, ReproducesChannelOnRandomInputs) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 100; ++k) {
    const NoiseParams p = qfreq::testing::random_params(rng);
    const double t = 5.0 * u(rng) / p.lambda();
    const double a = u(rng);
    QubitState q;
    q(0, 0) = a;
    q(1, 1) = 1 - a;
    q(0, 1) = std::polar(std::sqrt(a * (1 - a)), 6.28 * u(rng));  // pure
    q(1, 0) = std::conj(q(0, 1));
    const QubitState x = integrate_time_local(p, q, t);
    const QubitState y = apply_to_qubit(channel_at(p, t), q);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) ASSERT_LT(std::abs(x(i, j) - y(i, j)), 1e-8) << k;
  }
}

TEST(IntegrateTimeLocal, ZeroTimeAndRelaxation) {
  const NoiseParams p(1.0, 1.0, 0.24 * 5.0 * std::tanh(0.5), 5.0);
  QubitState q;
  q(0, 0) = 1.0;
  const QubitState same = integrate_time_local(p, q, 0.0);
  EXPECT_EQ(same(0, 0), 1.0);
  const QubitState late = integrate_time_local(p, q, 50.0 / p.lambda());
  const QubitState th = QubitState::thermal(p.epsilon());
  EXPECT_NEAR(late(0, 0).real(), th(0, 0).real(), 1e-6);
  EXPECT_NEAR(late(1, 1).real(), th(1, 1).real(), 1e-6);
}

TEST(IntegrateTimeLocal, SingularRatesAreReported) {
  const double eps = std::tanh(0.5);
  const NoiseParams p(1.0, 1.0, 0.5 * 5.0 * eps, 5.0);
  QubitState q;
  q(0, 0) = 1.0;
  EXPECT_THROW(integrate_time_local(p, q, 2.0), SingularRateError);
}

TEST(Verify, DefaultSeedPasses) {
  VerifyOptions opt;
  opt.draws = 40;
  const VerifyReport r = verify_equivalence(opt);
  EXPECT_EQ(r.draws, 40);
  ASSERT_EQ(r.checks.size(), 4u);
  for (const CheckResult& c : r.checks) EXPECT_TRUE(c.passed) << c.name << " " << c.max_deviation;
  EXPECT_TRUE(r.all_passed());
}

TEST(Verify, CatchesFlippedCoherenceSign) {
  VerifyOptions opt;
  opt.draws = 20;
  opt.fault = Fault::flip_coherence_sign;
  const VerifyReport r = verify_equivalence(opt);
  EXPECT_FALSE(r.all_passed());
  for (const CheckResult& c : r.checks) {
    if (c.name == "probabilities") {
      EXPECT_FALSE(c.passed);
    }
  }
}

TEST(Verify, RejectsLargeProbes) {
  VerifyOptions opt;
  opt.n_max = 7;
  EXPECT_THROW(verify_equivalence(opt), SizeError);
}
