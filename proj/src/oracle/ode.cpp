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

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "qfreq/errors.hpp"
#include "qfreq/oracle.hpp"

namespace qfreq::oracle {

namespace {

using Mat2 = std::array<std::array<Complex, 2>, 2>;

Mat2 mul(const Mat2& x, const Mat2& y) {
  Mat2 r{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r[i][j] = x[i][0] * y[0][j] + x[i][1] * y[1][j];
  return r;
}

Mat2 dagger(const Mat2& x) {
  return {{{std::conj(x[0][0]), std::conj(x[1][0])}, {std::conj(x[0][1]), std::conj(x[1][1])}}};
}

Mat2 axpy(const Mat2& y, Complex a, const Mat2& x) {
  Mat2 r = y;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r[i][j] += a * x[i][j];
  return r;
}

// L rho L^dagger - {L^dagger L, rho} / 2
Mat2 dissipator(const Mat2& l, const Mat2& rho) {
  const Mat2 ld = dagger(l);
  const Mat2 ldl = mul(ld, l);
  Mat2 out = mul(mul(l, rho), ld);
  out = axpy(out, -0.5, mul(ldl, rho));
  return axpy(out, -0.5, mul(rho, ldl));
}

const Mat2 kSigmaPlus = {{{0.0, 1.0}, {0.0, 0.0}}};   // |0><1|
const Mat2 kSigmaMinus = {{{0.0, 0.0}, {1.0, 0.0}}};  // |1><0|
const Mat2 kSigmaZ = {{{1.0, 0.0}, {0.0, -1.0}}};

Mat2 rhs(const NoiseParams& params, double s, const Mat2& rho) {
  const TimeLocalRates g = time_local_rates(params, s);
  Mat2 h = kSigmaZ;
  for (auto& row : h)
    for (auto& x : row) x *= 0.5 * params.omega();
  // -i [H, rho]
  Mat2 out = axpy(mul(h, rho), -1.0, mul(rho, h));
  for (auto& row : out)
    for (auto& x : row) x *= Complex(0.0, -1.0);
  out = axpy(out, g.gamma_plus, dissipator(kSigmaPlus, rho));
  out = axpy(out, g.gamma_minus, dissipator(kSigmaMinus, rho));
  out = axpy(out, g.gamma_z, dissipator(kSigmaZ, rho));
  return out;
}

}  // namespace

QubitState integrate_time_local(const NoiseParams& params, const QubitState& initial, double t,
                                double absolute_tolerance, IntegrationStats* stats) {
  if (!(t >= 0.0)) throw DomainError("integrate_time_local: t must be nonnegative");
  const double r = params.ratio();
  const double zero =
      std::min(xi_first_zero(r, params.lambda()), xi_first_zero(0.5 * r, params.lambda()));
  if (t >= zero) {
    std::ostringstream msg;
    msg << "integrate_time_local: rates diverge at t = " << zero;
    throw SingularRateError(msg.str(), zero);
  }

  // Dormand-Prince 5(4)
  static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                          a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                          a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                          b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                          e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

  Mat2 y = initial.m;
  double s = 0.0;
  double h = std::min(t, 1e-2 / (params.lambda() + params.omega()));
  IntegrationStats local;
  Mat2 k1 = rhs(params, s, y);
  while (s < t) {
    if (s + h > t) h = t - s;
    const Mat2 k2 = rhs(params, s + c2 * h, axpy(y, h * a21, k1));
    const Mat2 k3 = rhs(params, s + c3 * h, axpy(axpy(y, h * a31, k1), h * a32, k2));
    const Mat2 k4 =
        rhs(params, s + c4 * h, axpy(axpy(axpy(y, h * a41, k1), h * a42, k2), h * a43, k3));
    const Mat2 k5 = rhs(params, s + c5 * h,
                        axpy(axpy(axpy(axpy(y, h * a51, k1), h * a52, k2), h * a53, k3), h * a54, k4));
    const Mat2 k6 = rhs(
        params, s + h,
        axpy(axpy(axpy(axpy(axpy(y, h * a61, k1), h * a62, k2), h * a63, k3), h * a64, k4), h * a65,
             k5));
    const Mat2 next =
        axpy(axpy(axpy(axpy(axpy(y, h * b1, k1), h * b3, k3), h * b4, k4), h * b5, k5), h * b6, k6);
    const Mat2 k7 = rhs(params, s + h, next);

    double err = 0.0;
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        const Complex e = h * (e1 * k1[i][j] + e3 * k3[i][j] + e4 * k4[i][j] + e5 * k5[i][j] +
                               e6 * k6[i][j] + e7 * k7[i][j]);
        const double scale = absolute_tolerance * (1.0 + std::max(std::abs(y[i][j]), std::abs(next[i][j])));
        err = std::max(err, std::abs(e) / scale);
      }
    }
    if (err <= 1.0) {
      s = s + h >= t ? t : s + h;
      y = next;
      k1 = k7;
      ++local.accepted;
    } else {
      ++local.rejected;
    }
    const double factor = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
    h *= factor;
    if (local.accepted + local.rejected > 10'000'000) {
      throw DomainError("integrate_time_local: step budget exhausted");
    }
  }
  if (stats != nullptr) *stats = local;
  QubitState out;
  out.m = y;
  return out;
}

}  // namespace qfreq::oracle
