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
#include <cmath>
#include <numeric>

#include "qfreq/errors.hpp"
#include "qfreq/oracle.hpp"

namespace qfreq::oracle {

// Cyclic Jacobi for a complex Hermitian matrix. Each rotation first removes
// the phase of a_pq with a diagonal unitary and then applies an ordinary real
// Jacobi rotation, i.e. J = D G with
//   J_pp = c, J_pq = s, J_qp = -s e^{-i theta}, J_qq = c e^{-i theta}.
HermitianEigen jacobi_eigen(const std::vector<Complex>& matrix, std::size_t dim) {
  if (matrix.size() != dim * dim) throw DomainError("jacobi_eigen: matrix is not dim x dim");
  std::vector<Complex> a = matrix;
  std::vector<Complex> v(dim * dim, Complex(0.0, 0.0));
  for (std::size_t i = 0; i < dim; ++i) v[i * dim + i] = 1.0;
  auto at = [&](std::size_t r, std::size_t c) -> Complex& { return a[r * dim + c]; };

  double frob = 0.0;
  for (const Complex& x : a) frob += std::norm(x);
  const double stop = 1e-30 * frob;

  HermitianEigen out;
  constexpr int kMaxSweeps = 100;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < dim; ++p) {
      for (std::size_t q = p + 1; q < dim; ++q) off += 2.0 * std::norm(at(p, q));
    }
    out.sweeps = sweep;
    if (off <= stop) break;

    for (std::size_t p = 0; p < dim; ++p) {
      for (std::size_t q = p + 1; q < dim; ++q) {
        const double r = std::abs(at(p, q));
        if (r == 0.0) continue;
        const Complex phase = at(p, q) / r;  // e^{i theta}
        const double app = at(p, p).real();
        const double aqq = at(q, q).real();
        const double zeta = (aqq - app) / (2.0 * r);
        const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const Complex jpp = c;
        const Complex jpq = s;
        const Complex jqp = -s * std::conj(phase);
        const Complex jqq = c * std::conj(phase);

        for (std::size_t k = 0; k < dim; ++k) {  // A J
          const Complex akp = at(k, p);
          const Complex akq = at(k, q);
          at(k, p) = akp * jpp + akq * jqp;
          at(k, q) = akp * jpq + akq * jqq;
        }
        for (std::size_t k = 0; k < dim; ++k) {  // J^dagger A
          const Complex apk = at(p, k);
          const Complex aqk = at(q, k);
          at(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
          at(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
        }
        at(p, q) = 0.0;
        at(q, p) = 0.0;
        at(p, p) = app - t * r;
        at(q, q) = aqq + t * r;
        for (std::size_t k = 0; k < dim; ++k) {  // V J
          const Complex vkp = v[k * dim + p];
          const Complex vkq = v[k * dim + q];
          v[k * dim + p] = vkp * jpp + vkq * jqp;
          v[k * dim + q] = vkp * jpq + vkq * jqq;
        }
      }
    }
  }

  std::vector<std::size_t> order(dim);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return at(i, i).real() < at(j, j).real(); });
  out.values.resize(dim);
  out.vectors.resize(dim * dim);
  for (std::size_t col = 0; col < dim; ++col) {
    out.values[col] = at(order[col], order[col]).real();
    for (std::size_t k = 0; k < dim; ++k) out.vectors[k * dim + col] = v[k * dim + order[col]];
  }
  return out;
}

}  // namespace qfreq::oracle
