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

#include "qfreq/kernels.hpp"

namespace qfreq::kernels {

namespace {

void readout(const double* s, const double* c, const double* cosine, double* p0, double* p1,
             std::size_t count) {
  for (std::size_t i = 0; i < count; ++i) {
    const double shift = (2.0 * c[i]) * cosine[i];
    p0[i] = 0.5 * (s[i] + shift);
    p1[i] = 0.5 * (s[i] - shift);
  }
}

void qfi_terms(const double* s, const double* c, const double* f, double t, double* out,
               std::size_t count) {
  for (std::size_t i = 0; i < count; ++i) {
    const double ft = f[i] * t;
    const double num = ((4.0 * (ft * ft)) * (c[i] * c[i]));
    out[i] = s[i] > 0.0 ? num / s[i] : 0.0;
  }
}

double branch(double p, double d) {
  if (p <= kFisherCutoff && std::abs(d) <= kFisherCutoff) return 0.0;
  return (d * d) / p;
}

void fisher_terms(const double* p0, const double* p1, const double* d0, const double* d1,
                  double* out, std::size_t count) {
  for (std::size_t i = 0; i < count; ++i) out[i] = branch(p0[i], d0[i]) + branch(p1[i], d1[i]);
}

void phase_fisher_terms(const double* s, const double* c, const double* f, const double* cosine,
                        const double* sine, double t, double* out, std::size_t count) {
  for (std::size_t i = 0; i < count; ++i) {
    const double ft = f[i] * t;
    const double c2 = c[i] * c[i];
    const double num = (((4.0 * s[i]) * c2) * (ft * ft)) * (sine[i] * sine[i]);
    const double den = (s[i] * s[i]) - ((4.0 * c2) * (cosine[i] * cosine[i]));
    out[i] = den > 0.0 ? num / den : 0.0;
  }
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{"scalar", readout, qfi_terms, fisher_terms, phase_fisher_terms};
  return table;
}

}  // namespace qfreq::kernels
