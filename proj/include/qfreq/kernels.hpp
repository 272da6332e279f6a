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

#include <cstddef>
#include <span>
#include <string_view>

// Data-parallel per-block arithmetic used by the readout and Fisher-information
// sums. Every kernel exists as a scalar reference and, when the build and the
// CPU allow it, an AVX2 variant. Variants perform the same IEEE operations in
// the same order (the library is built with -ffp-contract=off), so they agree
// bit for bit; reductions are done afterwards by numeric::pairwise_sum.
//
// Inputs are multiplicity-weighted block quantities:
//   population[m] = C(n-1,m) (a_m + b_m),  coherence[m] = C(n-1,m) c_m.

namespace qfreq::kernels {

/// p0 = (s + 2 c cos) / 2,  p1 = (s - 2 c cos) / 2.
using ReadoutFn = void (*)(const double* population, const double* coherence,
                           const double* cosine, double* p0, double* p1, std::size_t count);

/// 4 (f t)^2 c^2 / s, zero where s <= 0.
using QfiTermsFn = void (*)(const double* population, const double* coherence,
                            const double* f, double t, double* out, std::size_t count);

/// d0^2 / p0 + d1^2 / p1; a branch contributes 0 when p <= 1e-30 and |d| <= 1e-30.
using FisherTermsFn = void (*)(const double* p0, const double* p1, const double* d0,
                               const double* d1, double* out, std::size_t count);

/// 4 s c^2 (f t)^2 sin^2 / (s^2 - 4 c^2 cos^2), zero where the denominator <= 0.
using PhaseFisherTermsFn = void (*)(const double* population, const double* coherence,
                                    const double* f, const double* cosine, const double* sine,
                                    double t, double* out, std::size_t count);

struct KernelTable {
  std::string_view name;
  ReadoutFn readout;
  QfiTermsFn qfi_terms;
  FisherTermsFn fisher_terms;
  PhaseFisherTermsFn phase_fisher_terms;
};

inline constexpr double kFisherCutoff = 1e-30;

const KernelTable& scalar_kernels();

/// AVX2 table, or nullptr when not compiled in or unsupported by this CPU.
const KernelTable* avx2_kernels();

/// Table used by the library. Picks AVX2 when available unless the
/// environment variable QFREQ_KERNELS is set to "scalar".
const KernelTable& active_kernels();

}  // namespace qfreq::kernels
