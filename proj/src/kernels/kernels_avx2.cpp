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

#include <immintrin.h>

#include <cmath>

#include "kernels_internal.hpp"

// Compiled with -mavx2 only; callers reach these through avx2_kernels(),
// which checks CPU support first. Tails fall back to the scalar expressions
// written in the same operation order.

namespace qfreq::kernels::detail {

namespace {

constexpr std::size_t kLanes = 4;

inline __m256d abs_pd(__m256d x) { return _mm256_andnot_pd(_mm256_set1_pd(-0.0), x); }

void readout(const double* s, const double* c, const double* cosine, double* p0, double* p1,
             std::size_t count) {
  const __m256d two = _mm256_set1_pd(2.0);
  const __m256d half = _mm256_set1_pd(0.5);
  std::size_t i = 0;
  for (; i + kLanes <= count; i += kLanes) {
    const __m256d vs = _mm256_loadu_pd(s + i);
    const __m256d shift = _mm256_mul_pd(_mm256_mul_pd(two, _mm256_loadu_pd(c + i)),
                                        _mm256_loadu_pd(cosine + i));
    _mm256_storeu_pd(p0 + i, _mm256_mul_pd(half, _mm256_add_pd(vs, shift)));
    _mm256_storeu_pd(p1 + i, _mm256_mul_pd(half, _mm256_sub_pd(vs, shift)));
  }
  for (; i < count; ++i) {
    const double shift = (2.0 * c[i]) * cosine[i];
    p0[i] = 0.5 * (s[i] + shift);
    p1[i] = 0.5 * (s[i] - shift);
  }
}

void qfi_terms(const double* s, const double* c, const double* f, double t, double* out,
               std::size_t count) {
  const __m256d vt = _mm256_set1_pd(t);
  const __m256d four = _mm256_set1_pd(4.0);
  const __m256d zero = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + kLanes <= count; i += kLanes) {
    const __m256d vs = _mm256_loadu_pd(s + i);
    const __m256d vc = _mm256_loadu_pd(c + i);
    const __m256d ft = _mm256_mul_pd(_mm256_loadu_pd(f + i), vt);
    const __m256d num =
        _mm256_mul_pd(_mm256_mul_pd(four, _mm256_mul_pd(ft, ft)), _mm256_mul_pd(vc, vc));
    const __m256d keep = _mm256_cmp_pd(vs, zero, _CMP_GT_OQ);
    _mm256_storeu_pd(out + i, _mm256_and_pd(keep, _mm256_div_pd(num, vs)));
  }
  for (; i < count; ++i) {
    const double ft = f[i] * t;
    const double num = ((4.0 * (ft * ft)) * (c[i] * c[i]));
    out[i] = s[i] > 0.0 ? num / s[i] : 0.0;
  }
}

inline __m256d branch(__m256d p, __m256d d) {
  const __m256d cutoff = _mm256_set1_pd(kFisherCutoff);
  const __m256d negligible = _mm256_and_pd(_mm256_cmp_pd(p, cutoff, _CMP_LE_OQ),
                                           _mm256_cmp_pd(abs_pd(d), cutoff, _CMP_LE_OQ));
  return _mm256_andnot_pd(negligible, _mm256_div_pd(_mm256_mul_pd(d, d), p));
}

inline double branch(double p, double d) {
  if (p <= kFisherCutoff && std::abs(d) <= kFisherCutoff) return 0.0;
  return (d * d) / p;
}

void fisher_terms(const double* p0, const double* p1, const double* d0, const double* d1,
                  double* out, std::size_t count) {
  std::size_t i = 0;
  for (; i + kLanes <= count; i += kLanes) {
    const __m256d b0 = branch(_mm256_loadu_pd(p0 + i), _mm256_loadu_pd(d0 + i));
    const __m256d b1 = branch(_mm256_loadu_pd(p1 + i), _mm256_loadu_pd(d1 + i));
    _mm256_storeu_pd(out + i, _mm256_add_pd(b0, b1));
  }
  for (; i < count; ++i) out[i] = branch(p0[i], d0[i]) + branch(p1[i], d1[i]);
}

void phase_fisher_terms(const double* s, const double* c, const double* f, const double* cosine,
                        const double* sine, double t, double* out, std::size_t count) {
  const __m256d vt = _mm256_set1_pd(t);
  const __m256d four = _mm256_set1_pd(4.0);
  const __m256d zero = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + kLanes <= count; i += kLanes) {
    const __m256d vs = _mm256_loadu_pd(s + i);
    const __m256d vc = _mm256_loadu_pd(c + i);
    const __m256d vcos = _mm256_loadu_pd(cosine + i);
    const __m256d vsin = _mm256_loadu_pd(sine + i);
    const __m256d ft = _mm256_mul_pd(_mm256_loadu_pd(f + i), vt);
    const __m256d c2 = _mm256_mul_pd(vc, vc);
    const __m256d num = _mm256_mul_pd(
        _mm256_mul_pd(_mm256_mul_pd(_mm256_mul_pd(four, vs), c2), _mm256_mul_pd(ft, ft)),
        _mm256_mul_pd(vsin, vsin));
    const __m256d den = _mm256_sub_pd(_mm256_mul_pd(vs, vs),
                                      _mm256_mul_pd(_mm256_mul_pd(four, c2),
                                                    _mm256_mul_pd(vcos, vcos)));
    const __m256d keep = _mm256_cmp_pd(den, zero, _CMP_GT_OQ);
    _mm256_storeu_pd(out + i, _mm256_and_pd(keep, _mm256_div_pd(num, den)));
  }
  for (; i < count; ++i) {
    const double ft = f[i] * t;
    const double c2 = c[i] * c[i];
    const double num = (((4.0 * s[i]) * c2) * (ft * ft)) * (sine[i] * sine[i]);
    const double den = (s[i] * s[i]) - ((4.0 * c2) * (cosine[i] * cosine[i]));
    out[i] = den > 0.0 ? num / den : 0.0;
  }
}

}  // namespace

const KernelTable& avx2_table() {
  static const KernelTable table{"avx2", readout, qfi_terms, fisher_terms, phase_fisher_terms};
  return table;
}

}  // namespace qfreq::kernels::detail
