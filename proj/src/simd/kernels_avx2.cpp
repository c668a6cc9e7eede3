// Copyright 2026 The mecoff Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// AVX2 + FMA kernels. This file is built with -mavx2 -mfma; nothing here may
// run unless the dispatcher has confirmed CPU support.

#include <immintrin.h>

#include <cmath>
#include <cstddef>

#include "mecoff/simd/kernels.hpp"

namespace mecoff::simd {
namespace {

inline double HorizontalSum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d pair = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(pair, _mm_unpackhi_pd(pair, pair)));
}

double DotAvx2(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 8 <= n; k += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + k), _mm256_loadu_pd(b + k), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + k + 4),
                           _mm256_loadu_pd(b + k + 4), acc1);
  }
  if (k + 4 <= n) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + k), _mm256_loadu_pd(b + k), acc0);
    k += 4;
  }
  double sum = HorizontalSum(_mm256_add_pd(acc0, acc1));
  for (; k < n; ++k) sum += a[k] * b[k];
  return sum;
}

void AxpyAvx2(double alpha, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d vy =
        _mm256_fmadd_pd(va, _mm256_loadu_pd(x + k), _mm256_loadu_pd(y + k));
    _mm256_storeu_pd(y + k, vy);
  }
  for (; k < n; ++k) y[k] += alpha * x[k];
}

double MaxAbsAvx2(const double* x, std::size_t n) {
  const __m256d sign_mask = _mm256_set1_pd(-0.0);
  __m256d m = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    m = _mm256_max_pd(m, _mm256_andnot_pd(sign_mask, _mm256_loadu_pd(x + k)));
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, m);
  double out = std::fmax(std::fmax(lanes[0], lanes[1]),
                         std::fmax(lanes[2], lanes[3]));
  for (; k < n; ++k) out = std::fmax(out, std::fabs(x[k]));
  return out;
}

constexpr KernelTable kAvx2Table{Backend::kAvx2, "avx2", DotAvx2, AxpyAvx2,
                                 MaxAbsAvx2};

}  // namespace

const KernelTable* Avx2Kernels() { return &kAvx2Table; }

}  // namespace mecoff::simd
