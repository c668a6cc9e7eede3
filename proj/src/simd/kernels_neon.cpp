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

// AArch64 NEON kernels. Only built on aarch64 targets, where Advanced SIMD is
// part of the base ISA.

#include <arm_neon.h>

#include <cmath>
#include <cstddef>

#include "mecoff/simd/kernels.hpp"

namespace mecoff::simd {
namespace {

double DotNeon(const double* a, const double* b, std::size_t n) {
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    acc0 = vfmaq_f64(acc0, vld1q_f64(a + k), vld1q_f64(b + k));
    acc1 = vfmaq_f64(acc1, vld1q_f64(a + k + 2), vld1q_f64(b + k + 2));
  }
  double sum = vaddvq_f64(vaddq_f64(acc0, acc1));
  for (; k < n; ++k) sum += a[k] * b[k];
  return sum;
}

void AxpyNeon(double alpha, const double* x, double* y, std::size_t n) {
  const float64x2_t va = vdupq_n_f64(alpha);
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    vst1q_f64(y + k, vfmaq_f64(vld1q_f64(y + k), va, vld1q_f64(x + k)));
  }
  for (; k < n; ++k) y[k] += alpha * x[k];
}

double MaxAbsNeon(const double* x, std::size_t n) {
  float64x2_t m = vdupq_n_f64(0.0);
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) m = vmaxq_f64(m, vabsq_f64(vld1q_f64(x + k)));
  double out = vmaxvq_f64(m);
  for (; k < n; ++k) out = std::fmax(out, std::fabs(x[k]));
  return out;
}

constexpr KernelTable kNeonTable{Backend::kNeon, "neon", DotNeon, AxpyNeon,
                                 MaxAbsNeon};

}  // namespace

const KernelTable* NeonKernels() { return &kNeonTable; }

}  // namespace mecoff::simd
