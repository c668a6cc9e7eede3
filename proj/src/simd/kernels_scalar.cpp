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

// Reference kernels. The vector backends are tested against these.

#include <cmath>
#include <cstddef>

#include "mecoff/simd/kernels.hpp"

namespace mecoff::simd {
namespace {

double DotScalar(const double* a, const double* b, std::size_t n) {
  double sum = 0.0;
  for (std::size_t k = 0; k < n; ++k) sum += a[k] * b[k];
  return sum;
}

void AxpyScalar(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) y[k] += alpha * x[k];
}

double MaxAbsScalar(const double* x, std::size_t n) {
  double m = 0.0;
  for (std::size_t k = 0; k < n; ++k) m = std::fmax(m, std::fabs(x[k]));
  return m;
}

constexpr KernelTable kScalarTable{Backend::kScalar, "scalar", DotScalar,
                                   AxpyScalar, MaxAbsScalar};

}  // namespace

const KernelTable& ScalarKernels() { return kScalarTable; }

}  // namespace mecoff::simd
