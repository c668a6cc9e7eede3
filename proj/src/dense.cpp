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

#include "mecoff/dense.hpp"

#include <algorithm>
#include <cmath>

namespace mecoff::linalg {

// Row-by-row Crout ordering: every inner product runs over two contiguous
// row prefixes, which is what the vector dot kernels want.
bool CholeskyFactor(SquareMatrix& a, const simd::KernelTable& k) {
  const int n = a.size();
  for (int i = 0; i < n; ++i) {
    double* li = a.row(i);
    for (int j = 0; j < i; ++j) {
      const double* lj = a.row(j);
      li[j] = (li[j] - k.dot(li, lj, j)) / lj[j];
    }
    const double d = li[i] - k.dot(li, li, i);
    if (!(d > 0.0) || !std::isfinite(d)) return false;
    li[i] = std::sqrt(d);
  }
  return true;
}

void CholeskySolve(const SquareMatrix& l, std::span<double> b,
                   const simd::KernelTable& k) {
  const int n = l.size();
  for (int i = 0; i < n; ++i) {
    b[i] = (b[i] - k.dot(l.row(i), b.data(), i)) / l(i, i);
  }
  for (int i = n - 1; i >= 0; --i) {
    b[i] /= l(i, i);
    k.axpy(-b[i], l.row(i), b.data(), i);
  }
}

double RegularizedCholesky(const SquareMatrix& a, SquareMatrix& factor,
                           double first_shift, int max_attempts) {
  const int n = a.size();
  double diag_scale = 0.0;
  for (int i = 0; i < n; ++i) diag_scale = std::max(diag_scale, std::fabs(a(i, i)));
  if (diag_scale == 0.0) diag_scale = 1.0;
  double shift = 0.0;
  for (int attempt = 0; attempt <= max_attempts; ++attempt) {
    factor = a;
    if (shift > 0.0) {
      for (int i = 0; i < n; ++i) factor(i, i) += shift;
    }
    if (CholeskyFactor(factor)) return shift;
    shift = attempt == 0 ? first_shift * diag_scale : shift * 100.0;
  }
  return -1.0;
}

}  // namespace mecoff::linalg
