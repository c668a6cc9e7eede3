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

#ifndef MECOFF_DENSE_HPP_
#define MECOFF_DENSE_HPP_

#include <algorithm>
#include <cstddef>
#include <span>
#include <vector>

#include "mecoff/simd/kernels.hpp"

namespace mecoff::linalg {

// Row-major n x n matrix.
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(int n) { Resize(n); }

  void Resize(int n) {
    n_ = n;
    data_.assign(static_cast<std::size_t>(n) * n, 0.0);
  }
  void SetZero() { std::fill(data_.begin(), data_.end(), 0.0); }

  int size() const { return n_; }
  double& operator()(int i, int j) { return data_[Index(i, j)]; }
  double operator()(int i, int j) const { return data_[Index(i, j)]; }
  double* row(int i) { return data_.data() + Index(i, 0); }
  const double* row(int i) const { return data_.data() + Index(i, 0); }

 private:
  std::size_t Index(int i, int j) const {
    return static_cast<std::size_t>(i) * n_ + j;
  }

  int n_ = 0;
  std::vector<double> data_;
};

// Overwrites the lower triangle of `a` with its Cholesky factor L (A = L L^T).
// Only the lower triangle of `a` is read. Returns false on a nonpositive or
// non-finite pivot, leaving `a` partially overwritten.
bool CholeskyFactor(SquareMatrix& a, const simd::KernelTable& k);
inline bool CholeskyFactor(SquareMatrix& a) {
  return CholeskyFactor(a, simd::Kernels());
}

// Solves L L^T x = b in place given the factor from CholeskyFactor.
void CholeskySolve(const SquareMatrix& l, std::span<double> b,
                   const simd::KernelTable& k);
inline void CholeskySolve(const SquareMatrix& l, std::span<double> b) {
  CholeskySolve(l, b, simd::Kernels());
}

// Factors a + shift*I into `factor`, starting from shift = 0 and then
// `first_shift`, growing by 100x per failure (scaled by the largest diagonal
// entry). Returns the shift used, or a negative value if every attempt failed.
double RegularizedCholesky(const SquareMatrix& a, SquareMatrix& factor,
                           double first_shift = 1e-10, int max_attempts = 8);

}  // namespace mecoff::linalg

#endif  // MECOFF_DENSE_HPP_
