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

#ifndef MECOFF_SIMD_KERNELS_HPP_
#define MECOFF_SIMD_KERNELS_HPP_

#include <cstddef>
#include <string_view>
#include <vector>

namespace mecoff::simd {

// Double-precision vector kernels used by the dense Newton solves. Every
// backend computes the same mathematical result; summation order differs,
// so results agree to rounding, not bit for bit.
enum class Backend { kScalar, kAvx2, kNeon };

struct KernelTable {
  Backend backend;
  const char* name;
  // sum_k a[k] * b[k]
  double (*dot)(const double* a, const double* b, std::size_t n);
  // y[k] += alpha * x[k]
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  // max_k |x[k]|, 0 for n == 0
  double (*max_abs)(const double* x, std::size_t n);
};

const KernelTable& ScalarKernels();

// nullptr when the backend was not compiled in.
const KernelTable* Avx2Kernels();
const KernelTable* NeonKernels();

// True when the backend is compiled in and the running CPU supports it.
bool BackendAvailable(Backend backend);

// Best available backend. MECOFF_SIMD=scalar|avx2|neon in the environment
// overrides the choice when that backend is available.
Backend DetectBackend();

// The table all solver code goes through. Chosen on first use.
const KernelTable& Kernels();

// Forces a backend; throws std::invalid_argument if it is unavailable.
// Intended for tests and benchmarks; not safe while solves are running.
void SelectBackend(Backend backend);

std::string_view BackendName(Backend backend);
std::vector<Backend> AvailableBackends();

}  // namespace mecoff::simd

#endif  // MECOFF_SIMD_KERNELS_HPP_
