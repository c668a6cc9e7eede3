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

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mecoff/simd/kernels.hpp"

namespace mecoff::simd {

#if !defined(MECOFF_HAVE_AVX2_KERNELS)
const KernelTable* Avx2Kernels() { return nullptr; }
#endif
#if !defined(MECOFF_HAVE_NEON_KERNELS)
const KernelTable* NeonKernels() { return nullptr; }
#endif

namespace {

bool CpuHasAvx2() {
#if defined(MECOFF_HAVE_AVX2_KERNELS) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelTable* TableFor(Backend backend) {
  switch (backend) {
    case Backend::kScalar:
      return &ScalarKernels();
    case Backend::kAvx2:
      return Avx2Kernels();
    case Backend::kNeon:
      return NeonKernels();
  }
  return nullptr;
}

std::atomic<const KernelTable*> g_active{nullptr};

}  // namespace

std::string_view BackendName(Backend backend) {
  switch (backend) {
    case Backend::kScalar:
      return "scalar";
    case Backend::kAvx2:
      return "avx2";
    case Backend::kNeon:
      return "neon";
  }
  return "unknown";
}

bool BackendAvailable(Backend backend) {
  switch (backend) {
    case Backend::kScalar:
      return true;
    case Backend::kAvx2:
      return Avx2Kernels() != nullptr && CpuHasAvx2();
    case Backend::kNeon:
      return NeonKernels() != nullptr;
  }
  return false;
}

std::vector<Backend> AvailableBackends() {
  std::vector<Backend> out;
  for (Backend b : {Backend::kScalar, Backend::kAvx2, Backend::kNeon}) {
    if (BackendAvailable(b)) out.push_back(b);
  }
  return out;
}

Backend DetectBackend() {
  if (const char* env = std::getenv("MECOFF_SIMD")) {
    const std::string_view want(env);
    for (Backend b : {Backend::kScalar, Backend::kAvx2, Backend::kNeon}) {
      if (want == BackendName(b) && BackendAvailable(b)) return b;
    }
  }
  if (BackendAvailable(Backend::kAvx2)) return Backend::kAvx2;
  if (BackendAvailable(Backend::kNeon)) return Backend::kNeon;
  return Backend::kScalar;
}

const KernelTable& Kernels() {
  const KernelTable* table = g_active.load(std::memory_order_acquire);
  if (table == nullptr) {
    table = TableFor(DetectBackend());
    g_active.store(table, std::memory_order_release);
  }
  return *table;
}

void SelectBackend(Backend backend) {
  if (!BackendAvailable(backend)) {
    throw std::invalid_argument("SIMD backend '" +
                                std::string(BackendName(backend)) +
                                "' is not available on this machine");
  }
  g_active.store(TableFor(backend), std::memory_order_release);
}

}  // namespace mecoff::simd
