// Copyright 2026 The gbig Authors.
//
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

#pragma once

// Inner-loop kernels used by the dense and sparse products in linalg.
//
// Two implementations exist: a portable scalar reference and an AVX2+FMA
// variant. The active set is chosen once at startup from CPU features and
// may be pinned with GBIG_KERNELS=scalar|avx2. Both sets must agree to a
// few ulps; tests/test_kernels.cpp holds the equivalence checks.

#include <cassert>
#include <cstddef>
#include <span>
#include <string_view>

namespace gbig::kernels {

struct KernelSet {
  std::string_view name;
  // y += alpha * x
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  double (*dot)(const double* x, const double* y, std::size_t n);
  // x = max(x, 0)
  void (*relu)(double* x, std::size_t n);
  // grad[i] = pre[i] > 0 ? grad[i] : 0
  void (*relu_backward)(const double* pre, double* grad, std::size_t n);
  // x *= alpha
  void (*scale)(double alpha, double* x, std::size_t n);
};

const KernelSet& scalar_kernels();

// nullptr when the variant was not compiled in or the CPU lacks AVX2/FMA.
const KernelSet* avx2_kernels();

const KernelSet& active();

// Pins the active set by name ("scalar", "avx2" or "auto"). Returns false if
// the requested set is unavailable, leaving the selection unchanged.
bool select(std::string_view name);

inline void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  assert(x.size() == y.size());
  active().axpy(alpha, x.data(), y.data(), x.size());
}

inline double dot(std::span<const double> x, std::span<const double> y) {
  assert(x.size() == y.size());
  return active().dot(x.data(), y.data(), x.size());
}

inline void relu(std::span<double> x) { active().relu(x.data(), x.size()); }

inline void relu_backward(std::span<const double> pre, std::span<double> grad) {
  assert(pre.size() == grad.size());
  active().relu_backward(pre.data(), grad.data(), grad.size());
}

inline void scale(double alpha, std::span<double> x) { active().scale(alpha, x.data(), x.size()); }

}  // namespace gbig::kernels
