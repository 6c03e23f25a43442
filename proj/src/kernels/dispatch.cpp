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

#include <atomic>
#include <cstdlib>
#include <string>

#include "kernels_impl.hpp"

namespace gbig::kernels {
namespace {

bool cpu_has_avx2() {
#if defined(GBIG_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelSet* best_available() {
  if (const KernelSet* set = avx2_kernels()) return set;
  return &scalar_kernels();
}

const KernelSet* initial_selection() {
  if (const char* env = std::getenv("GBIG_KERNELS")) {
    const std::string_view requested(env);
    if (requested == "scalar") return &scalar_kernels();
    if (requested == "avx2" && avx2_kernels() != nullptr) return avx2_kernels();
  }
  return best_available();
}

std::atomic<const KernelSet*>& current() {
  static std::atomic<const KernelSet*> set{initial_selection()};
  return set;
}

}  // namespace

const KernelSet* avx2_kernels() {
#if defined(GBIG_HAVE_AVX2)
  static const bool supported = cpu_has_avx2();
  return supported ? &detail::avx2_set() : nullptr;
#else
  return nullptr;
#endif
}

const KernelSet& active() { return *current().load(std::memory_order_relaxed); }

bool select(std::string_view name) {
  const KernelSet* chosen = nullptr;
  if (name == "scalar") {
    chosen = &scalar_kernels();
  } else if (name == "avx2") {
    chosen = avx2_kernels();
  } else if (name == "auto") {
    chosen = best_available();
  }
  if (chosen == nullptr) return false;
  current().store(chosen, std::memory_order_relaxed);
  return true;
}

}  // namespace gbig::kernels
