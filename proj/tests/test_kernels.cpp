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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "gbig/gcn.hpp"
#include "gbig/kernels.hpp"
#include "oracles.hpp"

namespace {

using gbig::kernels::KernelSet;

class KernelEquivalence : public ::testing::Test {
 protected:
  void SetUp() override {
    simd_ = gbig::kernels::avx2_kernels();
    if (simd_ == nullptr) GTEST_SKIP() << "no AVX2 variant on this host";
  }
  void TearDown() override { gbig::kernels::select("auto"); }

  const KernelSet& ref_ = gbig::kernels::scalar_kernels();
  const KernelSet* simd_ = nullptr;
  std::mt19937_64 rng_{7};
};

std::vector<double> random_vec(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  std::vector<double> v(n);
  for (double& e : v) e = normal(rng);
  return v;
}

// Sizes straddle every unroll boundary so the scalar tails get exercised.
constexpr std::size_t kSizes[] = {0, 1, 3, 4, 5, 7, 8, 9, 15, 16, 17, 31, 32, 33, 63, 64, 65, 130};

TEST_F(KernelEquivalence, AxpyMatchesReference) {
  for (std::size_t n : kSizes) {
    const auto x = random_vec(n, rng_);
    auto y_ref = random_vec(n, rng_);
    auto y_simd = y_ref;
    ref_.axpy(0.37, x.data(), y_ref.data(), n);
    simd_->axpy(0.37, x.data(), y_simd.data(), n);
    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(y_ref[i], y_simd[i], 1e-14) << "n=" << n << " i=" << i;
  }
}

TEST_F(KernelEquivalence, DotMatchesReference) {
  for (std::size_t n : kSizes) {
    const auto x = random_vec(n, rng_);
    const auto y = random_vec(n, rng_);
    const double a = ref_.dot(x.data(), y.data(), n);
    const double b = simd_->dot(x.data(), y.data(), n);
    EXPECT_NEAR(a, b, 1e-12 * (1.0 + std::abs(a))) << "n=" << n;
  }
}

TEST_F(KernelEquivalence, ReluFamilyIsBitExact) {
  for (std::size_t n : kSizes) {
    auto a = random_vec(n, rng_);
    if (n > 2) a[1] = 0.0, a[2] = -0.0;
    auto b = a;
    ref_.relu(a.data(), n);
    simd_->relu(b.data(), n);
    EXPECT_EQ(a, b) << "n=" << n;

    const auto pre = random_vec(n, rng_);
    auto g1 = random_vec(n, rng_);
    auto g2 = g1;
    ref_.relu_backward(pre.data(), g1.data(), n);
    simd_->relu_backward(pre.data(), g2.data(), n);
    EXPECT_EQ(g1, g2) << "n=" << n;

    auto s1 = random_vec(n, rng_);
    auto s2 = s1;
    ref_.scale(-1.5, s1.data(), n);
    simd_->scale(-1.5, s2.data(), n);
    EXPECT_EQ(s1, s2) << "n=" << n;
  }
}

TEST_F(KernelEquivalence, ModelOutputsAgreeAcrossVariants) {
  const auto g = oracle::random_connected_graph(25, 0.15, rng_);
  const auto x = oracle::random_matrix(25, 10, rng_);
  const auto model = gbig::GcnModel::glorot_uniform(10, 3, 11);
  const auto s = gbig::normalize_adjacency(g);

  ASSERT_TRUE(gbig::kernels::select("scalar"));
  const auto p_ref = gbig::forward(model, x, s);
  const auto g_ref = gbig::grad_input(model, x, s, 4, 1);
  ASSERT_TRUE(gbig::kernels::select("avx2"));
  const auto p_simd = gbig::forward(model, x, s);
  const auto g_simd = gbig::grad_input(model, x, s, 4, 1);

  for (std::size_t i = 0; i < p_ref.values().size(); ++i) EXPECT_NEAR(p_ref.values()[i], p_simd.values()[i], 1e-12);
  for (std::size_t i = 0; i < g_ref.values().size(); ++i) EXPECT_NEAR(g_ref.values()[i], g_simd.values()[i], 1e-12);
}

TEST(KernelSelection, UnknownNameIsRejected) {
  const auto before = gbig::kernels::active().name;
  EXPECT_FALSE(gbig::kernels::select("neon"));
  EXPECT_EQ(gbig::kernels::active().name, before);
  EXPECT_TRUE(gbig::kernels::select("scalar"));
  EXPECT_EQ(gbig::kernels::active().name, "scalar");
  gbig::kernels::select("auto");
}

}  // namespace
