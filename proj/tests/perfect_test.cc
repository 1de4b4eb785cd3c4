// Copyright 2026 The AmeForge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "ameforge/perfect.h"

#include <random>

#include "gtest/gtest.h"

#include "ameforge/families.h"
#include "ameforge/ols.h"
#include "test_support.h"

using namespace ameforge;

TEST(CheckP4d, SeedPasses) {
  const auto r = check_p4d(to_tensor(builtin_ols(3)));
  EXPECT_TRUE(r.pass);
  for (double x : r.residuals) EXPECT_EQ(x, 0.0);
}

TEST(CheckP4d, ScaledSeedFails) {
  const auto r = check_p4d(Complex(3.0) * to_tensor(builtin_ols(3)));
  EXPECT_FALSE(r.pass);
  EXPECT_DOUBLE_EQ(r.max_residual(), 8.0);
  EXPECT_THROW(check_p4d(Tensor4(3), 0.0), Error);
}

TEST(CheckP4d, RandomTensorFails) {
  std::mt19937_64 rng(1);
  EXPECT_FALSE(check_p4d(oracle::random_tensor(3, rng)).pass);
}

TEST(CheckP4d, LocalUnitaryKeepsMembership) {
  // Phases on the nonzero entries of a permutation tensor keep it in P(4,d).
  std::vector<Complex> c = to_tensor(builtin_ols(4)).coeffs();
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-kPi, kPi);
  for (auto& z : c) {
    if (z != Complex{}) z = std::polar(1.0, u(rng));
  }
  EXPECT_TRUE(check_p4d(Tensor4(4, c)).pass);
}

TEST(Proportional, SeedConstants) {
  const auto r = check_perfect_proportional(to_tensor(builtin_ols(3)));
  EXPECT_TRUE(r.perfect);
  EXPECT_EQ(r.checks.size(), 7u);
  EXPECT_DOUBLE_EQ(r.constant_two_two, 1.0);
  EXPECT_DOUBLE_EQ(r.constant_one_three, 3.0);
}

TEST(Proportional, ScaleInvariant) {
  const Tensor4 seed = to_tensor(builtin_ols(5));
  for (Complex s : {Complex(3.0), Complex(0.0, -0.25), Complex(1e3, 2e3)}) {
    const auto r = check_perfect_proportional(s * seed);
    EXPECT_TRUE(r.perfect);
    EXPECT_NEAR(r.constant_two_two, std::norm(s), 1e-9 * std::norm(s));
    EXPECT_NEAR(r.constant_one_three, 5.0 * std::norm(s), 1e-9 * std::norm(s));
  }
  const auto r3 = check_perfect_proportional(Complex(3.0) * to_tensor(builtin_ols(3)));
  EXPECT_DOUBLE_EQ(r3.constant_two_two, 9.0);
  EXPECT_FALSE(check_p4d(Complex(3.0) * to_tensor(builtin_ols(3))).pass);
}

TEST(Proportional, ProductStateIsNotPerfect) {
  Tensor4 t(3);
  t[parse_label("1111")] = 1.0;
  EXPECT_FALSE(check_perfect_proportional(t).perfect);
  EXPECT_THROW(check_perfect_proportional(Tensor4(3)), Error);
}

TEST(Proportional, RandomTensorsFailBothChecks) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 10; ++trial) {
    const Tensor4 t = oracle::random_tensor(3, rng);
    EXPECT_FALSE(check_p4d(t).pass);
    EXPECT_FALSE(check_perfect_proportional(t).perfect);
  }
}
