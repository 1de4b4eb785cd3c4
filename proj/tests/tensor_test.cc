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


#include "ameforge/tensor.h"

#include <filesystem>
#include <fstream>
#include <random>

#include "gtest/gtest.h"

#include "ameforge/ols.h"
#include "ameforge/tensor_io.h"
#include "test_support.h"

using namespace ameforge;

namespace {

Tensor4 seed3() { return to_tensor(builtin_ols(3)); }

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("ameforge_tensor_test_" + name);
}

}  // namespace

TEST(Tensor4, LinearIndexRoundTrip) {
  for (int d : {2, 3, 5}) {
    const Tensor4 t(d);
    for (std::size_t lin = 0; lin < t.size(); ++lin) {
      ASSERT_EQ(t.linear_index(t.delinearize(lin)), lin);
    }
  }
  const Tensor4 t(3);
  EXPECT_EQ(t.linear_index(parse_label("1123")), 0u * 27 + 0 * 9 + 1 * 3 + 2);
}

TEST(Tensor4, RejectsBadShapes) {
  EXPECT_THROW(Tensor4(1), Error);
  EXPECT_THROW(Tensor4(3, std::vector<Complex>(80)), Error);
  std::vector<Complex> c(81);
  c[5] = {std::nan(""), 0.0};
  EXPECT_THROW(Tensor4(3, c), Error);
}

TEST(Flatten, SeedTermLandsWherePhaseMatrixPutsIt) {
  // |1123> -> F1 row (1-1)*3 + (1-1) = 0, column (2-1)*3 + (3-1) = 5.
  const ComplexMatrix f1 = flatten(seed3(), Flattening::F1);
  EXPECT_EQ(f1(0, 5), Complex(1.0, 0.0));
}

TEST(Flatten, ExplicitPositions) {
  const Index4 idx = parse_label("1223");  // (a,b,c,e) = (0,1,1,2)
  EXPECT_EQ(flat_position(Flattening::F1, 3, idx), std::make_pair(1, 5));
  EXPECT_EQ(flat_position(Flattening::F2, 3, idx), std::make_pair(1, 5));
  // F3: row (a,e), column (c,b) -- C before B.
  EXPECT_EQ(flat_position(Flattening::F3, 3, idx), std::make_pair(2, 4));
  for (Flattening f : kAllFlattenings) {
    const auto [r, c] = flat_position(f, 3, idx);
    EXPECT_EQ(flat_index(f, 3, r, c), idx);
  }
}

TEST(Flatten, ZeroTensorGivesZeroMatrix) {
  for (Flattening f : kAllFlattenings) EXPECT_EQ(max_abs(flatten(Tensor4(3), f)), 0.0);
}

TEST(Flatten, RoundTripIsExact) {
  std::mt19937_64 rng(7);
  for (int d : {2, 3, 4}) {
    const Tensor4 t = oracle::random_tensor(d, rng);
    for (Flattening f : kAllFlattenings) {
      EXPECT_EQ(unflatten(flatten(t, f), f, d), t);
      const ComplexMatrix m = oracle::random_matrix(d * d, rng);
      EXPECT_EQ(flatten(unflatten(m, f, d), f), m);
    }
  }
}

TEST(Flatten, IsLinear) {
  std::mt19937_64 rng(11);
  const Tensor4 s = oracle::random_tensor(3, rng);
  const Tensor4 t = oracle::random_tensor(3, rng);
  const Complex alpha(0.7, -1.3), beta(-2.0, 0.25);
  for (Flattening f : kAllFlattenings) {
    const ComplexMatrix lhs = flatten(alpha * s + beta * t, f);
    const ComplexMatrix rhs = alpha * flatten(s, f) + beta * flatten(t, f);
    EXPECT_LE(max_abs(lhs - rhs), 1e-14);
  }
}

TEST(Unflatten, IdentityUnderF1) {
  const Tensor4 t = unflatten(ComplexMatrix::Identity(9, 9), Flattening::F1, 3);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c)
        for (int e = 0; e < 3; ++e) {
          EXPECT_EQ(t(a, b, c, e), (a == c && b == e) ? Complex(1.0) : Complex(0.0));
        }
}

TEST(Unflatten, PermutationMatrixGivesSeed) {
  const Tensor4 seed = seed3();
  const ComplexMatrix p = flatten(seed, Flattening::F1);
  EXPECT_EQ(unflatten(p, Flattening::F1, 3), seed);
  EXPECT_EQ(unflatten(p, Flattening::F1, 3).count_nonzero(), 9u);
}

TEST(Unflatten, RejectsWrongShape) {
  EXPECT_THROW(unflatten(ComplexMatrix::Identity(8, 9), Flattening::F1, 3), Error);
  EXPECT_THROW(unflatten(ComplexMatrix::Identity(9, 9), Flattening::F2, 4), Error);
}

TEST(Flatten, SeedFlatteningsArePermutations) {
  for (Flattening f : kAllFlattenings) EXPECT_TRUE(is_permutation_matrix(flatten(seed3(), f)));
}

TEST(MaxAbsDiff, Basics) {
  const Tensor4 phi = seed3();
  EXPECT_EQ(max_abs_diff(phi, phi), 0.0);
  EXPECT_EQ(max_abs_diff(phi, Complex(2.0) * phi), 1.0);
  EXPECT_THROW(max_abs_diff(phi, Tensor4(4)), Error);
}

TEST(MaxAbsDiff, IsAMetric) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const Tensor4 r = oracle::random_tensor(3, rng);
    const Tensor4 s = oracle::random_tensor(3, rng);
    const Tensor4 t = oracle::random_tensor(3, rng);
    EXPECT_EQ(max_abs_diff(r, s), max_abs_diff(s, r));
    EXPECT_GT(max_abs_diff(r, s), 0.0);
    EXPECT_LE(max_abs_diff(r, t), max_abs_diff(r, s) + max_abs_diff(s, t) + 1e-15);
  }
}

TEST(TensorJson, SparseRoundTripIsBitExact) {
  std::mt19937_64 rng(5);
  const Tensor4 t = oracle::random_tensor(3, rng);
  for (TensorFormat fmt : {TensorFormat::kSparse, TensorFormat::kDense}) {
    const auto path = temp_file("rt.json");
    write_json(t, path, fmt);
    EXPECT_EQ(read_json(path), t);
    std::filesystem::remove(path);
  }
  const auto path = temp_file("seed.json");
  write_json(seed3(), path);
  EXPECT_EQ(read_json(path), seed3());
  std::filesystem::remove(path);
}

TEST(TensorJson, SparseUnitEntriesGiveSeed) {
  nlohmann::json j = {{"d", 3}, {"format", "sparse"}, {"entries", nlohmann::json::array()}};
  for (const char* label : {"1123", "1232", "1311", "2131", "2213", "2322", "3112", "3221", "3333"}) {
    const Index4 idx = parse_label(label);
    j["entries"].push_back(
        {{"idx", {idx[0] + 1, idx[1] + 1, idx[2] + 1, idx[3] + 1}}, {"re", 1.0}, {"im", 0.0}});
  }
  EXPECT_EQ(tensor_from_json(j), seed3());
}

TEST(TensorJson, Errors) {
  nlohmann::json dense = {{"d", 3}, {"format", "dense"}, {"coeffs", nlohmann::json::array()}};
  for (int k = 0; k < 80; ++k) dense["coeffs"].push_back({0.0, 0.0});
  EXPECT_THROW(tensor_from_json(dense), Error);

  nlohmann::json bad_idx = {{"d", 3}, {"entries", {{{"idx", {1, 1, 4, 1}}, {"re", 1.0}}}}};
  EXPECT_THROW(tensor_from_json(bad_idx), Error);
  nlohmann::json dup = {{"d", 3},
                        {"entries", {{{"idx", {1, 1, 1, 1}}, {"re", 1.0}},
                                     {{"idx", {1, 1, 1, 1}}, {"re", 2.0}}}}};
  EXPECT_THROW(tensor_from_json(dup), Error);
  EXPECT_THROW(tensor_from_json(nlohmann::json::array()), Error);

  const auto path = temp_file("malformed.json");
  {
    std::ofstream out(path);
    out << "{\"d\": 3, \"entries\": [";
  }
  EXPECT_THROW(read_json(path), Error);
  {
    std::ofstream out(path);
    out << R"({"d": 3, "entries": [{"idx": [1,1,1,1], "re": 1e999, "im": 0}]})";
  }
  EXPECT_THROW(read_json(path), Error);
  std::filesystem::remove(path);
}
