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


#include "ameforge/ols.h"

#include <algorithm>
#include <set>

#include "gtest/gtest.h"

#include "ameforge/perfect.h"
#include "test_support.h"

using namespace ameforge;

TEST(Validate, BuiltinsAreOrthogonal) {
  for (int d : {3, 4, 5}) {
    const OLSPair p = builtin_ols(d);
    EXPECT_TRUE(validate(p).empty()) << d;
    EXPECT_TRUE(oracle::enumerate_ols(p)) << d;
  }
}

TEST(Validate, ExampleTable) {
  const OLSPair p = builtin_ols(3);
  EXPECT_EQ(p.first, (std::vector<std::vector<int>>{{2, 3, 1}, {3, 1, 2}, {1, 2, 3}}));
  EXPECT_EQ(p.second, (std::vector<std::vector<int>>{{3, 1, 2}, {2, 3, 1}, {1, 2, 3}}));
}

TEST(Validate, EqualSquaresCollide) {
  OLSPair p = builtin_ols(3);
  p.second = p.first;
  const auto errors = validate(p);
  ASSERT_FALSE(errors.empty());
  EXPECT_TRUE(std::any_of(errors.begin(), errors.end(), [](const std::string& e) {
    return e.find("pair") != std::string::npos;
  }));
  EXPECT_FALSE(oracle::enumerate_ols(p));
}

TEST(Validate, NonLatinAndOutOfRange) {
  OLSPair p = builtin_ols(3);
  p.first[0][0] = p.first[0][1];
  EXPECT_FALSE(validate(p).empty());
  OLSPair q = builtin_ols(3);
  q.second[1][1] = 4;
  EXPECT_FALSE(validate(q).empty());
  OLSPair r = builtin_ols(3);
  r.first.pop_back();
  EXPECT_FALSE(validate(r).empty());
}

TEST(Builtin, UnsupportedOrders) {
  EXPECT_THROW(builtin_ols(2), Error);
  EXPECT_THROW(builtin_ols(6), Error);
}

TEST(Cyclic, OddOrdersValidate) {
  for (int d : {3, 5, 7, 9}) EXPECT_TRUE(oracle::enumerate_ols(cyclic_ols(d))) << d;
  EXPECT_THROW(cyclic_ols(4), Error);
  EXPECT_THROW(cyclic_ols(1), Error);
}

TEST(ToTensor, SeedSupport) {
  const Tensor4 t = to_tensor(builtin_ols(3));
  std::set<std::string> labels;
  for (std::size_t lin = 0; lin < t.size(); ++lin) {
    if (t.coeffs()[lin] != Complex{}) {
      EXPECT_EQ(t.coeffs()[lin], Complex(1.0));
      labels.insert(format_label(t.delinearize(lin)));
    }
  }
  EXPECT_EQ(labels, (std::set<std::string>{"1123", "1232", "1311", "2131", "2213", "2322", "3112",
                                           "3221", "3333"}));
}

TEST(ToTensor, FlatteningsArePermutations) {
  for (int d : {3, 4, 5}) {
    const Tensor4 t = to_tensor(builtin_ols(d));
    EXPECT_EQ(t.count_nonzero(), static_cast<std::size_t>(d * d));
    EXPECT_TRUE(oracle::f1_is_permutation_by_enumeration(t));
    for (Flattening f : kAllFlattenings) EXPECT_TRUE(is_permutation_matrix(flatten(t, f)));
    EXPECT_LT(check_p4d(t).max_residual(), 1e-14);
  }
}

TEST(FromTensor, InverseOfToTensor) {
  for (int d : {3, 4, 5}) {
    const OLSPair p = builtin_ols(d);
    const auto back = from_tensor(to_tensor(p));
    ASSERT_TRUE(back.has_value());
    EXPECT_EQ(*back, p);
  }
  const auto c7 = from_tensor(to_tensor(cyclic_ols(7)));
  ASSERT_TRUE(c7.has_value());
  EXPECT_EQ(*c7, cyclic_ols(7));
}

TEST(FromTensor, RejectsNonPermutationTensors) {
  Tensor4 t = to_tensor(builtin_ols(3));
  t *= Complex(0.0, 1.0);
  EXPECT_FALSE(from_tensor(t).has_value());
  Tensor4 u = to_tensor(builtin_ols(3));
  u[parse_label("1111")] = 1.0;
  EXPECT_FALSE(from_tensor(u).has_value());
}

TEST(Format, TableAndJson) {
  const OLSPair p = builtin_ols(3);
  const std::string table = format_table(p);
  EXPECT_NE(table.find("2,3"), std::string::npos);
  EXPECT_NE(table.find("3,3"), std::string::npos);
  EXPECT_EQ(ols_from_json(ols_to_json(p)), p);
  EXPECT_THROW(ols_from_json(nlohmann::json{{"d", 3}}), Error);
}
