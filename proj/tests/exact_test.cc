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


#include "ameforge/exact.h"

#include <numeric>
#include <random>

#include "gtest/gtest.h"

#include "ameforge/ols.h"
#include "ameforge/tangent.h"
#include "test_support.h"

using namespace ameforge;

namespace {

ExactMatrix random_integer_matrix(std::size_t rows, std::size_t cols, std::size_t rank_cap,
                                  std::mt19937_64& rng) {
  // Product of rows x k and k x cols integer factors, so rank <= k.
  std::uniform_int_distribution<long> v(-3, 3);
  std::vector<std::vector<long>> left(rows, std::vector<long>(rank_cap));
  std::vector<std::vector<long>> right(rank_cap, std::vector<long>(cols));
  for (auto& r : left)
    for (auto& x : r) x = v(rng);
  for (auto& r : right)
    for (auto& x : r) x = v(rng);
  std::vector<std::vector<long>> out(rows, std::vector<long>(cols, 0));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t k = 0; k < rank_cap; ++k)
      for (std::size_t j = 0; j < cols; ++j) out[i][j] += left[i][k] * right[k][j];
  return ExactMatrix::from_integers(out);
}

}  // namespace

TEST(Rational, Canonical) {
  EXPECT_EQ(make_rational(2, 4), make_rational(1, 2));
  EXPECT_EQ(make_rational(3, -6), make_rational(-1, 2));
  EXPECT_EQ(make_rational(0, 5).get_den(), 1);
  EXPECT_THROW(make_rational(1, 0), Error);
}

TEST(ExactMatrix, SparseStorage) {
  ExactMatrix m(2, 3);
  m.set(0, 2, make_rational(5));
  m.add(0, 2, make_rational(-5));
  EXPECT_EQ(m.nonzeros(), 0u);
  m.add(1, 0, make_rational(1, 3));
  EXPECT_EQ(m.at(1, 0), make_rational(1, 3));
  EXPECT_EQ(m.at(1, 1), 0);
  ExactMatrix::Row bad = {{2, make_rational(1)}, {1, make_rational(1)}};
  EXPECT_THROW(m.push_row(bad), Error);
}

TEST(Rref, Identity) {
  const auto id = ExactMatrix::from_integers({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  const auto r = rref(id);
  EXPECT_EQ(r.reduced, id);
  EXPECT_EQ(r.pivots, (std::vector<std::size_t>{0, 1, 2}));
}

TEST(Rref, RankOne) {
  const auto r = rref(ExactMatrix::from_integers({{1, 2}, {2, 4}}));
  EXPECT_EQ(r.reduced, ExactMatrix::from_integers({{1, 2}, {0, 0}}));
  EXPECT_EQ(r.rank(), 1u);
}

TEST(Rref, RationalEntries) {
  const auto r = rref(ExactMatrix::from_integers({{2, 1}, {4, 3}}));
  EXPECT_EQ(r.reduced, ExactMatrix::from_integers({{1, 0}, {0, 1}}));
  const auto s = rref(ExactMatrix::from_integers({{3, 1, 2}}));
  EXPECT_EQ(s.reduced.at(0, 1), make_rational(1, 3));
  EXPECT_EQ(s.reduced.at(0, 2), make_rational(2, 3));
}

TEST(Rref, ColumnOrderChoosesPivots) {
  const auto m = ExactMatrix::from_integers({{1, 1, 0}, {0, 1, 1}});
  const std::vector<std::size_t> order = {2, 1, 0};
  const auto r = rref(m, order);
  EXPECT_EQ(r.pivots, (std::vector<std::size_t>{2, 1}));
  EXPECT_EQ(r.rank(), 2u);
  const std::vector<std::size_t> not_perm = {0, 0, 1};
  EXPECT_THROW(rref(m, not_perm), Error);
}

TEST(Rref, IsIdempotent) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const auto m = random_integer_matrix(6, 8, 1 + trial % 5, rng);
    const auto once = rref(m);
    const auto twice = rref(once.reduced);
    EXPECT_EQ(once.reduced, twice.reduced);
    EXPECT_EQ(once.pivots, twice.pivots);
  }
}

TEST(Rank, MatchesFloatingPointSvd) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t k = 1 + trial % 6;
    const auto m = random_integer_matrix(7, 9, k, rng);
    EXPECT_EQ(rank(m), oracle::numeric_rank(m.to_double())) << "trial " << trial;
  }
}

TEST(KernelBasis, Examples) {
  EXPECT_TRUE(kernel_basis(ExactMatrix::from_integers({{1, 0}, {0, 1}})).empty());
  const auto k = kernel_basis(ExactMatrix::from_integers({{1, -1}}));
  ASSERT_EQ(k.size(), 1u);
  EXPECT_EQ(k[0], (ExactVector{1, 1}));
}

TEST(KernelBasis, ClearedDenominatorsAndSign) {
  const auto k = kernel_basis(ExactMatrix::from_integers({{2, 3, 0}, {0, 0, 1}}));
  ASSERT_EQ(k.size(), 1u);
  EXPECT_EQ(k[0], (ExactVector{3, -2, 0}));
}

TEST(KernelBasis, VectorsAnnihilateAndAreIndependent) {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 20; ++trial) {
    const auto m = random_integer_matrix(5, 9, 1 + trial % 5, rng);
    const auto k = kernel_basis(m);
    EXPECT_EQ(k.size(), m.cols() - rank(m));
    for (const auto& v : k) {
      EXPECT_TRUE(is_zero(multiply(m, v)));
      for (const auto& x : v) EXPECT_EQ(x.get_den(), 1);
    }
    EXPECT_EQ(rank(ExactMatrix::from_rows(k, m.cols())), k.size());
  }
}

TEST(SubspaceCompare, Relations) {
  const std::vector<ExactVector> x = {{1, 0, 0}, {0, 1, 0}};
  const std::vector<ExactVector> x2 = {{1, 1, 0}, {1, -1, 0}};
  const std::vector<ExactVector> line = {{1, 1, 0}};
  const std::vector<ExactVector> other = {{0, 0, 1}};
  EXPECT_EQ(subspace_compare(x, x).relation, SubspaceRelation::kEqual);
  EXPECT_EQ(subspace_compare(x, x2).relation, SubspaceRelation::kEqual);
  EXPECT_EQ(subspace_compare(line, x).relation, SubspaceRelation::kFirstInSecond);
  EXPECT_EQ(subspace_compare(x, line).relation, SubspaceRelation::kSecondInFirst);
  const auto c = subspace_compare(x, other);
  EXPECT_EQ(c.relation, SubspaceRelation::kIncomparable);
  EXPECT_EQ(c.dim_sum, 3u);
  const std::vector<ExactVector> short_vec = {{1, 0}};
  EXPECT_THROW(subspace_compare(x, short_vec), Error);
}

TEST(RationalJson, RoundTrip) {
  for (const Rational& q : {make_rational(0), make_rational(-7, 3), make_rational(1, 1000000007)}) {
    EXPECT_EQ(rational_from_json(rational_to_json(q)), q);
  }
  EXPECT_THROW(rational_from_json(nlohmann::json{{"num", "1"}, {"den", "0"}}), Error);
}

TEST(TangentSystem, D3RankIs129) {
  const auto m = constraint_matrix(to_tensor(builtin_ols(3)), FlatteningSet::all());
  EXPECT_EQ(m.rows(), 243u);
  EXPECT_EQ(m.cols(), 162u);
  const auto r = rref(m);
  EXPECT_EQ(r.rank(), 129u);
  EXPECT_EQ(oracle::numeric_rank(m.to_double()), 129u);
  EXPECT_EQ(kernel_basis(m).size(), 33u);
}
