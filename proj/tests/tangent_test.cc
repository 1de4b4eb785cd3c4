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


#include "ameforge/tangent.h"

#include <random>

#include "gtest/gtest.h"

#include "ameforge/ols.h"
#include "ameforge/reference_basis.h"
#include "test_support.h"

using namespace ameforge;

namespace {

Tensor4 seed(int d) { return to_tensor(builtin_ols(d)); }

std::vector<ExactVector> coordinates_of(const std::vector<TangentVector>& vs) {
  std::vector<ExactVector> out;
  for (const auto& v : vs) out.push_back(v.exact->coordinates());
  return out;
}

// Direct evaluation of F(X) F(Phi)^dagger + F(Phi) F(X)^dagger, independent of
// the constraint rows.
double direct_residual(const Tensor4& x, const Tensor4& phi, Flattening f) {
  const ComplexMatrix fx = flatten(x, f), fp = flatten(phi, f);
  return max_abs(fx * fp.adjoint() + fp * fx.adjoint());
}

}  // namespace

TEST(FlatteningSet, Parse) {
  EXPECT_EQ(FlatteningSet::parse("123"), FlatteningSet::all());
  EXPECT_EQ(FlatteningSet::parse("F1,F3"), FlatteningSet::of({Flattening::F1, Flattening::F3}));
  EXPECT_EQ(FlatteningSet::parse("21").to_string(), "12");
  EXPECT_EQ(FlatteningSet::parse("2").size(), 1u);
  EXPECT_THROW(FlatteningSet::parse(""), Error);
  EXPECT_THROW(FlatteningSet::parse("14"), Error);
  EXPECT_THROW(FlatteningSet::of({}), Error);
}

TEST(ExactTensor, RoundTrips) {
  Tensor4 t(3);
  t[parse_label("1213")] = Complex(0.5, -2.0);
  t[parse_label("3333")] = Complex(-1.0 / 3.0, 0.0);
  const ExactTensor4 e = ExactTensor4::from_tensor(t);
  EXPECT_EQ(e.re[t.linear_index(parse_label("3333"))], make_rational(-1, 3));
  EXPECT_LE(max_abs_diff(e.to_tensor(), t), 1e-16);
  const auto back = ExactTensor4::from_coordinates(3, e.coordinates());
  EXPECT_EQ(back.re, e.re);
  EXPECT_EQ(back.im, e.im);
  Tensor4 irrational(3);
  irrational[parse_label("1111")] = std::sqrt(2.0);
  EXPECT_THROW(ExactTensor4::from_tensor(irrational), Error);
}

TEST(ConstraintMatrix, Shape) {
  const auto m = constraint_matrix(seed(3), FlatteningSet::all());
  EXPECT_EQ(m.rows(), 243u);
  EXPECT_EQ(m.cols(), 162u);
  EXPECT_EQ(constraint_matrix(seed(3), FlatteningSet::parse("13")).rows(), 162u);
}

TEST(ConstraintMatrix, SingleFlatteningGivesUnitaryAlgebra) {
  for (int d : {3, 4}) {
    for (Flattening f : kAllFlattenings) {
      EXPECT_EQ(tangent_kernel(seed(d), FlatteningSet::of({f})).size(),
                static_cast<std::size_t>(d * d * d * d));
    }
  }
}

TEST(ConstraintMatrix, MatchesFloatingPointRank) {
  std::mt19937_64 rng(5);
  const Tensor4 phi = seed(3);
  for (const char* which : {"1", "12", "123"}) {
    const auto m = constraint_matrix(phi, FlatteningSet::parse(which));
    EXPECT_EQ(rank(m), oracle::numeric_rank(m.to_double())) << which;
  }
}

TEST(SolveTangent, Dimensions) {
  EXPECT_EQ(solve_tangent(seed(3)).dim(), 33u);
  EXPECT_EQ(solve_tangent(seed(4)).dim(), 76u);
  EXPECT_EQ(solve_tangent(seed(5)).dim(), 145u);
}

TEST(SolveTangent, PairwiseDimensions) {
  for (const char* which : {"12", "13", "23"}) {
    EXPECT_EQ(solve_tangent(seed(3), FlatteningSet::parse(which)).dim(), 33u) << which;
    EXPECT_EQ(solve_tangent(seed(4), FlatteningSet::parse(which)).dim(), 136u) << which;
  }
}

TEST(SolveTangent, KernelVectorsSatisfyEquationExactly) {
  const Tensor4 phi = seed(3);
  const auto exact_phi = ExactTensor4::from_tensor(phi);
  const auto basis = solve_tangent(phi);
  for (const auto& v : basis.vectors) {
    ASSERT_TRUE(v.exact.has_value());
    EXPECT_TRUE(verify_membership_exact(*v.exact, exact_phi));
    for (Flattening f : kAllFlattenings) EXPECT_EQ(direct_residual(v.value, phi, f), 0.0);
  }
}

TEST(VerifyMembership, ReferenceFixtures) {
  const Tensor4 phi = seed(3);
  const auto exact_phi = ExactTensor4::from_tensor(phi);
  ASSERT_EQ(reference_basis_d3().size(), 33u);
  for (const auto& nv : reference_basis_d3()) {
    EXPECT_EQ(verify_membership(nv.vector.value, phi), 0.0) << nv.name;
    EXPECT_TRUE(verify_membership_exact(*nv.vector.exact, exact_phi)) << nv.name;
  }
  EXPECT_THROW(reference_vector_d3("e13"), Error);
}

TEST(VerifyMembership, FirstFixtureCoefficients) {
  const Tensor4& e1 = reference_vector_d3("e1").value;
  EXPECT_EQ(e1[parse_label("1132")], Complex(-1.0));
  EXPECT_EQ(e1[parse_label("1223")], Complex(1.0));
  EXPECT_EQ(e1.count_nonzero(), 6u);
  const Tensor4& f1 = reference_vector_d3("f1").value;
  EXPECT_EQ(f1[parse_label("1132")], Complex(0.0, 1.0));
  EXPECT_EQ(reference_vector_d3("g9").value[parse_label("3333")], Complex(0.0, 1.0));
}

TEST(VerifyMembership, GlobalPhaseAndRandomTensor) {
  const Tensor4 phi = seed(4);
  EXPECT_EQ(verify_membership(Complex(0.0, 1.0) * phi, phi), 0.0);
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 5; ++trial) {
    EXPECT_GT(verify_membership(oracle::random_tensor(4, rng), phi), 0.1);
  }
}

TEST(SubspaceCompare, FixturesSpanSolvedKernel) {
  const auto basis = solve_tangent(seed(3));
  std::vector<TangentVector> fixtures;
  for (const auto& nv : reference_basis_d3()) fixtures.push_back(nv.vector);
  const auto fx = coordinates_of(fixtures);
  EXPECT_EQ(rank(ExactMatrix::from_rows(fx, fx.front().size())), 33u);
  const auto cmp = subspace_compare(fx, coordinates_of(basis.vectors));
  EXPECT_EQ(cmp.relation, SubspaceRelation::kEqual);
  EXPECT_EQ(cmp.dim_sum, 33u);
}

TEST(SubspaceCompare, TripleVersusPairwise) {
  for (int d : {3, 4, 5}) {
    const auto triple = coordinates_of(solve_tangent(seed(d)).vectors);
    for (const char* which : {"12", "13", "23"}) {
      const auto pair = coordinates_of(solve_tangent(seed(d), FlatteningSet::parse(which)).vectors);
      const auto cmp = subspace_compare(triple, pair);
      EXPECT_EQ(cmp.relation, d == 4 ? SubspaceRelation::kFirstInSecond : SubspaceRelation::kEqual)
          << d << " " << which;
    }
  }
}

TEST(Classify, D3Structure) {
  const auto s = classify(solve_tangent(seed(3)));
  EXPECT_TRUE(s.resolved);
  EXPECT_EQ(s.describe(), "dim 33; 12 pairs support-6; 9 imaginary support-1");
  EXPECT_EQ(s.pairs_by_support, (std::map<std::size_t, std::size_t>{{6, 12}}));
  EXPECT_TRUE(supports_disjoint_or_paired(s.classes));
}

TEST(Classify, D4Structure) {
  const auto s = classify(solve_tangent(seed(4)));
  EXPECT_TRUE(s.resolved);
  EXPECT_EQ(s.pairs_by_support, (std::map<std::size_t, std::size_t>{{8, 24}}));
  EXPECT_EQ((s.unpaired.at({1, Purity::kPureImaginary})), 16u);
  EXPECT_EQ((s.unpaired.at({4, Purity::kPureImaginary})), 12u);
  EXPECT_EQ(s.unpaired.size(), 2u);
}

TEST(Classify, D5Structure) {
  const auto s = classify(solve_tangent(seed(5)));
  EXPECT_TRUE(s.resolved);
  EXPECT_EQ(s.describe(), "dim 145; 60 pairs support-10; 25 imaginary support-1");
}

TEST(Classify, ReferenceClassesPairUp) {
  std::vector<TangentVector> fixtures;
  for (const auto& nv : reference_basis_d3()) fixtures.push_back(nv.vector);
  const auto classes = classify_vectors(fixtures);
  for (int j = 0; j < 12; ++j) {
    EXPECT_EQ(classes[j].purity, Purity::kPureReal);
    EXPECT_EQ(classes[j].partner, std::optional<std::size_t>(12 + j));
    EXPECT_EQ(classes[12 + j].purity, Purity::kPureImaginary);
    EXPECT_EQ(classes[j].support, classes[12 + j].support);
  }
  for (int k = 24; k < 33; ++k) {
    EXPECT_EQ(classes[k].support_size(), 1u);
    EXPECT_FALSE(classes[k].partner.has_value());
  }
  EXPECT_TRUE(supports_disjoint_or_paired(classes));
}

TEST(Classify, SelectClass) {
  const auto s = classify(solve_tangent(seed(3)));
  EXPECT_EQ(select_class(s, 1, Purity::kPureImaginary, false).size(), 9u);
  EXPECT_EQ(select_class(s, 6, Purity::kPureReal, true).size(), 12u);
  EXPECT_TRUE(select_class(s, 4, Purity::kPureImaginary, false).empty());
}
