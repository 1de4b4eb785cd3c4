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


#ifndef AMEFORGE_EXACT_H_
#define AMEFORGE_EXACT_H_

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>
#include <nlohmann/json.hpp>

namespace ameforge {

/// Reduced fraction over arbitrary-precision integers; canonical zero is 0/1.
using Rational = mpq_class;
using ExactVector = std::vector<Rational>;

/// Builds num/den in canonical form. Throws Error when den == 0.
Rational make_rational(long num, long den = 1);

/// Rational matrix stored as sorted sparse rows.
///
/// Constraint systems here have a handful of nonzeros per row, so the
/// row-major storage keeps only nonzero entries; `at` reads any position.
class ExactMatrix {
 public:
  using Entry = std::pair<std::size_t, Rational>;
  using Row = std::vector<Entry>;  // sorted by column, no explicit zeros

  ExactMatrix() = default;
  ExactMatrix(std::size_t rows, std::size_t cols);

  /// Dense integer initializer, e.g. {{1, 2}, {2, 4}}.
  static ExactMatrix from_integers(const std::vector<std::vector<long>>& rows);
  /// Rows are the given vectors.
  static ExactMatrix from_rows(std::span<const ExactVector> rows, std::size_t cols);

  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }

  Rational at(std::size_t r, std::size_t c) const;
  /// Overwrites entry (r, c); assigning zero removes it.
  void set(std::size_t r, std::size_t c, const Rational& value);
  /// Adds `value` to entry (r, c).
  void add(std::size_t r, std::size_t c, const Rational& value);

  const Row& row(std::size_t r) const { return rows_[r]; }
  /// Appends a sparse row (must be sorted, without zeros).
  void push_row(Row row);

  std::size_t nonzeros() const;
  std::vector<std::vector<double>> to_double() const;

  friend bool operator==(const ExactMatrix& a, const ExactMatrix& b) {
    return a.cols_ == b.cols_ && a.rows_ == b.rows_;
  }

 private:
  std::size_t cols_ = 0;
  std::vector<Row> rows_;
};

struct RrefResult {
  ExactMatrix reduced;                // nonzero rows first, in pivot order
  std::vector<std::size_t> pivots;    // pivot columns in row order
  std::size_t rank() const { return pivots.size(); }
};

/// Reduced row-echelon form over Q.
RrefResult rref(const ExactMatrix& m);

/// Reduced row-echelon form with columns visited in `column_order`
/// (a permutation of 0..cols-1). The first pivot goes to the earliest column
/// in that order, and so on. The output keeps the original column indexing.
RrefResult rref(const ExactMatrix& m, std::span<const std::size_t> column_order);

std::size_t rank(const ExactMatrix& m);

/// Linearly independent integer spanning set of {v : m v = 0}, each vector
/// scaled to coprime integers with its first nonzero entry positive.
std::vector<ExactVector> kernel_basis(const ExactMatrix& m);
std::vector<ExactVector> kernel_basis(const ExactMatrix& m,
                                      std::span<const std::size_t> column_order);

/// m * v, exactly.
ExactVector multiply(const ExactMatrix& m, const ExactVector& v);
bool is_zero(const ExactVector& v);

/// Scales v by a positive rational so it becomes coprime integers, then flips
/// the sign so the first nonzero entry is positive.
ExactVector normalize_integer(ExactVector v);

enum class SubspaceRelation { kEqual, kFirstInSecond, kSecondInFirst, kIncomparable };

std::string to_string(SubspaceRelation r);

struct SubspaceComparison {
  SubspaceRelation relation;
  std::size_t dim_first = 0;
  std::size_t dim_second = 0;
  std::size_t dim_sum = 0;  // dim(A + B)
};

/// Compares span(A) and span(B) by exact ranks of stacked matrices.
SubspaceComparison subspace_compare(std::span<const ExactVector> a,
                                    std::span<const ExactVector> b);

nlohmann::json rational_to_json(const Rational& q);
Rational rational_from_json(const nlohmann::json& j);
nlohmann::json basis_to_json(std::span<const ExactVector> basis);

}  // namespace ameforge

#endif  // AMEFORGE_EXACT_H_
