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


#ifndef AMEFORGE_OLS_H_
#define AMEFORGE_OLS_H_

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ameforge/tensor.h"

namespace ameforge {

/// A pair of d x d squares with symbols 1..d. Cell (r, c) holds the pair
/// (first[r][c], second[r][c]); r and c are 0-based, symbols 1-based.
struct OLSPair {
  int d = 0;
  std::vector<std::vector<int>> first;
  std::vector<std::vector<int>> second;

  friend bool operator==(const OLSPair&, const OLSPair&) = default;
};

/// Empty when `p` is an orthogonal Latin square; otherwise one message per
/// failing row, column, out-of-range entry or colliding pair.
std::vector<std::string> validate(const OLSPair& p);

/// The shipped seeds for d = 3, 4, 5.
OLSPair builtin_ols(int d);

/// a_rc = (r + c) mod d + 1, b_rc = (r + 2c) mod d + 1 (0-based r, c).
/// Orthogonal for every odd d >= 3.
OLSPair cyclic_ols(int d);

/// Unit tensor with one term per cell: |c+1, r+1, a_rc, b_rc>.
///
/// The slot order puts the cell column first. With this convention the
/// d = 3 seed has support {1123, 1232, 1311, 2131, 2213, 2322, 3112, 3221,
/// 3333}, the tensor at which the reference tangent table and the closed
/// form family are written.
Tensor4 to_tensor(const OLSPair& p);

/// Inverse of to_tensor. nullopt unless all three flattenings are 0/1
/// permutation matrices (within `tol`) and the recovered squares validate.
std::optional<OLSPair> from_tensor(const Tensor4& t, double tol = 1e-12);

/// Paired-cell table, e.g. "| 2,3 | 3,1 | 1,2 |" per row, with rule lines.
std::string format_table(const OLSPair& p);

nlohmann::json ols_to_json(const OLSPair& p);
OLSPair ols_from_json(const nlohmann::json& j);

}  // namespace ameforge

#endif  // AMEFORGE_OLS_H_
