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


#ifndef AMEFORGE_REFERENCE_BASIS_H_
#define AMEFORGE_REFERENCE_BASIS_H_

#include <string>
#include <string_view>
#include <vector>

#include "ameforge/tangent.h"

namespace ameforge {

struct NamedVector {
  std::string name;
  TangentVector vector;
};

/// The published 33-vector basis of the tangent space at to_tensor(builtin_ols(3)):
/// e1..e12 (pure real, support 6), f1..f12 (pure imaginary, same supports)
/// and g1..g9 (i|tau> on the seed support).
const std::vector<NamedVector>& reference_basis_d3();

/// Looks up "e4", "f11", "g9", ...; throws Error for unknown names.
const TangentVector& reference_vector_d3(std::string_view name);

}  // namespace ameforge

#endif  // AMEFORGE_REFERENCE_BASIS_H_
