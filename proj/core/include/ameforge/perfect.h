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


#ifndef AMEFORGE_PERFECT_H_
#define AMEFORGE_PERFECT_H_

#include <array>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ameforge/tensor.h"

namespace ameforge {

inline constexpr double kDefaultTolerance = 1e-9;

/// Unitarity residuals max|F_i F_i^dagger - I| for the three flattenings.
struct PerfectnessReport {
  std::array<double, 3> residuals{};
  double tol = kDefaultTolerance;
  bool pass = false;

  double max_residual() const;
};

/// Membership test for P(4,d): all three 2|2 flattenings unitary within tol.
PerfectnessReport check_p4d(const Tensor4& t, double tol = kDefaultTolerance);

double unitarity_residual(const ComplexMatrix& m);

struct BipartitionCheck {
  std::string label;        // e.g. "A|BCD", "AB|CD"
  int small_side = 0;       // |I|
  double constant = 0.0;    // Tr(G) / dim, G = Gram matrix on the small side
  double residual = 0.0;    // max|G - constant * I| / constant
  bool proportional = false;
};

/// Every bipartition with |I| <= |J|: four 1|3 splits, three 2|2 splits.
struct ProportionalityReport {
  std::vector<BipartitionCheck> checks;
  double constant_one_three = 0.0;
  double constant_two_two = 0.0;
  double tol = kDefaultTolerance;
  bool perfect = false;
};

/// Checks that each Phi_{I,J}^dagger Phi_{I,J} is a multiple of the identity,
/// with a common constant among splits of equal |I|. Residuals are relative
/// to the constant, so the verdict is scale invariant. Throws on t == 0.
ProportionalityReport check_perfect_proportional(const Tensor4& t,
                                                 double tol = kDefaultTolerance);

nlohmann::json to_json(const PerfectnessReport& r);
nlohmann::json to_json(const ProportionalityReport& r);

}  // namespace ameforge

#endif  // AMEFORGE_PERFECT_H_
