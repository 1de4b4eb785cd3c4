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

#include <algorithm>
#include <cmath>
#include <limits>

namespace ameforge {
namespace {

// Gram matrix on slot `slot`: G_xy = sum over the other three indices of
// conj(t[.. x ..]) * t[.. y ..].
ComplexMatrix single_slot_gram(const Tensor4& t, int slot) {
  const int d = t.dim();
  ComplexMatrix g = ComplexMatrix::Zero(d, d);
  for (std::size_t lin = 0; lin < t.size(); ++lin) {
    const Complex z = t.coeffs()[lin];
    if (z == Complex{}) continue;
    Index4 idx = t.delinearize(lin);
    const int x = idx[slot];
    for (int y = 0; y < d; ++y) {
      idx[slot] = y;
      g(x, y) += std::conj(z) * t[idx];
    }
  }
  return g;
}

BipartitionCheck proportional_check(std::string label, int small_side, const ComplexMatrix& gram,
                                    double tol) {
  BipartitionCheck c;
  c.label = std::move(label);
  c.small_side = small_side;
  c.constant = gram.trace().real() / static_cast<double>(gram.rows());
  const auto identity = ComplexMatrix::Identity(gram.rows(), gram.cols());
  c.residual = c.constant > 0.0 ? max_abs(gram - c.constant * identity) / c.constant
                                : std::numeric_limits<double>::infinity();
  c.proportional = c.residual <= tol;
  return c;
}

}  // namespace

double PerfectnessReport::max_residual() const {
  return *std::max_element(residuals.begin(), residuals.end());
}

double unitarity_residual(const ComplexMatrix& m) {
  const auto identity = ComplexMatrix::Identity(m.rows(), m.cols());
  return max_abs(m * m.adjoint() - identity);
}

PerfectnessReport check_p4d(const Tensor4& t, double tol) {
  if (!(tol > 0.0)) throw Error("check_p4d: tolerance must be positive");
  PerfectnessReport r;
  r.tol = tol;
  for (Flattening f : kAllFlattenings) {
    r.residuals[static_cast<int>(f)] = unitarity_residual(flatten(t, f));
  }
  r.pass = r.max_residual() <= tol;
  return r;
}

ProportionalityReport check_perfect_proportional(const Tensor4& t, double tol) {
  if (!(tol > 0.0)) throw Error("check_perfect_proportional: tolerance must be positive");
  if (t.count_nonzero() == 0) throw Error("check_perfect_proportional: zero tensor");

  ProportionalityReport r;
  r.tol = tol;
  static constexpr const char* kOneThree[] = {"A|BCD", "B|ACD", "C|ABD", "D|ABC"};
  for (int slot = 0; slot < 4; ++slot) {
    r.checks.push_back(proportional_check(kOneThree[slot], 1, single_slot_gram(t, slot), tol));
  }
  static constexpr const char* kTwoTwo[] = {"AB|CD", "AC|BD", "AD|BC"};
  for (Flattening f : kAllFlattenings) {
    const ComplexMatrix m = flatten(t, f);
    r.checks.push_back(
        proportional_check(kTwoTwo[static_cast<int>(f)], 2, m * m.adjoint(), tol));
  }

  bool ok = std::all_of(r.checks.begin(), r.checks.end(),
                        [](const BipartitionCheck& c) { return c.proportional; });
  for (int side : {1, 2}) {
    double sum = 0.0;
    int n = 0;
    for (const auto& c : r.checks) {
      if (c.small_side == side) {
        sum += c.constant;
        ++n;
      }
    }
    const double mean = sum / n;
    for (const auto& c : r.checks) {
      if (c.small_side == side && std::abs(c.constant - mean) > tol * mean) ok = false;
    }
    (side == 1 ? r.constant_one_three : r.constant_two_two) = mean;
  }
  r.perfect = ok;
  return r;
}

nlohmann::json to_json(const PerfectnessReport& r) {
  return {{"residuals", {{"F1", r.residuals[0]}, {"F2", r.residuals[1]}, {"F3", r.residuals[2]}}},
          {"max_residual", r.max_residual()},
          {"tol", r.tol},
          {"pass", r.pass}};
}

nlohmann::json to_json(const ProportionalityReport& r) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : r.checks) {
    checks.push_back({{"bipartition", c.label},
                      {"small_side", c.small_side},
                      {"constant", c.constant},
                      {"relative_residual", c.residual},
                      {"proportional", c.proportional}});
  }
  return {{"bipartitions", std::move(checks)},
          {"constant_1_3", r.constant_one_three},
          {"constant_2_2", r.constant_two_two},
          {"tol", r.tol},
          {"perfect", r.perfect}};
}

}  // namespace ameforge
