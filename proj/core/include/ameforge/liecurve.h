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


#ifndef AMEFORGE_LIECURVE_H_
#define AMEFORGE_LIECURVE_H_

#include <array>
#include <optional>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "ameforge/tensor.h"

namespace ameforge {

/// Tolerance on the unitarity / skew-Hermitian preconditions of exp_at.
inline constexpr double kPreconditionTolerance = 1e-10;
/// Default relative tolerance for per-degree Taylor comparisons.
inline constexpr double kTaylorTolerance = 1e-8;

/// max|S + S^dagger|.
double skew_residual(const ComplexMatrix& s);

/// exp(S) for skew-Hermitian S via the Hermitian eigendecomposition of
/// H = -iS: exp(S) = V diag(e^{i lambda}) V^dagger. Throws Error when S is not
/// skew-Hermitian within `skew_tol`.
ComplexMatrix expm_skew(const ComplexMatrix& s, double skew_tol = kPreconditionTolerance);

/// F_f^{-1}( F_f(phi) expm_skew(F_f(phi)^dagger F_f(x)) ).
Tensor4 exp_at(const Tensor4& phi, const Tensor4& x, Flattening f);

/// The three flattening-wise exponentials of X at Phi and their spread.
struct ExpResult {
  std::array<Tensor4, 3> images;
  double dev12 = 0.0;
  double dev13 = 0.0;
  double dev23 = 0.0;
  double tol = 0.0;
  bool agree = false;

  double max_deviation() const;
  /// Common value exp_Phi(X); meaningful when agree is set.
  const Tensor4& common() const { return images[0]; }
};

/// Evaluates all three exponentials after checking that X satisfies the
/// tangent equations at Phi (residual <= 1e-10).
ExpResult agreement(const Tensor4& phi, const Tensor4& x, double tol = 1e-9);

/// term_k = F_f^{-1}( F_f(phi) (F_f(phi)^dagger F_f(x))^k / k! ), k = 0..maxdeg.
std::vector<Tensor4> taylor_terms(const Tensor4& phi, const Tensor4& x, Flattening f,
                                  int maxdeg);

struct TaylorAgreement {
  int maxdeg = 0;
  double tol = kTaylorTolerance;
  /// Per degree: max pairwise |term_k^(i) - term_k^(j)| / max_i max|term_k^(i)|.
  std::vector<double> relative_deviation;
  /// First degree exceeding tol; empty means agreement through maxdeg.
  std::optional<int> first_disagreement;
};

TaylorAgreement taylor_agreement_degree(const Tensor4& phi, const Tensor4& x, int maxdeg,
                                        double tol = kTaylorTolerance);

struct OrderFit {
  double slope = 0.0;
  double intercept = 0.0;
  std::vector<double> scales;
  std::vector<double> deviations;
  std::size_t points_used = 0;
};

/// Least-squares slope of log(max pairwise deviation of exp_at(s x)) against
/// log s. Points whose deviation sits below 1e-13 are dropped; throws Error
/// when fewer than two remain.
OrderFit disagreement_order_fit(const Tensor4& phi, const Tensor4& x,
                                std::span<const double> scales);

/// 2^-3, 2^-4, ..., 2^-10.
std::vector<double> default_fit_scales();

nlohmann::json to_json(const ExpResult& r, bool embed_tensor = false);
nlohmann::json to_json(const TaylorAgreement& r);
nlohmann::json to_json(const OrderFit& r);

}  // namespace ameforge

#endif  // AMEFORGE_LIECURVE_H_
