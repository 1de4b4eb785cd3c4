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


#ifndef AMEFORGE_APPENDIX_H_
#define AMEFORGE_APPENDIX_H_

#include <array>

#include "ameforge/tensor.h"

namespace ameforge {

/// Coefficients of t1 e1 + t2 f1 + t3 e2 + t4 f2 at the d = 3 seed.
struct AppendixParams {
  double t1 = 0.0;
  double t2 = 0.0;
  double t3 = 0.0;
  double t4 = 0.0;

  /// t1^2 + t2^2 + t3^2 + t4^2 (the squared Euclidean norm).
  double norm_sq() const { return t1 * t1 + t2 * t2 + t3 * t3 + t4 * t4; }
};

/// Below this value of norm_sq() the closed form switches to series limits.
inline constexpr double kSeriesThreshold = 1e-8;

/// Closed-form exp_Phi(t1 e1 + t2 f1 + t3 e2 + t4 f2) in (C^3)^{x4}.
///
/// With x = sqrt(norm_sq) the 27 nonzero entries are built from
///   cos x, sin(x)/x and 2 sin^2(x/2)/x^2,
/// which are the real forms of cosh(ix), sinh(ix)/(ix) and
/// -(e^{ix} - 1)^2 e^{-ix} / (2 x^2). All other entries are exactly zero.
Tensor4 psi(const AppendixParams& p);

}  // namespace ameforge

#endif  // AMEFORGE_APPENDIX_H_
