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


#include "ameforge/appendix.h"

#include <cmath>

namespace ameforge {

Tensor4 psi(const AppendixParams& p) {
  const double n = p.norm_sq();
  const double x = std::sqrt(n);
  const Complex u(p.t1, p.t2);
  const Complex v(p.t3, p.t4);

  const double c = std::cos(x);
  double s;  // sin(x) / x
  double h;  // (1 - cos x) / x^2
  if (n < kSeriesThreshold) {
    s = 1.0 - n / 6.0 + n * n / 120.0;
    h = 0.5 - n / 24.0 + n * n / 720.0;
  } else {
    s = std::sin(x) / x;
    const double half = std::sin(0.5 * x);
    h = 2.0 * half * half / n;
  }

  const Complex su = s * u;
  const Complex sv = s * v;
  const Complex minus_su_bar = -s * std::conj(u);
  const Complex minus_sv_bar = -s * std::conj(v);
  const Complex mix_u_vbar = -h * u * std::conj(v);
  const Complex mix_ubar_v = -h * std::conj(u) * v;
  const Complex keep_u = 1.0 - std::norm(u) * h;
  const Complex keep_v = 1.0 - std::norm(v) * h;

  const std::pair<const char*, Complex> entries[] = {
      {"1111", minus_sv_bar}, {"1211", mix_u_vbar},   {"1311", keep_v},
      {"3112", c},            {"3212", su},           {"3312", sv},
      {"2113", minus_su_bar}, {"2213", keep_u},       {"2313", mix_ubar_v},
      {"3121", minus_su_bar}, {"3221", keep_u},       {"3321", mix_ubar_v},
      {"2122", minus_sv_bar}, {"2222", mix_u_vbar},   {"2322", keep_v},
      {"1123", c},            {"1223", su},           {"1323", sv},
      {"2131", c},            {"2231", su},           {"2331", sv},
      {"1132", minus_su_bar}, {"1232", keep_u},       {"1332", mix_ubar_v},
      {"3133", minus_sv_bar}, {"3233", mix_u_vbar},   {"3333", keep_v},
  };
  Tensor4 t(3);
  for (const auto& [label, value] : entries) t[parse_label(label)] = value;
  return t;
}

}  // namespace ameforge
