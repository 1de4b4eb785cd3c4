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


#include "ameforge/tensor.h"

#include <algorithm>
#include <cmath>

namespace ameforge {

Index4 parse_label(std::string_view label) {
  if (label.size() != 4) {
    throw Error("tensor label must have 4 digits: '" + std::string(label) + "'");
  }
  Index4 idx{};
  for (std::size_t k = 0; k < 4; ++k) {
    const char ch = label[k];
    if (ch < '1' || ch > '9') {
      throw Error("tensor label digits must be 1..9: '" + std::string(label) + "'");
    }
    idx[k] = ch - '1';
  }
  return idx;
}

std::string format_label(const Index4& idx) {
  std::string out(4, '0');
  for (std::size_t k = 0; k < 4; ++k) out[k] = static_cast<char>('1' + idx[k]);
  return out;
}

Tensor4::Tensor4(int d) : d_(d) {
  if (d < 2) throw Error("local dimension must be >= 2");
  coeffs_.assign(static_cast<std::size_t>(d) * d * d * d, Complex{});
}

Tensor4::Tensor4(int d, std::vector<Complex> coeffs) : d_(d), coeffs_(std::move(coeffs)) {
  if (d < 2) throw Error("local dimension must be >= 2");
  const std::size_t n = static_cast<std::size_t>(d) * d * d * d;
  if (coeffs_.size() != n) {
    throw Error("tensor with d=" + std::to_string(d) + " needs " + std::to_string(n) +
                " coefficients, got " + std::to_string(coeffs_.size()));
  }
  for (const Complex& z : coeffs_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw Error("tensor coefficients must be finite");
    }
  }
}

Tensor4 Tensor4::from_terms(int d, const std::vector<std::pair<Index4, Complex>>& terms) {
  Tensor4 t(d);
  for (const auto& [idx, value] : terms) {
    for (int v : idx) {
      if (v < 0 || v >= d) throw Error("tensor index out of range");
    }
    t[idx] += value;
  }
  return t;
}

Index4 Tensor4::delinearize(std::size_t linear) const {
  Index4 idx{};
  for (int k = 3; k >= 0; --k) {
    idx[k] = static_cast<int>(linear % d_);
    linear /= d_;
  }
  return idx;
}

std::size_t Tensor4::count_nonzero(double threshold) const {
  return static_cast<std::size_t>(std::count_if(
      coeffs_.begin(), coeffs_.end(),
      [threshold](const Complex& z) { return std::abs(z) > threshold; }));
}

Tensor4& Tensor4::operator+=(const Tensor4& other) {
  if (other.d_ != d_) throw Error("tensor dimension mismatch");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

Tensor4& Tensor4::operator-=(const Tensor4& other) {
  if (other.d_ != d_) throw Error("tensor dimension mismatch");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  return *this;
}

Tensor4& Tensor4::operator*=(Complex s) {
  for (Complex& z : coeffs_) z *= s;
  return *this;
}

std::string_view to_string(Flattening f) {
  switch (f) {
    case Flattening::F1: return "F1";
    case Flattening::F2: return "F2";
    case Flattening::F3: return "F3";
  }
  return "?";
}

Flattening parse_flattening(std::string_view name) {
  if (name == "F1" || name == "1") return Flattening::F1;
  if (name == "F2" || name == "2") return Flattening::F2;
  if (name == "F3" || name == "3") return Flattening::F3;
  throw Error("unknown flattening '" + std::string(name) + "'");
}

std::pair<int, int> flat_position(Flattening f, int d, const Index4& idx) {
  const auto [a, b, c, e] = idx;
  switch (f) {
    case Flattening::F1: return {a * d + b, c * d + e};
    case Flattening::F2: return {a * d + c, b * d + e};
    case Flattening::F3: return {a * d + e, c * d + b};
  }
  return {0, 0};
}

Index4 flat_index(Flattening f, int d, int row, int col) {
  const int r0 = row / d, r1 = row % d;
  const int c0 = col / d, c1 = col % d;
  switch (f) {
    case Flattening::F1: return {r0, r1, c0, c1};
    case Flattening::F2: return {r0, c0, r1, c1};
    case Flattening::F3: return {r0, c1, c0, r1};
  }
  return {0, 0, 0, 0};
}

ComplexMatrix flatten(const Tensor4& t, Flattening f) {
  const int d = t.dim();
  ComplexMatrix m(d * d, d * d);
  for (std::size_t lin = 0; lin < t.size(); ++lin) {
    const auto [row, col] = flat_position(f, d, t.delinearize(lin));
    m(row, col) = t.coeffs()[lin];
  }
  return m;
}

Tensor4 unflatten(const ComplexMatrix& m, Flattening f, int d) {
  if (d < 2 || m.rows() != d * d || m.cols() != d * d) {
    throw Error("unflatten: expected a " + std::to_string(d * d) + "x" +
                std::to_string(d * d) + " matrix, got " + std::to_string(m.rows()) +
                "x" + std::to_string(m.cols()));
  }
  Tensor4 t(d);
  for (int row = 0; row < d * d; ++row) {
    for (int col = 0; col < d * d; ++col) t[flat_index(f, d, row, col)] = m(row, col);
  }
  return t;
}

double max_abs_diff(const Tensor4& s, const Tensor4& t) {
  if (s.dim() != t.dim()) throw Error("max_abs_diff: dimension mismatch");
  double worst = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    worst = std::max(worst, std::abs(s.coeffs()[i] - t.coeffs()[i]));
  }
  return worst;
}

double max_abs(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

bool is_permutation_matrix(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  const Eigen::Index n = m.rows();
  std::vector<int> col_hits(static_cast<std::size_t>(n), 0);
  for (Eigen::Index r = 0; r < n; ++r) {
    int row_hits = 0;
    for (Eigen::Index c = 0; c < n; ++c) {
      const Complex z = m(r, c);
      if (std::abs(z - Complex(1.0, 0.0)) <= tol) {
        ++row_hits;
        ++col_hits[static_cast<std::size_t>(c)];
      } else if (std::abs(z) > tol) {
        return false;
      }
    }
    if (row_hits != 1) return false;
  }
  return std::all_of(col_hits.begin(), col_hits.end(), [](int h) { return h == 1; });
}

}  // namespace ameforge
