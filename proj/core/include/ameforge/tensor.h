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


#ifndef AMEFORGE_TENSOR_H_
#define AMEFORGE_TENSOR_H_

#include <array>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Core>

namespace ameforge {

using Complex = std::complex<double>;

/// Dense complex matrix, row-major. Houses flattenings and unitary group
/// elements.
using ComplexMatrix =
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Raised for dimension mismatches and malformed inputs throughout the
/// library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A 4-tuple of 0-based local indices (a, b, c, e).
using Index4 = std::array<int, 4>;

/// Parses "1123"-style 1-based labels (single digit per slot, d <= 9).
Index4 parse_label(std::string_view label);
/// Inverse of parse_label.
std::string format_label(const Index4& idx);

/// Dense order-4 tensor over (C^d)^{x4}.
///
/// Coefficients are stored a-major: linear index
/// a*d^3 + b*d^2 + c*d + e with 0-based (a, b, c, e).
class Tensor4 {
 public:
  Tensor4() = default;
  explicit Tensor4(int d);
  Tensor4(int d, std::vector<Complex> coeffs);

  static Tensor4 zero(int d) { return Tensor4(d); }
  /// Sum of unit vectors |label> with the given coefficients.
  static Tensor4 from_terms(int d,
                            const std::vector<std::pair<Index4, Complex>>& terms);

  int dim() const { return d_; }
  std::size_t size() const { return coeffs_.size(); }

  Complex& operator()(int a, int b, int c, int e) {
    return coeffs_[linear_index(a, b, c, e)];
  }
  Complex operator()(int a, int b, int c, int e) const {
    return coeffs_[linear_index(a, b, c, e)];
  }
  Complex& operator[](const Index4& i) { return (*this)(i[0], i[1], i[2], i[3]); }
  Complex operator[](const Index4& i) const {
    return (*this)(i[0], i[1], i[2], i[3]);
  }

  const std::vector<Complex>& coeffs() const { return coeffs_; }
  std::vector<Complex>& coeffs() { return coeffs_; }

  std::size_t linear_index(int a, int b, int c, int e) const {
    return ((static_cast<std::size_t>(a) * d_ + b) * d_ + c) * d_ + e;
  }
  std::size_t linear_index(const Index4& i) const {
    return linear_index(i[0], i[1], i[2], i[3]);
  }
  Index4 delinearize(std::size_t linear) const;

  /// Number of entries with |x| > threshold.
  std::size_t count_nonzero(double threshold = 0.0) const;

  Tensor4& operator+=(const Tensor4& other);
  Tensor4& operator-=(const Tensor4& other);
  Tensor4& operator*=(Complex s);

  friend Tensor4 operator+(Tensor4 lhs, const Tensor4& rhs) { return lhs += rhs; }
  friend Tensor4 operator-(Tensor4 lhs, const Tensor4& rhs) { return lhs -= rhs; }
  friend Tensor4 operator*(Complex s, Tensor4 t) { return t *= s; }
  friend Tensor4 operator*(Tensor4 t, Complex s) { return t *= s; }
  friend bool operator==(const Tensor4&, const Tensor4&) = default;

 private:
  int d_ = 0;
  std::vector<Complex> coeffs_;
};

/// The three balanced bipartitions of {A, B, C, D}.
///   F1: (A x B) x (C x D)
///   F2: (A x C) x (B x D)
///   F3: (A x D) x (C x B)   <- column space is C x B, in that order.
enum class Flattening { F1 = 0, F2 = 1, F3 = 2 };

inline constexpr std::array<Flattening, 3> kAllFlattenings = {
    Flattening::F1, Flattening::F2, Flattening::F3};

std::string_view to_string(Flattening f);
Flattening parse_flattening(std::string_view name);

/// Row/column of the coefficient `idx` inside the d^2 x d^2 matrix F_f.
std::pair<int, int> flat_position(Flattening f, int d, const Index4& idx);
/// Inverse of flat_position.
Index4 flat_index(Flattening f, int d, int row, int col);

ComplexMatrix flatten(const Tensor4& t, Flattening f);
Tensor4 unflatten(const ComplexMatrix& m, Flattening f, int d);

/// max |s - t| over all d^4 entries.
double max_abs_diff(const Tensor4& s, const Tensor4& t);

/// max |m_ij| (0 for an empty matrix).
double max_abs(const ComplexMatrix& m);

/// True when every row and column holds exactly one entry within `tol` of 1
/// and all other entries are within `tol` of 0.
bool is_permutation_matrix(const ComplexMatrix& m, double tol = 1e-12);

}  // namespace ameforge

#endif  // AMEFORGE_TENSOR_H_
