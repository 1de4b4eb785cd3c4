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


#include "ameforge/liecurve.h"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "ameforge/perfect.h"
#include "ameforge/tangent.h"
#include "ameforge/tensor_io.h"

namespace ameforge {
namespace {

constexpr double kFitFloor = 1e-13;

// g^dagger F_f(x), after checking g = F_f(phi) is unitary.
ComplexMatrix pulled_back_generator(const ComplexMatrix& g, const Tensor4& x, Flattening f) {
  if (const double r = unitarity_residual(g); r > kPreconditionTolerance) {
    throw Error(std::string("exp_at: ") + std::string(to_string(f)) +
                "(phi) is not unitary (residual " + std::to_string(r) + ")");
  }
  ComplexMatrix s = g.adjoint() * flatten(x, f);
  if (const double r = skew_residual(s); r > kPreconditionTolerance) {
    throw Error(std::string("exp_at: ") + std::string(to_string(f)) +
                "(phi)^dagger " + std::string(to_string(f)) +
                "(x) is not skew-Hermitian (residual " + std::to_string(r) + ")");
  }
  return s;
}

}  // namespace

double skew_residual(const ComplexMatrix& s) { return max_abs(s + s.adjoint()); }

ComplexMatrix expm_skew(const ComplexMatrix& s, double skew_tol) {
  if (s.rows() != s.cols()) throw Error("expm_skew: matrix must be square");
  if (const double r = skew_residual(s); r > skew_tol) {
    throw Error("expm_skew: input is not skew-Hermitian (residual " + std::to_string(r) + ")");
  }
  // Symmetrize so the solver sees an exactly Hermitian matrix.
  const Eigen::MatrixXcd h = (Complex(0.0, -0.5) * (s - s.adjoint())).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(h);
  if (eig.info() != Eigen::Success) throw Error("expm_skew: eigensolver failed");
  const Eigen::MatrixXcd& v = eig.eigenvectors();
  Eigen::VectorXcd phases(v.cols());
  for (Eigen::Index k = 0; k < v.cols(); ++k) phases(k) = std::polar(1.0, eig.eigenvalues()(k));
  return v * phases.asDiagonal() * v.adjoint();
}

Tensor4 exp_at(const Tensor4& phi, const Tensor4& x, Flattening f) {
  if (phi.dim() != x.dim()) throw Error("exp_at: dimension mismatch");
  const ComplexMatrix g = flatten(phi, f);
  const ComplexMatrix s = pulled_back_generator(g, x, f);
  return unflatten(g * expm_skew(s), f, phi.dim());
}

double ExpResult::max_deviation() const { return std::max({dev12, dev13, dev23}); }

ExpResult agreement(const Tensor4& phi, const Tensor4& x, double tol) {
  if (!(tol > 0.0)) throw Error("agreement: tolerance must be positive");
  if (const double r = verify_membership(x, phi); r > kPreconditionTolerance) {
    throw Error("agreement: x is not tangent at phi (residual " + std::to_string(r) + ")");
  }
  ExpResult r;
  for (Flattening f : kAllFlattenings) r.images[static_cast<int>(f)] = exp_at(phi, x, f);
  r.dev12 = max_abs_diff(r.images[0], r.images[1]);
  r.dev13 = max_abs_diff(r.images[0], r.images[2]);
  r.dev23 = max_abs_diff(r.images[1], r.images[2]);
  r.tol = tol;
  r.agree = r.max_deviation() <= tol;
  return r;
}

std::vector<Tensor4> taylor_terms(const Tensor4& phi, const Tensor4& x, Flattening f,
                                  int maxdeg) {
  if (maxdeg < 0) throw Error("taylor_terms: maxdeg must be >= 0");
  if (phi.dim() != x.dim()) throw Error("taylor_terms: dimension mismatch");
  const ComplexMatrix g = flatten(phi, f);
  const ComplexMatrix s = pulled_back_generator(g, x, f);
  std::vector<Tensor4> terms;
  terms.reserve(static_cast<std::size_t>(maxdeg) + 1);
  ComplexMatrix power = ComplexMatrix::Identity(s.rows(), s.cols());
  for (int k = 0; k <= maxdeg; ++k) {
    if (k > 0) power = (power * s / static_cast<double>(k)).eval();
    terms.push_back(unflatten(g * power, f, phi.dim()));
  }
  return terms;
}

TaylorAgreement taylor_agreement_degree(const Tensor4& phi, const Tensor4& x, int maxdeg,
                                        double tol) {
  if (!(tol > 0.0)) throw Error("taylor_agreement_degree: tolerance must be positive");
  std::array<std::vector<Tensor4>, 3> terms;
  for (Flattening f : kAllFlattenings) {
    terms[static_cast<int>(f)] = taylor_terms(phi, x, f, maxdeg);
  }
  TaylorAgreement out;
  out.maxdeg = maxdeg;
  out.tol = tol;
  for (int k = 0; k <= maxdeg; ++k) {
    double scale = 0.0;
    for (const auto& t : terms) {
      for (const Complex& z : t[k].coeffs()) scale = std::max(scale, std::abs(z));
    }
    double dev = std::max({max_abs_diff(terms[0][k], terms[1][k]),
                           max_abs_diff(terms[0][k], terms[2][k]),
                           max_abs_diff(terms[1][k], terms[2][k])});
    const double rel = scale > 0.0 ? dev / scale : 0.0;
    out.relative_deviation.push_back(rel);
    if (!out.first_disagreement && rel > tol) out.first_disagreement = k;
  }
  return out;
}

OrderFit disagreement_order_fit(const Tensor4& phi, const Tensor4& x,
                                std::span<const double> scales) {
  OrderFit fit;
  std::vector<double> lx, ly;
  for (double s : scales) {
    if (!(s > 0.0)) throw Error("disagreement_order_fit: scales must be positive");
    Tensor4 sx = x;
    sx *= s;
    std::array<Tensor4, 3> img;
    for (Flattening f : kAllFlattenings) img[static_cast<int>(f)] = exp_at(phi, sx, f);
    const double dev = std::max({max_abs_diff(img[0], img[1]), max_abs_diff(img[0], img[2]),
                                 max_abs_diff(img[1], img[2])});
    fit.scales.push_back(s);
    fit.deviations.push_back(dev);
    if (dev >= kFitFloor) {
      lx.push_back(std::log(s));
      ly.push_back(std::log(dev));
    }
  }
  if (lx.size() < 2) {
    throw Error("disagreement_order_fit: deviations at noise floor, cannot fit");
  }
  const double n = static_cast<double>(lx.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  if (sxx == 0.0) throw Error("disagreement_order_fit: need two distinct scales");
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.points_used = lx.size();
  return fit;
}

std::vector<double> default_fit_scales() {
  std::vector<double> out;
  for (int k = 3; k <= 10; ++k) out.push_back(std::ldexp(1.0, -k));
  return out;
}

nlohmann::json to_json(const ExpResult& r, bool embed_tensor) {
  nlohmann::json j = {{"dev12", r.dev12}, {"dev13", r.dev13},   {"dev23", r.dev23},
                      {"max_deviation", r.max_deviation()},    {"tol", r.tol},
                      {"agree", r.agree}};
  if (embed_tensor) j["tensor"] = tensor_to_json(r.common());
  return j;
}

nlohmann::json to_json(const TaylorAgreement& r) {
  return {{"maxdeg", r.maxdeg},
          {"tol", r.tol},
          {"relative_deviation", r.relative_deviation},
          {"first_disagreement",
           r.first_disagreement ? nlohmann::json(*r.first_disagreement) : nlohmann::json(nullptr)},
          {"agrees_through", r.first_disagreement ? *r.first_disagreement - 1 : r.maxdeg}};
}

nlohmann::json to_json(const OrderFit& r) {
  return {{"slope", r.slope},
          {"intercept", r.intercept},
          {"scales", r.scales},
          {"deviations", r.deviations},
          {"points_used", r.points_used}};
}

}  // namespace ameforge
