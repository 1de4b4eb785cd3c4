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


#include "ameforge/tangent.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace ameforge {
namespace {

Rational rationalize(double v, long max_den) {
  if (!std::isfinite(v)) throw Error("non-finite tensor entry");
  if (v == std::floor(v) && std::abs(v) < 9e15) return Rational(static_cast<long>(v));
  long h_prev = 1, h_prev2 = 0, k_prev = 0, k_prev2 = 1;
  double x = v;
  for (int iter = 0; iter < 64; ++iter) {
    const double a = std::floor(x);
    if (std::abs(a) > 9e15) break;
    const long ai = static_cast<long>(a);
    const long h = ai * h_prev + h_prev2;
    const long k = ai * k_prev + k_prev2;
    if (k > max_den) break;
    if (std::abs(static_cast<double>(h) / static_cast<double>(k) - v) <=
        1e-14 * std::max(1.0, std::abs(v))) {
      return make_rational(h, k);
    }
    h_prev2 = h_prev;
    h_prev = h;
    k_prev2 = k_prev;
    k_prev = k;
    const double frac = x - a;
    if (frac == 0.0) break;
    x = 1.0 / frac;
  }
  throw Error("tensor entry " + std::to_string(v) +
              " is not a small rational; the exact tangent solver needs rational seeds");
}

// Sparse view of F_f(phi): per row, (column, re, im) for nonzero entries.
struct SparseFlat {
  struct Entry {
    int col;
    Rational re;
    Rational im;
  };
  std::vector<std::vector<Entry>> rows;
};

SparseFlat sparse_flatten(const ExactTensor4& phi, Flattening f) {
  const int d = phi.d;
  const int n = d * d;
  SparseFlat out;
  out.rows.resize(n);
  const Tensor4 shape(d);
  for (int row = 0; row < n; ++row) {
    for (int col = 0; col < n; ++col) {
      const std::size_t lin = shape.linear_index(flat_index(f, d, row, col));
      if (sgn(phi.re[lin]) != 0 || sgn(phi.im[lin]) != 0) {
        out.rows[row].push_back({col, phi.re[lin], phi.im[lin]});
      }
    }
  }
  return out;
}

std::vector<std::size_t> support_of(const TangentVector& v, double zero_tol, Purity& purity) {
  std::vector<std::size_t> support;
  bool any_re = false, any_im = false;
  const auto& c = v.value.coeffs();
  for (std::size_t lin = 0; lin < c.size(); ++lin) {
    bool re_nz, im_nz;
    if (v.exact) {
      re_nz = sgn(v.exact->re[lin]) != 0;
      im_nz = sgn(v.exact->im[lin]) != 0;
    } else {
      re_nz = std::abs(c[lin].real()) > zero_tol;
      im_nz = std::abs(c[lin].imag()) > zero_tol;
    }
    any_re |= re_nz;
    any_im |= im_nz;
    if (re_nz || im_nz) support.push_back(lin);
  }
  purity = (any_re && any_im) ? Purity::kMixed
           : any_im           ? Purity::kPureImaginary
                              : Purity::kPureReal;
  return support;
}

TangentVector make_vector(int d, const ExactVector& coords) {
  ExactTensor4 exact = ExactTensor4::from_coordinates(d, coords);
  Tensor4 value = exact.to_tensor();
  return {std::move(value), std::move(exact)};
}

StructureSummary summarize(std::vector<TangentVector> vectors, std::vector<VectorClass> classes,
                           bool resolved, std::string ordering) {
  StructureSummary s;
  s.vectors = std::move(vectors);
  s.classes = std::move(classes);
  s.resolved = resolved;
  s.ordering = std::move(ordering);
  for (std::size_t i = 0; i < s.classes.size(); ++i) {
    const auto& c = s.classes[i];
    if (c.partner) {
      if (*c.partner > i) ++s.pairs_by_support[c.support_size()];
    } else {
      ++s.unpaired[{c.support_size(), c.purity}];
    }
  }
  return s;
}

}  // namespace

ExactTensor4 ExactTensor4::zero(int d) {
  const std::size_t n = static_cast<std::size_t>(d) * d * d * d;
  return {d, ExactVector(n, Rational(0)), ExactVector(n, Rational(0))};
}

ExactTensor4 ExactTensor4::from_tensor(const Tensor4& t, long max_den) {
  ExactTensor4 out = zero(t.dim());
  for (std::size_t lin = 0; lin < t.size(); ++lin) {
    out.re[lin] = rationalize(t.coeffs()[lin].real(), max_den);
    out.im[lin] = rationalize(t.coeffs()[lin].imag(), max_den);
  }
  return out;
}

ExactTensor4 ExactTensor4::from_coordinates(int d, const ExactVector& v) {
  const std::size_t n = static_cast<std::size_t>(d) * d * d * d;
  if (v.size() != 2 * n) throw Error("coordinate vector must have length 2 d^4");
  return {d, ExactVector(v.begin(), v.begin() + n), ExactVector(v.begin() + n, v.end())};
}

Tensor4 ExactTensor4::to_tensor() const {
  std::vector<Complex> coeffs(re.size());
  for (std::size_t i = 0; i < re.size(); ++i) coeffs[i] = {re[i].get_d(), im[i].get_d()};
  return Tensor4(d, std::move(coeffs));
}

ExactVector ExactTensor4::coordinates() const {
  ExactVector v(re);
  v.insert(v.end(), im.begin(), im.end());
  return v;
}

FlatteningSet FlatteningSet::of(std::initializer_list<Flattening> fs) {
  std::uint8_t mask = 0;
  for (Flattening f : fs) mask |= static_cast<std::uint8_t>(1u << static_cast<int>(f));
  if (mask == 0) throw Error("flattening subset must be nonempty");
  return FlatteningSet(mask);
}

FlatteningSet FlatteningSet::parse(std::string_view text) {
  std::uint8_t mask = 0;
  for (char ch : text) {
    if (ch == 'F' || ch == 'f' || ch == ',' || ch == ' ') continue;
    if (ch < '1' || ch > '3') {
      throw Error("flattening subset '" + std::string(text) + "': use digits 1-3");
    }
    mask |= static_cast<std::uint8_t>(1u << (ch - '1'));
  }
  if (mask == 0) throw Error("flattening subset must be nonempty");
  return FlatteningSet(mask);
}

std::vector<Flattening> FlatteningSet::list() const {
  std::vector<Flattening> out;
  for (Flattening f : kAllFlattenings) {
    if (contains(f)) out.push_back(f);
  }
  return out;
}

std::string FlatteningSet::to_string() const {
  std::string s;
  for (Flattening f : list()) s += static_cast<char>('1' + static_cast<int>(f));
  return s;
}

ExactMatrix constraint_matrix(const ExactTensor4& phi, FlatteningSet which) {
  const int d = phi.d;
  const int n = d * d;
  const std::size_t n4 = static_cast<std::size_t>(n) * n;
  const Tensor4 shape(d);
  ExactMatrix m(0, 2 * n4);

  for (Flattening f : which.list()) {
    const SparseFlat p = sparse_flatten(phi, f);
    auto re_col = [&](int row, int col) { return shape.linear_index(flat_index(f, d, row, col)); };
    auto im_col = [&](int row, int col) { return n4 + re_col(row, col); };

    for (int a = 0; a < n; ++a) {
      for (int b = a; b < n; ++b) {
        // M_ab = sum_c X_ac conj(P_bc) + P_ac conj(X_bc), X = U + iV, P = p + iq.
        ExactMatrix re_row(1, 2 * n4);
        ExactMatrix im_row(1, 2 * n4);
        for (const auto& e : p.rows[b]) {
          re_row.add(0, re_col(a, e.col), e.re);
          re_row.add(0, im_col(a, e.col), e.im);
          im_row.add(0, im_col(a, e.col), e.re);
          im_row.add(0, re_col(a, e.col), -e.im);
        }
        for (const auto& e : p.rows[a]) {
          re_row.add(0, re_col(b, e.col), e.re);
          re_row.add(0, im_col(b, e.col), e.im);
          im_row.add(0, re_col(b, e.col), e.im);
          im_row.add(0, im_col(b, e.col), -e.re);
        }
        m.push_row(re_row.row(0));
        if (a != b) m.push_row(im_row.row(0));
      }
    }
  }
  return m;
}

ExactMatrix constraint_matrix(const Tensor4& phi, FlatteningSet which) {
  return constraint_matrix(ExactTensor4::from_tensor(phi), which);
}

std::vector<ExactVector> tangent_kernel(const Tensor4& phi, FlatteningSet which) {
  return kernel_basis(constraint_matrix(phi, which));
}

std::string_view to_string(Purity p) {
  switch (p) {
    case Purity::kPureReal: return "pure-real";
    case Purity::kPureImaginary: return "pure-imaginary";
    case Purity::kMixed: return "mixed";
  }
  return "?";
}

TangentBasis solve_tangent(const Tensor4& phi, FlatteningSet which) {
  TangentBasis basis;
  basis.seed = phi;
  basis.which = which;
  for (const auto& v : tangent_kernel(phi, which)) {
    basis.vectors.push_back(make_vector(phi.dim(), v));
  }
  basis.classes = classify_vectors(basis.vectors);
  return basis;
}

double verify_membership(const Tensor4& x, const Tensor4& phi, FlatteningSet which) {
  if (x.dim() != phi.dim()) throw Error("verify_membership: dimension mismatch");
  double worst = 0.0;
  for (Flattening f : which.list()) {
    const ComplexMatrix fx = flatten(x, f);
    const ComplexMatrix fp = flatten(phi, f);
    worst = std::max(worst, max_abs(fx * fp.adjoint() + fp * fx.adjoint()));
  }
  return worst;
}

bool verify_membership_exact(const ExactTensor4& x, const ExactTensor4& phi,
                             FlatteningSet which) {
  if (x.d != phi.d) throw Error("verify_membership_exact: dimension mismatch");
  return is_zero(multiply(constraint_matrix(phi, which), x.coordinates()));
}

std::vector<VectorClass> classify_vectors(std::span<const TangentVector> vectors,
                                          double zero_tol) {
  std::vector<VectorClass> classes(vectors.size());
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    classes[i].support = support_of(vectors[i], zero_tol, classes[i].purity);
  }
  std::map<std::vector<std::size_t>, std::vector<std::size_t>> by_support;
  for (std::size_t i = 0; i < classes.size(); ++i) by_support[classes[i].support].push_back(i);
  for (const auto& [support, members] : by_support) {
    std::vector<std::size_t> reals, imags;
    for (std::size_t i : members) {
      if (classes[i].purity == Purity::kPureReal) reals.push_back(i);
      if (classes[i].purity == Purity::kPureImaginary) imags.push_back(i);
    }
    for (std::size_t k = 0; k < std::min(reals.size(), imags.size()); ++k) {
      classes[reals[k]].partner = imags[k];
      classes[imags[k]].partner = reals[k];
    }
  }
  return classes;
}

bool supports_disjoint_or_paired(std::span<const VectorClass> classes) {
  std::map<std::size_t, std::size_t> owner;  // tensor index -> vector
  for (std::size_t i = 0; i < classes.size(); ++i) {
    for (std::size_t lin : classes[i].support) {
      auto [it, fresh] = owner.emplace(lin, i);
      if (fresh || it->second == i) continue;
      const auto& other = classes[it->second];
      if (!(other.partner && *other.partner == i)) return false;
    }
  }
  return true;
}

StructureSummary classify(const TangentBasis& basis) {
  const int d = basis.seed.dim();
  std::vector<ExactVector> rows;
  rows.reserve(basis.vectors.size());
  for (const auto& v : basis.vectors) {
    rows.push_back(v.exact ? v.exact->coordinates()
                           : ExactTensor4::from_tensor(v.value).coordinates());
  }
  const std::size_t ncols = 2 * basis.seed.size();
  const ExactMatrix stacked = ExactMatrix::from_rows(rows, ncols);

  std::vector<std::size_t> natural(ncols);
  std::iota(natural.begin(), natural.end(), std::size_t{0});
  std::vector<std::size_t> frequency = natural;
  {
    std::vector<std::size_t> count(ncols, 0);
    for (std::size_t r = 0; r < stacked.rows(); ++r) {
      for (const auto& entry : stacked.row(r)) ++count[entry.first];
    }
    std::stable_sort(frequency.begin(), frequency.end(),
                     [&](std::size_t a, std::size_t b) { return count[a] > count[b]; });
  }

  for (const auto& [name, order] :
       {std::pair{"natural", &natural}, std::pair{"frequency", &frequency}}) {
    const RrefResult red = rref(stacked, *order);
    std::vector<TangentVector> vectors;
    for (std::size_t r = 0; r < red.rank(); ++r) {
      ExactVector coords(ncols, Rational(0));
      for (const auto& [c, value] : red.reduced.row(r)) coords[c] = value;
      vectors.push_back(make_vector(d, normalize_integer(std::move(coords))));
    }
    auto classes = classify_vectors(vectors);
    if (supports_disjoint_or_paired(classes)) {
      return summarize(std::move(vectors), std::move(classes), true, name);
    }
  }
  return summarize(basis.vectors, classify_vectors(basis.vectors), false, "unresolved");
}

std::vector<TangentVector> select_class(const StructureSummary& summary, std::size_t support,
                                        Purity purity, bool paired) {
  std::vector<std::size_t> picked;
  for (std::size_t i = 0; i < summary.classes.size(); ++i) {
    const auto& c = summary.classes[i];
    if (c.support_size() == support && c.purity == purity && c.partner.has_value() == paired) {
      picked.push_back(i);
    }
  }
  std::sort(picked.begin(), picked.end(), [&](std::size_t a, std::size_t b) {
    return summary.classes[a].support < summary.classes[b].support;
  });
  std::vector<TangentVector> out;
  for (std::size_t i : picked) out.push_back(summary.vectors[i]);
  return out;
}

std::string StructureSummary::describe() const {
  std::ostringstream os;
  os << "dim " << dim();
  for (const auto& [support, count] : pairs_by_support) {
    os << "; " << count << " pairs support-" << support;
  }
  for (const auto& [key, count] : unpaired) {
    os << "; " << count << ' ' << (key.second == Purity::kPureImaginary ? "imaginary"
                                   : key.second == Purity::kPureReal  ? "real"
                                                                       : "mixed")
       << " support-" << key.first;
  }
  if (!resolved) os << "; unresolved";
  return os.str();
}

nlohmann::json tangent_vector_to_json(const TangentVector& v) {
  const int d = v.value.dim();
  nlohmann::json entries = nlohmann::json::array();
  for (std::size_t lin = 0; lin < v.value.size(); ++lin) {
    const Complex z = v.value.coeffs()[lin];
    if (z == Complex{} && !(v.exact && (sgn(v.exact->re[lin]) || sgn(v.exact->im[lin])))) {
      continue;
    }
    const Index4 idx = v.value.delinearize(lin);
    nlohmann::json e = {{"idx", {idx[0] + 1, idx[1] + 1, idx[2] + 1, idx[3] + 1}}};
    if (v.exact) {
      e["re"] = rational_to_json(v.exact->re[lin]);
      e["im"] = rational_to_json(v.exact->im[lin]);
    } else {
      e["re"] = z.real();
      e["im"] = z.imag();
    }
    entries.push_back(std::move(e));
  }
  return {{"d", d}, {"format", "sparse"}, {"entries", std::move(entries)}};
}

namespace {

nlohmann::json classes_to_json(std::span<const TangentVector> vectors,
                               std::span<const VectorClass> classes) {
  nlohmann::json out = nlohmann::json::array();
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    const auto& c = classes[i];
    nlohmann::json labels = nlohmann::json::array();
    for (std::size_t lin : c.support) labels.push_back(format_label(vectors[i].value.delinearize(lin)));
    out.push_back({{"tensor", tangent_vector_to_json(vectors[i])},
                   {"support", std::move(labels)},
                   {"support_size", c.support_size()},
                   {"purity", to_string(c.purity)},
                   {"partner", c.partner ? nlohmann::json(*c.partner) : nlohmann::json(nullptr)}});
  }
  return out;
}

}  // namespace

nlohmann::json to_json(const TangentBasis& basis) {
  return {{"d", basis.seed.dim()},
          {"flattenings", basis.which.to_string()},
          {"dim", basis.dim()},
          {"vectors", classes_to_json(basis.vectors, basis.classes)}};
}

nlohmann::json to_json(const StructureSummary& s) {
  nlohmann::json pairs = nlohmann::json::object();
  for (const auto& [support, count] : s.pairs_by_support) pairs[std::to_string(support)] = count;
  nlohmann::json unpaired = nlohmann::json::array();
  for (const auto& [key, count] : s.unpaired) {
    unpaired.push_back({{"support", key.first}, {"purity", to_string(key.second)}, {"count", count}});
  }
  return {{"dim", s.dim()},
          {"resolved", s.resolved},
          {"ordering", s.ordering},
          {"pairs_by_support", std::move(pairs)},
          {"unpaired", std::move(unpaired)},
          {"summary", s.describe()},
          {"vectors", classes_to_json(s.vectors, s.classes)}};
}

}  // namespace ameforge
