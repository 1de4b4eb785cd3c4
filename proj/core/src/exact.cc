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


#include "ameforge/exact.h"

#include <algorithm>
#include <limits>
#include <numeric>
#include <unordered_map>

#include "ameforge/tensor.h"

namespace ameforge {
namespace {

using Row = ExactMatrix::Row;

const Rational* find_entry(const Row& row, std::size_t col) {
  auto it = std::lower_bound(row.begin(), row.end(), col,
                             [](const auto& e, std::size_t c) { return e.first < c; });
  return (it != row.end() && it->first == col) ? &it->second : nullptr;
}

// target - factor * source, both sorted.
Row axpy(const Row& target, const Rational& factor, const Row& source) {
  Row out;
  out.reserve(target.size() + source.size());
  auto t = target.begin();
  auto s = source.begin();
  while (t != target.end() || s != source.end()) {
    if (s == source.end() || (t != target.end() && t->first < s->first)) {
      out.push_back(*t++);
    } else if (t == target.end() || s->first < t->first) {
      out.emplace_back(s->first, -factor * s->second);
      ++s;
    } else {
      Rational v = t->second - factor * s->second;
      if (sgn(v) != 0) out.emplace_back(t->first, std::move(v));
      ++t;
      ++s;
    }
  }
  return out;
}

std::vector<std::size_t> natural_order(std::size_t n) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  return order;
}

}  // namespace

Rational make_rational(long num, long den) {
  if (den == 0) throw Error("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

ExactMatrix::ExactMatrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows) {}

ExactMatrix ExactMatrix::from_integers(const std::vector<std::vector<long>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  ExactMatrix m(0, cols);
  for (const auto& r : rows) {
    if (r.size() != cols) throw Error("from_integers: ragged rows");
    Row sparse;
    for (std::size_t c = 0; c < cols; ++c) {
      if (r[c] != 0) sparse.emplace_back(c, Rational(r[c]));
    }
    m.push_row(std::move(sparse));
  }
  return m;
}

ExactMatrix ExactMatrix::from_rows(std::span<const ExactVector> rows, std::size_t cols) {
  ExactMatrix m(0, cols);
  for (const auto& v : rows) {
    if (v.size() != cols) throw Error("from_rows: vector length mismatch");
    Row sparse;
    for (std::size_t c = 0; c < cols; ++c) {
      if (sgn(v[c]) != 0) sparse.emplace_back(c, v[c]);
    }
    m.push_row(std::move(sparse));
  }
  return m;
}

Rational ExactMatrix::at(std::size_t r, std::size_t c) const {
  if (r >= rows() || c >= cols_) throw Error("ExactMatrix::at out of range");
  const Rational* v = find_entry(rows_[r], c);
  return v ? *v : Rational(0);
}

void ExactMatrix::set(std::size_t r, std::size_t c, const Rational& value) {
  if (r >= rows() || c >= cols_) throw Error("ExactMatrix::set out of range");
  Row& row = rows_[r];
  auto it = std::lower_bound(row.begin(), row.end(), c,
                             [](const auto& e, std::size_t col) { return e.first < col; });
  const bool present = it != row.end() && it->first == c;
  if (sgn(value) == 0) {
    if (present) row.erase(it);
  } else if (present) {
    it->second = value;
  } else {
    row.insert(it, {c, value});
  }
}

void ExactMatrix::add(std::size_t r, std::size_t c, const Rational& value) {
  if (sgn(value) == 0) return;
  set(r, c, at(r, c) + value);
}

void ExactMatrix::push_row(Row row) {
  for (std::size_t k = 0; k < row.size(); ++k) {
    if (row[k].first >= cols_) throw Error("push_row: column out of range");
    if (k > 0 && row[k - 1].first >= row[k].first) throw Error("push_row: unsorted row");
    if (sgn(row[k].second) == 0) throw Error("push_row: explicit zero");
  }
  rows_.push_back(std::move(row));
}

std::size_t ExactMatrix::nonzeros() const {
  std::size_t n = 0;
  for (const auto& r : rows_) n += r.size();
  return n;
}

std::vector<std::vector<double>> ExactMatrix::to_double() const {
  std::vector<std::vector<double>> out(rows(), std::vector<double>(cols_, 0.0));
  for (std::size_t r = 0; r < rows(); ++r) {
    for (const auto& [c, v] : rows_[r]) out[r][c] = v.get_d();
  }
  return out;
}

RrefResult rref(const ExactMatrix& m) {
  const auto order = natural_order(m.cols());
  return rref(m, order);
}

RrefResult rref(const ExactMatrix& m, std::span<const std::size_t> column_order) {
  if (column_order.size() != m.cols()) throw Error("rref: column order has wrong length");
  {
    std::vector<bool> seen(m.cols(), false);
    for (std::size_t c : column_order) {
      if (c >= m.cols() || seen[c]) throw Error("rref: column order is not a permutation");
      seen[c] = true;
    }
  }

  std::vector<Row> work;
  work.reserve(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (!m.row(r).empty()) work.push_back(m.row(r));
  }

  // Rows [0, next) are pivot rows; [next, size) are still active.
  std::size_t next = 0;
  std::vector<std::size_t> pivots;
  for (std::size_t col : column_order) {
    if (next == work.size()) break;
    std::size_t best = work.size();
    for (std::size_t r = next; r < work.size(); ++r) {
      if (find_entry(work[r], col) &&
          (best == work.size() || work[r].size() < work[best].size())) {
        best = r;
      }
    }
    if (best == work.size()) continue;
    std::swap(work[next], work[best]);
    Row& pivot_row = work[next];
    const Rational inv = 1 / *find_entry(pivot_row, col);
    for (auto& entry : pivot_row) entry.second *= inv;

    for (std::size_t r = 0; r < work.size(); ++r) {
      if (r == next) continue;
      if (const Rational* v = find_entry(work[r], col)) {
        const Rational factor = *v;
        work[r] = axpy(work[r], factor, pivot_row);
      }
    }
    pivots.push_back(col);
    ++next;
  }

  RrefResult result{ExactMatrix(0, m.cols()), std::move(pivots)};
  for (std::size_t r = 0; r < next; ++r) result.reduced.push_row(std::move(work[r]));
  while (result.reduced.rows() < m.rows()) result.reduced.push_row({});
  return result;
}

std::size_t rank(const ExactMatrix& m) { return rref(m).rank(); }

std::vector<ExactVector> kernel_basis(const ExactMatrix& m) {
  const auto order = natural_order(m.cols());
  return kernel_basis(m, order);
}

std::vector<ExactVector> kernel_basis(const ExactMatrix& m,
                                      std::span<const std::size_t> column_order) {
  const RrefResult red = rref(m, column_order);
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t p : red.pivots) is_pivot[p] = true;

  std::unordered_map<std::size_t, std::size_t> slot;  // free column -> basis index
  std::vector<ExactVector> basis;
  for (std::size_t c : column_order) {
    if (is_pivot[c]) continue;
    slot.emplace(c, basis.size());
    ExactVector v(m.cols(), Rational(0));
    v[c] = 1;
    basis.push_back(std::move(v));
  }
  for (std::size_t r = 0; r < red.rank(); ++r) {
    const std::size_t pivot = red.pivots[r];
    for (const auto& [c, value] : red.reduced.row(r)) {
      if (c == pivot) continue;
      basis[slot.at(c)][pivot] = -value;
    }
  }
  for (auto& v : basis) v = normalize_integer(std::move(v));
  return basis;
}

ExactVector multiply(const ExactMatrix& m, const ExactVector& v) {
  if (v.size() != m.cols()) throw Error("multiply: length mismatch");
  ExactVector out(m.rows(), Rational(0));
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (const auto& [c, value] : m.row(r)) out[r] += value * v[c];
  }
  return out;
}

bool is_zero(const ExactVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& q) { return sgn(q) == 0; });
}

ExactVector normalize_integer(ExactVector v) {
  mpz_class den_lcm = 1;
  mpz_class num_gcd = 0;
  for (const Rational& q : v) {
    if (sgn(q) == 0) continue;
    den_lcm = lcm(den_lcm, q.get_den());
    num_gcd = gcd(num_gcd, q.get_num());
  }
  if (num_gcd == 0) return v;
  // Scaling by lcm(dens)/gcd(nums) yields coprime integers.
  Rational scale(den_lcm, num_gcd);
  scale.canonicalize();
  const auto first = std::find_if(v.begin(), v.end(), [](const Rational& q) { return sgn(q) != 0; });
  if (sgn(*first) < 0) scale = -scale;
  for (Rational& q : v) q *= scale;
  return v;
}

std::string to_string(SubspaceRelation r) {
  switch (r) {
    case SubspaceRelation::kEqual: return "equal";
    case SubspaceRelation::kFirstInSecond: return "first_in_second";
    case SubspaceRelation::kSecondInFirst: return "second_in_first";
    case SubspaceRelation::kIncomparable: return "incomparable";
  }
  return "?";
}

SubspaceComparison subspace_compare(std::span<const ExactVector> a,
                                    std::span<const ExactVector> b) {
  std::size_t len = std::numeric_limits<std::size_t>::max();
  for (const auto* set : {&a, &b}) {
    for (const auto& v : *set) {
      if (len == std::numeric_limits<std::size_t>::max()) len = v.size();
      if (v.size() != len) throw Error("subspace_compare: vector length mismatch");
    }
  }
  if (len == std::numeric_limits<std::size_t>::max()) len = 0;

  std::vector<ExactVector> both(a.begin(), a.end());
  both.insert(both.end(), b.begin(), b.end());
  SubspaceComparison out{SubspaceRelation::kIncomparable};
  out.dim_first = rank(ExactMatrix::from_rows(a, len));
  out.dim_second = rank(ExactMatrix::from_rows(b, len));
  out.dim_sum = rank(ExactMatrix::from_rows(both, len));

  const bool a_in_b = out.dim_sum == out.dim_second;
  const bool b_in_a = out.dim_sum == out.dim_first;
  if (a_in_b && b_in_a) {
    out.relation = SubspaceRelation::kEqual;
  } else if (a_in_b) {
    out.relation = SubspaceRelation::kFirstInSecond;
  } else if (b_in_a) {
    out.relation = SubspaceRelation::kSecondInFirst;
  }
  return out;
}

nlohmann::json rational_to_json(const Rational& q) {
  return {{"num", q.get_num().get_str()}, {"den", q.get_den().get_str()}};
}

Rational rational_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("num") || !j.contains("den") || !j["num"].is_string() ||
      !j["den"].is_string()) {
    throw Error("rational json must be {\"num\": \"...\", \"den\": \"...\"}");
  }
  try {
    mpz_class num(j["num"].get<std::string>());
    mpz_class den(j["den"].get<std::string>());
    if (den == 0) throw Error("rational json: zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    throw Error("rational json: non-decimal integer string");
  }
}

nlohmann::json basis_to_json(std::span<const ExactVector> basis) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& v : basis) {
    nlohmann::json row = nlohmann::json::array();
    for (const Rational& q : v) row.push_back(rational_to_json(q));
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace ameforge
