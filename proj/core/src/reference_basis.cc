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


#include "ameforge/reference_basis.h"

#include <array>

namespace ameforge {
namespace {

// Signed real parts of e1..e12; f_j carries the same labels with every
// coefficient +i.
constexpr std::array<std::string_view, 12> kRealRows = {
    "-1132 +1223 -2113 +2231 -3121 +3212",
    "-1111 +1323 -2122 +2331 -3133 +3312",
    "-1211 +1332 -2222 +2313 -3233 +3321",
    "-1131 -1213 -1322 +2123 +2232 +2311",
    "-1112 -1221 -1333 +3123 +3232 +3311",
    "-2112 -2221 -2333 +3131 +3213 +3322",
    "+1113 -1321 -2223 +2312 -3122 +3211",
    "-1133 +1222 +2121 -2332 -3231 +3323",
    "+1212 -1331 +2111 -2233 -3132 +3313",
    "+1122 -1233 +2212 -2323 -3113 +3332",
    "+1121 -1313 -2133 +2211 -3223 +3331",
    "-1231 +1312 +2132 -2321 -3111 +3222",
};

constexpr std::array<std::string_view, 9> kPhaseLabels = {
    "1123", "1232", "1311", "2131", "2213", "2322", "3112", "3221", "3333"};

TangentVector build(const std::vector<std::pair<std::string_view, int>>& terms, bool imaginary) {
  ExactTensor4 exact = ExactTensor4::zero(3);
  const Tensor4 shape(3);
  for (const auto& [label, sign] : terms) {
    const std::size_t lin = shape.linear_index(parse_label(label));
    (imaginary ? exact.im : exact.re)[lin] = sign;
  }
  Tensor4 value = exact.to_tensor();
  return {std::move(value), std::move(exact)};
}

std::vector<std::pair<std::string_view, int>> parse_row(std::string_view row) {
  std::vector<std::pair<std::string_view, int>> out;
  while (!row.empty()) {
    const std::size_t start = row.find_first_of("+-");
    if (start == std::string_view::npos) break;
    out.emplace_back(row.substr(start + 1, 4), row[start] == '-' ? -1 : 1);
    row.remove_prefix(start + 5);
  }
  return out;
}

std::vector<NamedVector> make_table() {
  std::vector<NamedVector> table;
  for (std::size_t j = 0; j < kRealRows.size(); ++j) {
    table.push_back({"e" + std::to_string(j + 1), build(parse_row(kRealRows[j]), false)});
  }
  for (std::size_t j = 0; j < kRealRows.size(); ++j) {
    auto terms = parse_row(kRealRows[j]);
    for (auto& t : terms) t.second = 1;
    table.push_back({"f" + std::to_string(j + 1), build(terms, true)});
  }
  for (std::size_t k = 0; k < kPhaseLabels.size(); ++k) {
    table.push_back({"g" + std::to_string(k + 1), build({{kPhaseLabels[k], 1}}, true)});
  }
  return table;
}

}  // namespace

const std::vector<NamedVector>& reference_basis_d3() {
  static const std::vector<NamedVector> table = make_table();
  return table;
}

const TangentVector& reference_vector_d3(std::string_view name) {
  for (const auto& nv : reference_basis_d3()) {
    if (nv.name == name) return nv.vector;
  }
  throw Error("unknown reference vector '" + std::string(name) + "' (use e1..e12, f1..f12, g1..g9)");
}

}  // namespace ameforge
