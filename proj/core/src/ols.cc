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


#include "ameforge/ols.h"

#include <set>
#include <sstream>

namespace ameforge {
namespace {

OLSPair from_cells(int d, const std::vector<std::vector<std::pair<int, int>>>& cells) {
  OLSPair p{d, std::vector<std::vector<int>>(d, std::vector<int>(d)),
            std::vector<std::vector<int>>(d, std::vector<int>(d))};
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) {
      p.first[r][c] = cells[r][c].first;
      p.second[r][c] = cells[r][c].second;
    }
  }
  return p;
}

void check_latin(const std::vector<std::vector<int>>& sq, int d, const char* name,
                 std::vector<std::string>& out) {
  for (int r = 0; r < d; ++r) {
    std::set<int> seen(sq[r].begin(), sq[r].end());
    if (static_cast<int>(seen.size()) != d) {
      out.push_back(std::string(name) + ": row " + std::to_string(r + 1) +
                    " is not a permutation of 1.." + std::to_string(d));
    }
  }
  for (int c = 0; c < d; ++c) {
    std::set<int> seen;
    for (int r = 0; r < d; ++r) seen.insert(sq[r][c]);
    if (static_cast<int>(seen.size()) != d) {
      out.push_back(std::string(name) + ": column " + std::to_string(c + 1) +
                    " is not a permutation of 1.." + std::to_string(d));
    }
  }
}

}  // namespace

std::vector<std::string> validate(const OLSPair& p) {
  std::vector<std::string> out;
  const int d = p.d;
  if (d < 2) return {"order must be >= 2"};
  auto square_ok = [d](const std::vector<std::vector<int>>& sq) {
    if (static_cast<int>(sq.size()) != d) return false;
    for (const auto& row : sq) {
      if (static_cast<int>(row.size()) != d) return false;
    }
    return true;
  };
  if (!square_ok(p.first) || !square_ok(p.second)) {
    return {"squares must be " + std::to_string(d) + "x" + std::to_string(d)};
  }
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) {
      for (const auto* sq : {&p.first, &p.second}) {
        const int v = (*sq)[r][c];
        if (v < 1 || v > d) {
          out.push_back("cell (" + std::to_string(r + 1) + "," + std::to_string(c + 1) +
                        ") has entry " + std::to_string(v) + " outside 1.." +
                        std::to_string(d));
        }
      }
    }
  }
  check_latin(p.first, d, "A", out);
  check_latin(p.second, d, "B", out);

  std::set<std::pair<int, int>> pairs;
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) {
      const std::pair<int, int> cell{p.first[r][c], p.second[r][c]};
      if (!pairs.insert(cell).second) {
        out.push_back("pair (" + std::to_string(cell.first) + "," +
                      std::to_string(cell.second) + ") repeats at cell (" +
                      std::to_string(r + 1) + "," + std::to_string(c + 1) + ")");
      }
    }
  }
  return out;
}

OLSPair builtin_ols(int d) {
  switch (d) {
    case 3:
      return from_cells(3, {{{2, 3}, {3, 1}, {1, 2}},
                            {{3, 2}, {1, 3}, {2, 1}},
                            {{1, 1}, {2, 2}, {3, 3}}});
    case 4:
      return from_cells(4, {{{1, 1}, {2, 3}, {3, 4}, {4, 2}},
                            {{2, 2}, {1, 4}, {4, 3}, {3, 1}},
                            {{3, 3}, {4, 1}, {1, 2}, {2, 4}},
                            {{4, 4}, {3, 2}, {2, 1}, {1, 3}}});
    case 5:
      return from_cells(5, {{{1, 1}, {2, 4}, {3, 2}, {4, 5}, {5, 3}},
                            {{2, 2}, {3, 5}, {4, 3}, {5, 1}, {1, 4}},
                            {{3, 3}, {4, 1}, {5, 4}, {1, 2}, {2, 5}},
                            {{4, 4}, {5, 2}, {1, 5}, {2, 3}, {3, 1}},
                            {{5, 5}, {1, 3}, {2, 1}, {3, 4}, {4, 2}}});
    default:
      throw Error("no builtin OLS of order " + std::to_string(d) + " (have 3, 4, 5)");
  }
}

OLSPair cyclic_ols(int d) {
  if (d < 3 || d % 2 == 0) {
    throw Error("cyclic OLS needs an odd order >= 3, got " + std::to_string(d));
  }
  OLSPair p{d, std::vector<std::vector<int>>(d, std::vector<int>(d)),
            std::vector<std::vector<int>>(d, std::vector<int>(d))};
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) {
      p.first[r][c] = (r + c) % d + 1;
      p.second[r][c] = (r + 2 * c) % d + 1;
    }
  }
  return p;
}

Tensor4 to_tensor(const OLSPair& p) {
  if (const auto bad = validate(p); !bad.empty()) {
    throw Error("not an orthogonal Latin square: " + bad.front());
  }
  Tensor4 t(p.d);
  for (int r = 0; r < p.d; ++r) {
    for (int c = 0; c < p.d; ++c) t(c, r, p.first[r][c] - 1, p.second[r][c] - 1) = 1.0;
  }
  return t;
}

std::optional<OLSPair> from_tensor(const Tensor4& t, double tol) {
  for (Flattening f : kAllFlattenings) {
    if (!is_permutation_matrix(flatten(t, f), tol)) return std::nullopt;
  }
  const int d = t.dim();
  OLSPair p{d, std::vector<std::vector<int>>(d, std::vector<int>(d, 0)),
            std::vector<std::vector<int>>(d, std::vector<int>(d, 0))};
  for (std::size_t lin = 0; lin < t.size(); ++lin) {
    if (std::abs(t.coeffs()[lin]) <= tol) continue;
    const Index4 idx = t.delinearize(lin);
    p.first[idx[1]][idx[0]] = idx[2] + 1;
    p.second[idx[1]][idx[0]] = idx[3] + 1;
  }
  if (!validate(p).empty()) return std::nullopt;
  return p;
}

std::string format_table(const OLSPair& p) {
  std::ostringstream os;
  std::string rule = "+";
  for (int c = 0; c < p.d; ++c) rule += "-----+";
  os << rule << '\n';
  for (int r = 0; r < p.d; ++r) {
    os << '|';
    for (int c = 0; c < p.d; ++c) os << ' ' << p.first[r][c] << ',' << p.second[r][c] << " |";
    os << '\n' << rule << '\n';
  }
  return os.str();
}

nlohmann::json ols_to_json(const OLSPair& p) {
  return {{"d", p.d}, {"A", p.first}, {"B", p.second}};
}

OLSPair ols_from_json(const nlohmann::json& j) {
  try {
    OLSPair p{j.at("d").get<int>(), j.at("A").get<std::vector<std::vector<int>>>(),
              j.at("B").get<std::vector<std::vector<int>>>()};
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed OLS json: ") + e.what());
  }
}

}  // namespace ameforge
