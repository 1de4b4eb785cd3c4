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


#ifndef AMEFORGE_REPRODUCTION_H_
#define AMEFORGE_REPRODUCTION_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ameforge/tensor.h"

namespace ameforge {

struct PropositionInfo {
  int id = 0;
  std::vector<int> dims;  // local dimensions the check touches
  std::string claim;      // what is verified, in one line
};

/// Propositions 1-9 in their published numbering.
const std::vector<PropositionInfo>& proposition_list();

struct ReproOptions {
  std::size_t samples = 50;    // family samples per span
  std::size_t points = 20;     // random points for the Taylor checks
  std::uint64_t seed = 1;
  double tol = 1e-9;           // agreement / perfectness
  double exact_tol = 1e-12;    // numeric residual of exact-path objects
  int taylor_degree = 13;
  unsigned threads = 0;
};

struct PropositionCheck {
  int id = 0;
  std::string claim;
  bool pass = false;
  nlohmann::json detail;
  double seconds = 0.0;
};

PropositionCheck check_proposition(int id, const ReproOptions& options = {});

/// Ids whose dims include d (all when d is empty).
std::vector<int> propositions_for(std::optional<int> d);

/// Random element of span{e_j, f_j : j in two distinct blocks of three} at
/// the d = 3 seed, with coefficients uniform in [-1, 1].
Tensor4 random_cross_block_vector(std::uint64_t seed);
/// Random element of span{e_i, f_i, e_j, f_j, e_k, f_k} for block b in 0..3.
Tensor4 random_block_vector(int block, std::uint64_t seed);

nlohmann::json to_json(const PropositionCheck& c);

}  // namespace ameforge

#endif  // AMEFORGE_REPRODUCTION_H_
