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


#ifndef AMEFORGE_TANGENT_H_
#define AMEFORGE_TANGENT_H_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ameforge/exact.h"
#include "ameforge/tensor.h"

namespace ameforge {

/// Complex tensor with exact rational real and imaginary parts.
struct ExactTensor4 {
  int d = 0;
  ExactVector re;
  ExactVector im;

  static ExactTensor4 zero(int d);
  /// Recovers small rationals (denominator <= max_den) from the double
  /// entries; throws Error when an entry is not such a rational.
  static ExactTensor4 from_tensor(const Tensor4& t, long max_den = 1'000'000);
  /// Splits a length-2d^4 coordinate vector [re..., im...].
  static ExactTensor4 from_coordinates(int d, const ExactVector& v);

  Tensor4 to_tensor() const;
  ExactVector coordinates() const;
};

/// Nonempty subset of {F1, F2, F3}.
class FlatteningSet {
 public:
  static FlatteningSet all() { return FlatteningSet(0b111); }
  static FlatteningSet of(std::initializer_list<Flattening> fs);
  /// "123", "12", "F1,F3", ...
  static FlatteningSet parse(std::string_view text);

  bool contains(Flattening f) const { return (mask_ >> static_cast<int>(f)) & 1u; }
  std::vector<Flattening> list() const;
  std::size_t size() const { return list().size(); }
  std::string to_string() const;  // "123", "13", ...

  friend bool operator==(const FlatteningSet&, const FlatteningSet&) = default;

 private:
  explicit FlatteningSet(std::uint8_t mask) : mask_(mask) {}
  std::uint8_t mask_;
};

/// Real linear system for F_i(X) F_i(Phi)^dagger + F_i(Phi) F_i(X)^dagger = 0
/// over the 2 d^4 real unknowns (Re X in columns [0, d^4), Im X in
/// [d^4, 2 d^4)). Each selected flattening contributes d^4 rows: for every
/// a <= b of the Hermitian matrix, the real part, plus the imaginary part
/// when a < b.
ExactMatrix constraint_matrix(const ExactTensor4& phi, FlatteningSet which);
ExactMatrix constraint_matrix(const Tensor4& phi, FlatteningSet which);

/// Exact kernel of constraint_matrix, as coordinate vectors.
std::vector<ExactVector> tangent_kernel(const Tensor4& phi, FlatteningSet which);

struct TangentVector {
  Tensor4 value;
  std::optional<ExactTensor4> exact;
};

enum class Purity { kPureReal, kPureImaginary, kMixed };
std::string_view to_string(Purity p);

struct VectorClass {
  std::vector<std::size_t> support;  // sorted linear tensor indices
  Purity purity = Purity::kMixed;
  std::optional<std::size_t> partner;
  std::size_t support_size() const { return support.size(); }
};

struct TangentBasis {
  Tensor4 seed;
  FlatteningSet which = FlatteningSet::all();
  std::vector<TangentVector> vectors;
  std::vector<VectorClass> classes;
  std::size_t dim() const { return vectors.size(); }
};

/// Solves the tangent system exactly and classifies the kernel vectors.
TangentBasis solve_tangent(const Tensor4& phi, FlatteningSet which = FlatteningSet::all());

/// max over selected i of max|F_i(X) F_i(Phi)^dagger + F_i(Phi) F_i(X)^dagger|.
double verify_membership(const Tensor4& x, const Tensor4& phi,
                         FlatteningSet which = FlatteningSet::all());
/// Exact variant: true iff the constraint rows vanish identically.
bool verify_membership_exact(const ExactTensor4& x, const ExactTensor4& phi,
                             FlatteningSet which = FlatteningSet::all());

/// Support/purity per vector, and e/f pairing: same support, one pure real,
/// the other pure imaginary.
std::vector<VectorClass> classify_vectors(std::span<const TangentVector> vectors,
                                          double zero_tol = 0.0);

/// True when any two vectors have disjoint supports unless they are partners.
bool supports_disjoint_or_paired(std::span<const VectorClass> classes);

struct StructureSummary {
  std::vector<TangentVector> vectors;  // support-minimal basis when resolved
  std::vector<VectorClass> classes;
  std::map<std::size_t, std::size_t> pairs_by_support;                    // support -> #pairs
  std::map<std::pair<std::size_t, Purity>, std::size_t> unpaired;        // (support, purity) -> #
  bool resolved = false;
  std::string ordering;  // "natural", "frequency" or "unresolved"

  std::size_t dim() const { return vectors.size(); }
  /// e.g. "dim 33; 12 pairs support-6; 9 imaginary support-1"
  std::string describe() const;
};

/// Rewrites the basis in support-minimal form by RREF over two column
/// orderings (natural, then descending coefficient frequency) and reports
/// the class multiset of the first ordering whose supports are pairwise
/// disjoint or paired.
StructureSummary classify(const TangentBasis& basis);

/// Vectors of `summary` with the given support size, purity and pairing,
/// sorted by their support tuples.
std::vector<TangentVector> select_class(const StructureSummary& summary, std::size_t support,
                                        Purity purity, bool paired);

nlohmann::json tangent_vector_to_json(const TangentVector& v);
nlohmann::json to_json(const TangentBasis& basis);
nlohmann::json to_json(const StructureSummary& summary);

}  // namespace ameforge

#endif  // AMEFORGE_TANGENT_H_
