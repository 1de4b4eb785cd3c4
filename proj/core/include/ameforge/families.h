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


#ifndef AMEFORGE_FAMILIES_H_
#define AMEFORGE_FAMILIES_H_

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "ameforge/liecurve.h"
#include "ameforge/ols.h"
#include "ameforge/perfect.h"
#include "ameforge/tensor.h"

namespace ameforge {

inline constexpr double kPi = 3.14159265358979323846;

/// A seed, a list of tangent directions and a sampling box for the
/// coefficients t_j of sum_j t_j X_j.
struct FamilySpec {
  std::string name;
  Tensor4 seed;
  std::vector<std::string> span_names;
  std::vector<Tensor4> span;
  std::vector<std::pair<double, double>> box;  // one interval per direction
  std::size_t samples = 200;
  std::uint64_t rng_seed = 1;

  /// Sets every interval to [lo, hi].
  void set_box(double lo, double hi);
  /// sum_j t_j span[j]
  Tensor4 combine(std::span<const double> t) const;
};

/// Named spans at the builtin seed of order d.
///   d = 3: prop3:eXeY (12 four-dimensional spans {eX, eY, fX, fY}), prop4
///          (g1..g9), prop5:eXeYeZ (4 six-dimensional blocks).
///   d = 4, 5: prop9, the phase span of the support-1 imaginary vectors.
std::vector<FamilySpec> builtin_spans(int d);
FamilySpec builtin_span(int d, std::string_view name);

/// Span of reference d = 3 vectors by name, e.g. {"e1", "e4"}.
FamilySpec span_from_names(std::span<const std::string> names);

/// Phase directions (support-1, pure imaginary) of the tangent space at the
/// builtin seed of order d, sorted by support tuple.
std::vector<Tensor4> phase_directions(int d);

/// Generalized-permutation test on all three flattenings: exactly one entry
/// per row and column above `tol`, each of modulus 1 within `tol`.
struct SmellResult {
  bool ols_form = false;
  std::size_t nonzeros = 0;
};
SmellResult smell_test_nonclassical(const Tensor4& t, double tol = 1e-9);

/// F1 of to_tensor(ols) with the k-th unit entry (support tuples in sorted
/// order) replaced by exp(i t_k).
ComplexMatrix classical_phase_matrix(int d, std::span<const double> t, const OLSPair& ols);

struct SampleRow {
  std::size_t index = 0;
  std::vector<double> t;
  double dev12 = 0.0;
  double dev13 = 0.0;
  double dev23 = 0.0;
  double max_deviation = 0.0;
  bool agree = false;
  std::optional<PerfectnessReport> perfectness;  // set when agree
  SmellResult smell;                             // of the F1 exponential
  std::string error;                             // precondition failure, if any
};

struct FamilyReport {
  std::string name;
  int d = 0;
  double tol = kDefaultTolerance;
  std::uint64_t rng_seed = 0;
  std::vector<std::string> span_names;
  std::vector<SampleRow> rows;

  std::size_t n_agree = 0;
  std::size_t n_perfect = 0;
  std::size_t n_ols_form = 0;
  std::size_t n_non_ols_form = 0;
  double max_deviation = 0.0;
  double max_residual = 0.0;  // over samples with a perfectness report

  /// Rebuilds the aggregate fields from rows.
  void recompute_aggregates();
};

/// Thread cap from AMEFORGE_THREADS, else hardware concurrency (>= 1).
unsigned default_thread_count();

/// Seeded parameter draws, uniform in the spec's box. Same seed, same draws
/// on every platform.
std::vector<std::vector<double>> draw_parameters(const FamilySpec& spec);

/// Evaluates agreement, perfectness and the smell test for every draw.
/// Failures are recorded, not thrown. Rows are ordered by sample index
/// regardless of `threads`.
FamilyReport sample_family(const FamilySpec& spec, double tol = kDefaultTolerance,
                           unsigned threads = 0);

nlohmann::json to_json(const FamilyReport& r);
/// One row per sample: index, t_1..t_k, max deviation, perfectness residual,
/// smell verdict, nonzero count.
std::string to_csv(const FamilyReport& r);

/// Uniform doubles in [0, 1) from the top 53 bits of std::mt19937_64, whose
/// output sequence is fixed by the standard (unlike the distributions).
class SeededUniform {
 public:
  explicit SeededUniform(std::uint64_t seed) : engine_(seed) {}
  double next() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double next(double lo, double hi) { return lo + (hi - lo) * next(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace ameforge

#endif  // AMEFORGE_FAMILIES_H_
