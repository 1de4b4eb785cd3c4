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


#include "ameforge/families.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <limits>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "ameforge/reference_basis.h"
#include "ameforge/tangent.h"

namespace ameforge {
namespace {

constexpr int kBlocks[4][3] = {{1, 2, 3}, {4, 5, 6}, {7, 8, 9}, {10, 11, 12}};

FamilySpec make_spec(std::string name, Tensor4 seed, std::vector<std::string> names,
                     std::vector<Tensor4> span) {
  FamilySpec spec;
  spec.name = std::move(name);
  spec.seed = std::move(seed);
  spec.span_names = std::move(names);
  spec.span = std::move(span);
  spec.set_box(-kPi, kPi);
  return spec;
}

FamilySpec reference_spec(std::string name, std::vector<std::string> names) {
  std::vector<Tensor4> span;
  for (const auto& n : names) span.push_back(reference_vector_d3(n).value);
  return make_spec(std::move(name), to_tensor(builtin_ols(3)), std::move(names),
                   std::move(span));
}

std::vector<std::string> ef_names(std::initializer_list<int> indices) {
  std::vector<std::string> out;
  for (int j : indices) {
    out.push_back("e" + std::to_string(j));
    out.push_back("f" + std::to_string(j));
  }
  return out;
}

bool generalized_permutation(const ComplexMatrix& m, double tol) {
  std::vector<int> col_hits(static_cast<std::size_t>(m.cols()), 0);
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    int row_hits = 0;
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      const double mag = std::abs(m(r, c));
      if (mag <= tol) continue;
      if (std::abs(mag - 1.0) > tol) return false;
      ++row_hits;
      ++col_hits[static_cast<std::size_t>(c)];
    }
    if (row_hits != 1) return false;
  }
  return std::all_of(col_hits.begin(), col_hits.end(), [](int h) { return h == 1; });
}

SampleRow evaluate(const FamilySpec& spec, std::size_t index, std::vector<double> t, double tol) {
  SampleRow row;
  row.index = index;
  row.t = std::move(t);
  try {
    const ExpResult r = agreement(spec.seed, spec.combine(row.t), tol);
    row.dev12 = r.dev12;
    row.dev13 = r.dev13;
    row.dev23 = r.dev23;
    row.max_deviation = r.max_deviation();
    row.agree = r.agree;
    if (r.agree) row.perfectness = check_p4d(r.common(), tol);
    row.smell = smell_test_nonclassical(r.common());
  } catch (const Error& e) {
    row.error = e.what();
    row.max_deviation = std::numeric_limits<double>::infinity();
  }
  return row;
}

}  // namespace

void FamilySpec::set_box(double lo, double hi) { box.assign(span.size(), {lo, hi}); }

Tensor4 FamilySpec::combine(std::span<const double> t) const {
  if (t.size() != span.size()) throw Error("family: parameter count does not match span");
  Tensor4 x(seed.dim());
  for (std::size_t j = 0; j < t.size(); ++j) x += Complex(t[j], 0.0) * span[j];
  return x;
}

std::vector<Tensor4> phase_directions(int d) {
  const Tensor4 seed = to_tensor(builtin_ols(d));
  const StructureSummary summary = classify(solve_tangent(seed));
  std::vector<Tensor4> out;
  for (const auto& v : select_class(summary, 1, Purity::kPureImaginary, false)) {
    // Normalize to +i on the support tuple.
    Tensor4 x = v.value;
    const auto it = std::find_if(x.coeffs().begin(), x.coeffs().end(),
                                 [](const Complex& z) { return z != Complex{}; });
    x *= Complex(0.0, 1.0) / *it;
    out.push_back(std::move(x));
  }
  return out;
}

std::vector<FamilySpec> builtin_spans(int d) {
  std::vector<FamilySpec> out;
  if (d == 3) {
    for (const auto& block : kBlocks) {
      for (int a = 0; a < 3; ++a) {
        for (int b = a + 1; b < 3; ++b) {
          const int i = block[a], j = block[b];
          out.push_back(reference_spec(
              "prop3:e" + std::to_string(i) + "e" + std::to_string(j), ef_names({i, j})));
        }
      }
    }
    std::vector<std::string> g;
    for (int k = 1; k <= 9; ++k) g.push_back("g" + std::to_string(k));
    out.push_back(reference_spec("prop4", std::move(g)));
    for (const auto& block : kBlocks) {
      out.push_back(reference_spec("prop5:e" + std::to_string(block[0]) + "e" +
                                       std::to_string(block[1]) + "e" +
                                       std::to_string(block[2]),
                                   ef_names({block[0], block[1], block[2]})));
    }
    return out;
  }
  if (d == 4 || d == 5) {
    std::vector<Tensor4> span = phase_directions(d);
    std::vector<std::string> names;
    for (std::size_t k = 0; k < span.size(); ++k) names.push_back("g" + std::to_string(k + 1));
    out.push_back(make_spec("prop9", to_tensor(builtin_ols(d)), std::move(names), std::move(span)));
    return out;
  }
  throw Error("no builtin spans for d=" + std::to_string(d) + " (have 3, 4, 5)");
}

FamilySpec builtin_span(int d, std::string_view name) {
  for (auto& spec : builtin_spans(d)) {
    if (spec.name == name) return std::move(spec);
  }
  throw Error("no builtin span '" + std::string(name) + "' for d=" + std::to_string(d));
}

FamilySpec span_from_names(std::span<const std::string> names) {
  if (names.empty()) throw Error("span needs at least one vector");
  std::vector<std::string> list(names.begin(), names.end());
  std::string label = "span:";
  for (std::size_t k = 0; k < list.size(); ++k) label += (k ? "," : "") + list[k];
  return reference_spec(std::move(label), std::move(list));
}

SmellResult smell_test_nonclassical(const Tensor4& t, double tol) {
  SmellResult r;
  r.nonzeros = t.count_nonzero(tol);
  r.ols_form = std::all_of(kAllFlattenings.begin(), kAllFlattenings.end(),
                           [&](Flattening f) { return generalized_permutation(flatten(t, f), tol); });
  return r;
}

ComplexMatrix classical_phase_matrix(int d, std::span<const double> t, const OLSPair& ols) {
  if (ols.d != d) throw Error("classical_phase_matrix: OLS order differs from d");
  if (t.size() != static_cast<std::size_t>(d) * d) {
    throw Error("classical_phase_matrix: need d^2 = " + std::to_string(d * d) + " phases");
  }
  const Tensor4 seed = to_tensor(ols);
  ComplexMatrix m = flatten(seed, Flattening::F1);
  std::size_t k = 0;
  for (std::size_t lin = 0; lin < seed.size(); ++lin) {  // linear order = sorted tuples
    if (seed.coeffs()[lin] == Complex{}) continue;
    const auto [row, col] = flat_position(Flattening::F1, d, seed.delinearize(lin));
    m(row, col) = std::polar(1.0, t[k++]);
  }
  return m;
}

void FamilyReport::recompute_aggregates() {
  n_agree = n_perfect = n_ols_form = n_non_ols_form = 0;
  max_deviation = max_residual = 0.0;
  for (const auto& row : rows) {
    n_agree += row.agree;
    if (row.perfectness) {
      n_perfect += row.perfectness->pass;
      max_residual = std::max(max_residual, row.perfectness->max_residual());
    }
    if (row.error.empty()) (row.smell.ols_form ? n_ols_form : n_non_ols_form) += 1;
    max_deviation = std::max(max_deviation, row.max_deviation);
  }
}

unsigned default_thread_count() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("AMEFORGE_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1) n = std::min(n, static_cast<unsigned>(cap));
  }
  return n;
}

std::vector<std::vector<double>> draw_parameters(const FamilySpec& spec) {
  if (spec.box.size() != spec.span.size()) throw Error("family: box does not match span");
  SeededUniform rng(spec.rng_seed);
  std::vector<std::vector<double>> draws(spec.samples);
  for (auto& t : draws) {
    t.reserve(spec.box.size());
    for (const auto& [lo, hi] : spec.box) t.push_back(rng.next(lo, hi));
  }
  return draws;
}

FamilyReport sample_family(const FamilySpec& spec, double tol, unsigned threads) {
  if (spec.samples == 0) throw Error("family: sample count must be >= 1");
  if (!(tol > 0.0)) throw Error("family: tolerance must be positive");
  auto draws = draw_parameters(spec);

  FamilyReport report;
  report.name = spec.name;
  report.d = spec.seed.dim();
  report.tol = tol;
  report.rng_seed = spec.rng_seed;
  report.span_names = spec.span_names;
  report.rows.resize(draws.size());

  if (threads == 0) threads = default_thread_count();
  threads = std::min<unsigned>(threads, static_cast<unsigned>(draws.size()));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < draws.size(); i = next++) {
      report.rows[i] = evaluate(spec, i, std::move(draws[i]), tol);
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned k = 0; k < threads; ++k) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  report.recompute_aggregates();
  return report;
}

nlohmann::json to_json(const FamilyReport& r) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : r.rows) {
    nlohmann::json j = {{"index", row.index},
                        {"t", row.t},
                        {"dev12", row.dev12},
                        {"dev13", row.dev13},
                        {"dev23", row.dev23},
                        {"max_deviation", row.max_deviation},
                        {"agree", row.agree},
                        {"ols_form", row.smell.ols_form},
                        {"nonzeros", row.smell.nonzeros}};
    j["perfectness"] = row.perfectness ? to_json(*row.perfectness) : nlohmann::json(nullptr);
    if (!row.error.empty()) j["error"] = row.error;
    rows.push_back(std::move(j));
  }
  return {{"name", r.name},
          {"d", r.d},
          {"tol", r.tol},
          {"seed", r.rng_seed},
          {"span", r.span_names},
          {"samples", r.rows.size()},
          {"n_agree", r.n_agree},
          {"n_perfect", r.n_perfect},
          {"n_ols_form", r.n_ols_form},
          {"n_non_ols_form", r.n_non_ols_form},
          {"max_deviation", r.max_deviation},
          {"max_residual", r.max_residual},
          {"rows", std::move(rows)}};
}

std::string to_csv(const FamilyReport& r) {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "index";
  const std::size_t k = r.span_names.size();
  for (std::size_t j = 0; j < k; ++j) os << ",t" << j + 1;
  os << ",max_deviation,perfectness_residual,smell,nonzeros\n";
  for (const auto& row : r.rows) {
    os << row.index;
    for (double v : row.t) os << ',' << v;
    os << ',' << row.max_deviation << ',';
    if (row.perfectness) os << row.perfectness->max_residual();
    os << ',' << (row.smell.ols_form ? "ols-form" : "non-ols-form") << ',' << row.smell.nonzeros
       << '\n';
  }
  return os.str();
}

}  // namespace ameforge
