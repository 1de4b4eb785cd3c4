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


// ameforge: command-line front end for the OLS seeds, tangent solver, family
// sampler, closed-form oracle and proposition checks.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "ameforge/appendix.h"
#include "ameforge/families.h"
#include "ameforge/liecurve.h"
#include "ameforge/ols.h"
#include "ameforge/perfect.h"
#include "ameforge/reference_basis.h"
#include "ameforge/reproduction.h"
#include "ameforge/tangent.h"
#include "ameforge/tensor_io.h"

namespace fs = std::filesystem;
using namespace ameforge;

namespace {

struct RunConfig {
  std::string out_dir;
  bool quiet = false;

  // ols
  std::optional<int> ols_d;
  std::optional<int> cyclic_d;

  // tangent
  std::string phi_path;
  std::optional<int> tangent_ols;
  std::string flattenings = "123";

  // family
  std::string family_name;
  std::string span_list;
  int d = 3;
  std::size_t samples = 200;
  std::uint64_t seed = 1;
  double tol = kDefaultTolerance;

  // verify-appendix
  std::size_t appendix_samples = 500;
  bool include_origin = false;

  // repro
  std::string repro_target;
  std::optional<int> prop;
  std::optional<int> repro_d;
  bool list = false;
  std::size_t repro_samples = 50;
  std::size_t points = 20;
  double exact_tol = 1e-12;
};

void log(const RunConfig& cfg, const std::string& msg) {
  if (!cfg.quiet) std::cerr << "[ameforge] " << msg << '\n';
}

std::string file_stem(std::string name) {
  for (char& ch : name) {
    if (ch == ':' || ch == ',' || ch == '/' || ch == ' ') ch = '_';
  }
  return name;
}

// Writes `j` to <out>/<file> when --out is set, otherwise to stdout.
void emit_json(const RunConfig& cfg, const nlohmann::json& j, const std::string& file) {
  if (cfg.out_dir.empty()) {
    std::cout << j.dump(2) << '\n';
    return;
  }
  fs::create_directories(cfg.out_dir);
  const fs::path path = fs::path(cfg.out_dir) / file;
  save_json_file(j, path);
  log(cfg, "wrote " + path.string());
}

void emit_text(const RunConfig& cfg, const std::string& text, const std::string& file) {
  fs::create_directories(cfg.out_dir);
  const fs::path path = fs::path(cfg.out_dir) / file;
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
  log(cfg, "wrote " + path.string());
}

std::vector<std::string> split_names(const std::string& list) {
  std::vector<std::string> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

int cmd_ols(const RunConfig& cfg) {
  OLSPair p;
  if (cfg.cyclic_d) {
    p = cyclic_ols(*cfg.cyclic_d);
  } else if (cfg.ols_d) {
    p = builtin_ols(*cfg.ols_d);
  } else {
    throw Error("ols: give an order (3, 4, 5) or --cyclic <odd d>");
  }
  const auto problems = validate(p);
  std::cout << format_table(p);
  for (const auto& msg : problems) std::cerr << "invalid: " << msg << '\n';
  nlohmann::json j = ols_to_json(p);
  j["valid"] = problems.empty();
  emit_json(cfg, j, "ols_" + std::to_string(p.d) + ".json");
  return problems.empty() ? 0 : 1;
}

int cmd_tangent(const RunConfig& cfg) {
  Tensor4 phi;
  if (cfg.tangent_ols) {
    phi = to_tensor(builtin_ols(*cfg.tangent_ols));
  } else if (!cfg.phi_path.empty()) {
    phi = read_json(cfg.phi_path);
  } else {
    throw Error("tangent: give a tensor file or --ols <d>");
  }
  const FlatteningSet which = FlatteningSet::parse(cfg.flattenings);
  log(cfg, "solving tangent system, d=" + std::to_string(phi.dim()) + ", flattenings " +
               which.to_string());
  const auto start = std::chrono::steady_clock::now();
  const TangentBasis basis = solve_tangent(phi, which);
  const StructureSummary summary = classify(basis);
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  std::cout << summary.describe() << '\n';
  log(cfg, "ordering " + summary.ordering + ", " + std::to_string(secs) + " s");
  nlohmann::json j = {{"flattenings", which.to_string()},
                      {"seconds", secs},
                      {"basis", to_json(basis)},
                      {"summary", to_json(summary)}};
  if (cfg.out_dir.empty()) {
    if (!cfg.quiet) std::cout << j["summary"].dump(2) << '\n';
  } else {
    emit_json(cfg, j["basis"], "tangent_basis.json");
    emit_json(cfg, j["summary"], "tangent_summary.json");
  }
  return 0;
}

int cmd_family(const RunConfig& cfg) {
  FamilySpec spec;
  if (!cfg.span_list.empty()) {
    if (cfg.d != 3) throw Error("family: --span names reference vectors at d = 3");
    const auto names = split_names(cfg.span_list);
    spec = span_from_names(names);
  } else if (!cfg.family_name.empty()) {
    spec = builtin_span(cfg.d, cfg.family_name);
  } else {
    throw Error("family: give a builtin span name or --span e1,e4");
  }
  spec.samples = cfg.samples;
  spec.rng_seed = cfg.seed;
  log(cfg, "sampling " + spec.name + ": " + std::to_string(spec.samples) + " samples, seed " +
               std::to_string(spec.rng_seed) + ", threads " +
               std::to_string(default_thread_count()));

  const FamilyReport report = sample_family(spec, cfg.tol);
  const std::size_t n = report.rows.size();
  nlohmann::json j = to_json(report);

  std::cout << spec.name << ": " << report.n_agree << "/" << n << " agree, " << report.n_perfect
            << "/" << n << " perfect, " << report.n_non_ols_form << " non-ols-form, max deviation "
            << report.max_deviation << '\n';
  bool ok = report.n_agree == n && report.n_perfect == n;

  const bool classical = spec.name == "prop4" || spec.name == "prop9";
  if (classical) {
    const OLSPair ols = builtin_ols(spec.seed.dim());
    std::size_t match = 0;
    double worst = 0.0;
    for (const auto& row : report.rows) {
      const Tensor4 e = exp_at(spec.seed, spec.combine(row.t), Flattening::F1);
      const double diff =
          max_abs(flatten(e, Flattening::F1) - classical_phase_matrix(spec.seed.dim(), row.t, ols));
      worst = std::max(worst, diff);
      match += diff <= cfg.tol;
    }
    std::cout << "phase matrix " << match << "/" << n << " match (max " << worst << ")\n";
    j["phase_matrix"] = {{"match", match}, {"max_difference", worst}};
    ok &= match == n;
  }

  if (report.n_agree < n) {
    const auto bad = std::find_if(report.rows.begin(), report.rows.end(),
                                  [](const SampleRow& r) { return !r.agree && r.error.empty(); });
    if (bad != report.rows.end()) {
      try {
        const OrderFit fit =
            disagreement_order_fit(spec.seed, spec.combine(bad->t), default_fit_scales());
        std::cout << "disagreement order fit (sample " << bad->index << "): slope " << fit.slope
                  << '\n';
        j["order_fit"] = to_json(fit);
        j["order_fit"]["sample"] = bad->index;
      } catch (const Error& e) {
        log(cfg, std::string("order fit unavailable: ") + e.what());
      }
    }
  }

  if (cfg.out_dir.empty()) {
    if (!cfg.quiet) std::cout << j.dump(2) << '\n';
  } else {
    const std::string stem = file_stem(spec.name);
    emit_json(cfg, j, stem + ".json");
    emit_text(cfg, to_csv(report), stem + ".csv");
  }
  return ok ? 0 : 1;
}

int cmd_verify_appendix(const RunConfig& cfg) {
  const Tensor4 phi = to_tensor(builtin_ols(3));
  const Tensor4& e1 = reference_vector_d3("e1").value;
  const Tensor4& f1 = reference_vector_d3("f1").value;
  const Tensor4& e2 = reference_vector_d3("e2").value;
  const Tensor4& f2 = reference_vector_d3("f2").value;

  std::vector<AppendixParams> points;
  SeededUniform rng(cfg.seed);
  for (std::size_t k = 0; k < cfg.appendix_samples; ++k) {
    points.push_back({rng.next(-2.0, 2.0), rng.next(-2.0, 2.0), rng.next(-2.0, 2.0),
                      rng.next(-2.0, 2.0)});
  }
  std::size_t series_points = 0;
  if (cfg.include_origin) {
    // Points inside the series branch, |t|^2 below the switch-over.
    for (int k = 0; k < 50; ++k) {
      const double r = std::sqrt(kSeriesThreshold) * 0.49 * rng.next();
      points.push_back({r * rng.next(-1.0, 1.0), r * rng.next(-1.0, 1.0),
                        r * rng.next(-1.0, 1.0), r * rng.next(-1.0, 1.0)});
      ++series_points;
    }
  }

  double worst = 0.0;
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& p : points) {
    const Tensor4 x = Complex(p.t1) * e1 + Complex(p.t2) * f1 + Complex(p.t3) * e2 +
                      Complex(p.t4) * f2;
    const Tensor4 closed = psi(p);
    double dev = 0.0;
    for (Flattening f : kAllFlattenings) dev = std::max(dev, max_abs_diff(closed, exp_at(phi, x, f)));
    worst = std::max(worst, dev);
    rows.push_back({{"t", {p.t1, p.t2, p.t3, p.t4}}, {"deviation", dev}});
  }
  bool ok = worst <= cfg.tol;
  nlohmann::json j = {{"samples", points.size()},
                      {"series_points", series_points},
                      {"seed", cfg.seed},
                      {"tol", cfg.tol},
                      {"max_deviation", worst},
                      {"points", std::move(rows)}};
  std::cout << "closed form vs exponential: " << points.size() << " points, max deviation "
            << worst << '\n';
  if (cfg.include_origin) {
    const bool origin = psi({}) == phi;
    std::cout << "psi(0) equals the seed: " << (origin ? "yes" : "no") << '\n';
    j["origin_exact"] = origin;
    ok &= origin;
  }
  j["pass"] = ok;
  if (!cfg.out_dir.empty()) emit_json(cfg, j, "appendix.json");
  std::cout << (ok ? "PASS" : "FAIL") << '\n';
  return ok ? 0 : 1;
}

int cmd_repro(const RunConfig& cfg) {
  if (cfg.list) {
    for (const auto& info : proposition_list()) {
      std::cout << "Proposition " << info.id << " (d =";
      for (int d : info.dims) std::cout << ' ' << d;
      std::cout << "): " << info.claim << '\n';
    }
    return 0;
  }
  std::vector<int> ids;
  if (cfg.prop) {
    ids = {*cfg.prop};
  } else if (cfg.repro_target == "all" || cfg.repro_d) {
    ids = propositions_for(cfg.repro_d);
  } else {
    throw Error("repro: give --prop N, 'all' or --list");
  }
  if (ids.empty()) throw Error("repro: no propositions for this dimension");

  ReproOptions o;
  o.samples = cfg.repro_samples;
  o.points = cfg.points;
  o.seed = cfg.seed;
  o.tol = cfg.tol;
  o.exact_tol = cfg.exact_tol;

  std::size_t passed = 0;
  nlohmann::json results = nlohmann::json::array();
  for (int id : ids) {
    log(cfg, "checking proposition " + std::to_string(id));
    const PropositionCheck c = check_proposition(id, o);
    passed += c.pass;
    std::cout << (c.pass ? "PASS" : "FAIL") << " proposition " << id << ": " << c.claim << " ("
              << c.seconds << " s)\n";
    if (!c.pass) std::cerr << c.detail.dump(2) << '\n';
    results.push_back(to_json(c));
  }
  std::cout << passed << "/" << ids.size() << " pass\n";
  if (!cfg.out_dir.empty()) {
    emit_json(cfg, {{"options", {{"samples", o.samples}, {"points", o.points}, {"seed", o.seed},
                                 {"tol", o.tol}, {"exact_tol", o.exact_tol}}},
                    {"results", std::move(results)}},
              "repro.json");
  }
  return passed == ids.size() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Perfect-tensor families from orthogonal Latin squares"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig cfg;
  app.add_option("--out", cfg.out_dir, "Directory for JSON / CSV reports");
  app.add_flag("-q,--quiet", cfg.quiet, "Suppress log lines and inline JSON");

  auto positive = CLI::PositiveNumber;

  auto* ols = app.add_subcommand("ols", "Print a builtin or cyclic orthogonal Latin square");
  ols->add_option("d", cfg.ols_d, "Order of a builtin square (3, 4, 5)");
  ols->add_option("--cyclic", cfg.cyclic_d, "Cyclic construction of odd order");

  auto* tangent = app.add_subcommand("tangent", "Solve the tangent system at a seed");
  tangent->add_option("phi", cfg.phi_path, "Seed tensor JSON file")->check(CLI::ExistingFile);
  tangent->add_option("--ols", cfg.tangent_ols, "Use the builtin seed of this order");
  tangent->add_option("--flattenings", cfg.flattenings, "Subset of flattenings, e.g. 123, 12");

  auto* family = app.add_subcommand("family", "Sample exp along a span and test agreement");
  family->add_option("name", cfg.family_name, "Builtin span, e.g. prop3:e1e2, prop4, prop9");
  family->add_option("--span", cfg.span_list, "Comma-separated reference vectors, e.g. e1,e4");
  family->add_option("--d", cfg.d, "Local dimension of the builtin seed");
  family->add_option("--samples", cfg.samples, "Number of samples")->check(positive);
  family->add_option("--seed", cfg.seed, "RNG seed");
  family->add_option("--tol", cfg.tol, "Agreement / perfectness tolerance")->check(positive);

  auto* appendix = app.add_subcommand("verify-appendix", "Compare the closed form with exp");
  appendix->add_option("--samples", cfg.appendix_samples, "Random points in [-2,2]^4")
      ->check(positive);
  appendix->add_option("--seed", cfg.seed, "RNG seed");
  appendix->add_option("--tol", cfg.tol, "Entrywise tolerance")->check(positive);
  appendix->add_flag("--include-origin", cfg.include_origin,
                     "Add t = 0 and points in the small-norm series branch");

  auto* repro = app.add_subcommand("repro", "Check the propositions");
  repro->add_option("target", cfg.repro_target, "'all'")->check(CLI::IsMember({"all"}));
  repro->add_option("--prop", cfg.prop, "Proposition number")->check(CLI::Range(1, 9));
  repro->add_option("--d", cfg.repro_d, "Only propositions touching this dimension");
  repro->add_flag("--list", cfg.list, "List the propositions and their claims");
  repro->add_option("--samples", cfg.repro_samples, "Family samples per span")->check(positive);
  repro->add_option("--points", cfg.points, "Random points for the Taylor checks")->check(positive);
  repro->add_option("--seed", cfg.seed, "RNG seed");
  repro->add_option("--tol", cfg.tol, "Agreement / perfectness tolerance")->check(positive);
  repro->add_option("--exact-tol", cfg.exact_tol, "Residual bound for exact-path objects")
      ->check(positive);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*ols) return cmd_ols(cfg);
    if (*tangent) return cmd_tangent(cfg);
    if (*family) return cmd_family(cfg);
    if (*appendix) return cmd_verify_appendix(cfg);
    if (*repro) return cmd_repro(cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
