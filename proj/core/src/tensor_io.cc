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


#include "ameforge/tensor_io.h"

#include <cmath>
#include <fstream>
#include <set>

namespace ameforge {
namespace {

double finite_number(const nlohmann::json& j, const char* what) {
  if (!j.is_number()) throw Error(std::string("tensor json: '") + what + "' must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw Error(std::string("tensor json: non-finite '") + what + "'");
  return v;
}

}  // namespace

nlohmann::json tensor_to_json(const Tensor4& t, TensorFormat format) {
  nlohmann::json j;
  j["d"] = t.dim();
  if (format == TensorFormat::kDense) {
    j["format"] = "dense";
    nlohmann::json coeffs = nlohmann::json::array();
    for (const Complex& z : t.coeffs()) coeffs.push_back({z.real(), z.imag()});
    j["coeffs"] = std::move(coeffs);
    return j;
  }
  j["format"] = "sparse";
  nlohmann::json entries = nlohmann::json::array();
  for (std::size_t lin = 0; lin < t.size(); ++lin) {
    const Complex z = t.coeffs()[lin];
    if (z == Complex{}) continue;
    const Index4 idx = t.delinearize(lin);
    entries.push_back({{"idx", {idx[0] + 1, idx[1] + 1, idx[2] + 1, idx[3] + 1}},
                       {"re", z.real()},
                       {"im", z.imag()}});
  }
  j["entries"] = std::move(entries);
  return j;
}

Tensor4 tensor_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error("tensor json: expected an object");
  if (!j.contains("d") || !j["d"].is_number_integer()) {
    throw Error("tensor json: missing integer 'd'");
  }
  const int d = j["d"].get<int>();
  if (d < 2 || d > 9) throw Error("tensor json: d must lie in 2..9");
  const std::string format = j.value("format", std::string("sparse"));
  const std::size_t n = static_cast<std::size_t>(d) * d * d * d;

  if (format == "dense") {
    if (!j.contains("coeffs") || !j["coeffs"].is_array()) {
      throw Error("tensor json: dense format needs a 'coeffs' array");
    }
    const auto& arr = j["coeffs"];
    if (arr.size() != n) {
      throw Error("tensor json: d=" + std::to_string(d) + " needs " + std::to_string(n) +
                  " coeffs, got " + std::to_string(arr.size()));
    }
    std::vector<Complex> coeffs;
    coeffs.reserve(n);
    for (const auto& pair : arr) {
      if (!pair.is_array() || pair.size() != 2) {
        throw Error("tensor json: dense coeffs must be [re, im] pairs");
      }
      coeffs.emplace_back(finite_number(pair[0], "re"), finite_number(pair[1], "im"));
    }
    return Tensor4(d, std::move(coeffs));
  }
  if (format != "sparse") throw Error("tensor json: unknown format '" + format + "'");

  if (!j.contains("entries") || !j["entries"].is_array()) {
    throw Error("tensor json: sparse format needs an 'entries' array");
  }
  Tensor4 t(d);
  std::set<std::size_t> seen;
  for (const auto& entry : j["entries"]) {
    if (!entry.contains("idx") || !entry["idx"].is_array() || entry["idx"].size() != 4) {
      throw Error("tensor json: each entry needs a 4-element 'idx'");
    }
    Index4 idx{};
    for (std::size_t k = 0; k < 4; ++k) {
      const auto& v = entry["idx"][k];
      if (!v.is_number_integer()) throw Error("tensor json: idx must hold integers");
      const int one_based = v.get<int>();
      if (one_based < 1 || one_based > d) {
        throw Error("tensor json: idx component " + std::to_string(one_based) +
                    " outside 1.." + std::to_string(d));
      }
      idx[k] = one_based - 1;
    }
    const double re = entry.contains("re") ? finite_number(entry["re"], "re") : 0.0;
    const double im = entry.contains("im") ? finite_number(entry["im"], "im") : 0.0;
    if (!seen.insert(t.linear_index(idx)).second) {
      throw Error("tensor json: duplicate entry " + format_label(idx));
    }
    t[idx] = Complex(re, im);
  }
  return t;
}

nlohmann::json load_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error("malformed json in " + path.string() + ": " + e.what());
  }
}

void save_json_file(const nlohmann::json& j, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

void write_json(const Tensor4& t, const std::filesystem::path& path, TensorFormat format) {
  save_json_file(tensor_to_json(t, format), path);
}

Tensor4 read_json(const std::filesystem::path& path) {
  return tensor_from_json(load_json_file(path));
}

}  // namespace ameforge
