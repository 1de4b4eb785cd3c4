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


#ifndef AMEFORGE_TENSOR_IO_H_
#define AMEFORGE_TENSOR_IO_H_

#include <filesystem>

#include <nlohmann/json.hpp>

#include "ameforge/tensor.h"

namespace ameforge {

enum class TensorFormat { kSparse, kDense };

// Sparse:  {"d": 3, "format": "sparse",
//           "entries": [{"idx": [1,1,2,3], "re": 1.0, "im": 0.0}, ...]}
// Dense:   {"d": 3, "format": "dense", "coeffs": [[re, im], ...]}
// idx is 1-based; dense coeffs follow the a-major linearization.
nlohmann::json tensor_to_json(const Tensor4& t, TensorFormat format = TensorFormat::kSparse);
Tensor4 tensor_from_json(const nlohmann::json& j);

void write_json(const Tensor4& t, const std::filesystem::path& path,
                TensorFormat format = TensorFormat::kSparse);
Tensor4 read_json(const std::filesystem::path& path);

/// Reads a whole JSON document; throws Error on I/O or parse failure.
nlohmann::json load_json_file(const std::filesystem::path& path);
/// Writes `j` with two-space indentation and a trailing newline.
void save_json_file(const nlohmann::json& j, const std::filesystem::path& path);

}  // namespace ameforge

#endif  // AMEFORGE_TENSOR_IO_H_
