// Copyright 2026 The Filtrate Authors
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

#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "filtrate/ensemble.hpp"

namespace filtrate {

/// JSON documents for CLI output; insertion order is preserved so repeated
/// runs emit byte-identical text.
using Json = nlohmann::ordered_json;

/// "%.17g": every double round-trips exactly.
std::string format17(double value);

/// Serializes with 17-significant-digit floats: objects one key per line,
/// arrays compact. No trailing newline.
std::string dump17(const Json &doc);

Json complex_json(const Cplx &value);    // [re, im]
Json vector_json(const CVector &v);      // [[re,im], ...]
Json matrix_json(const CMatrix &m);      // [[[re,im], ...], ...]

}  // namespace filtrate
