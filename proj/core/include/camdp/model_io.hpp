// Copyright 2026 The camdp Authors
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

// Model file format (JSON):
//
//   {
//     "dims": {"ns0": 2, "nss": 2, "ns1": 2, "na0": 2, "na1": 2},
//     "p0": [a0][s0][s0'],      "r0": [a0][s0][s0'],
//     "ps": [a0][a1][ss][ss'],  "rs": [a0][a1][ss][ss'],
//     "p1": [a1][s1][s1'],      "r1": [a1][s1][s1']
//   }
//
// Extra top-level keys (e.g. "name", "generator") are ignored on load.

#include <filesystem>
#include <string>

#include "camdp/model.hpp"

namespace camdp {

/// Parses and validates a model document. Rows within kRowSumTolerance are
/// renormalized once. Throws ValidationError on malformed or invalid input.
FactoredCamdp parse_model(const std::string& text);
FactoredCamdp load_model(const std::filesystem::path& path);

/// `extra_json` must be empty or a JSON object whose members are merged into
/// the top level (used to stamp provenance such as generator name and seed).
std::string model_to_json(const FactoredCamdp& model,
                          const std::string& extra_json = {});
void save_model(const FactoredCamdp& model, const std::filesystem::path& path,
                const std::string& extra_json = {});

}  // namespace camdp
