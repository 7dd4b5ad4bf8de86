// Copyright 2026 The lmimd Authors
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

// JSON scenario documents. See docs/scenario-format.md for the schema.

#ifndef LMIMD_SCENARIO_JSON_H_
#define LMIMD_SCENARIO_JSON_H_

#include <filesystem>
#include <string>
#include <string_view>

#include "lmimd/scenario.h"

namespace lmimd {

// Throws ParseError naming the line/column (syntax) or field path (schema).
// The result is not validated; call Validate() on it.
Scenario ParseScenario(std::string_view text);
Scenario LoadScenario(const std::filesystem::path& file);

// Canonical document: every field explicit, capacities as step lists.
std::string EmitScenario(const Scenario& scenario);

}  // namespace lmimd

#endif  // LMIMD_SCENARIO_JSON_H_
