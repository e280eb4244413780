// Copyright 2026 The RipStab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef RIPSTAB_IO_SCENARIO_IO_HPP
#define RIPSTAB_IO_SCENARIO_IO_HPP

#include <string>

#include <json.hpp>

#include "ripstab/synth.hpp"

namespace ripstab {

/// Parses a ScenarioSpec from its JSON form. Unknown keys are hard errors.
ScenarioSpec scenario_from_json(const nlohmann::json& doc);
ScenarioSpec load_scenario(const std::string& path);

nlohmann::json scenario_to_json(const ScenarioSpec& spec);

}  // namespace ripstab

#endif  // RIPSTAB_IO_SCENARIO_IO_HPP
