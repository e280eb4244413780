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

#ifndef RIPSTAB_IO_CONFIG_IO_HPP
#define RIPSTAB_IO_CONFIG_IO_HPP

#include <string>

#include <json.hpp>

#include "ripstab/tca.hpp"

namespace ripstab {

/// Loads a TcaConfig from a JSON or flat TOML file (decided by extension,
/// ".toml" vs anything else). Keys mirror the config fields one for one;
/// unknown keys are hard errors. Missing keys keep the values of `base`.
TcaConfig load_tca_config(const std::string& path, TcaConfig base = {});

/// Applies JSON key/value pairs onto a config; same key rules as the file
/// loader.
TcaConfig apply_config_json(const nlohmann::json& overrides, TcaConfig base);

/// Full field-for-field snapshot, the inverse of apply_config_json.
nlohmann::json config_to_json(const TcaConfig& cfg);

}  // namespace ripstab

#endif  // RIPSTAB_IO_CONFIG_IO_HPP
