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

#include "ripstab/io/config_io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>

namespace ripstab {

using nlohmann::json;

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

// Flat TOML subset: `key = value` lines, # comments, strings, numbers and
// booleans. Enough to mirror the config table.
json parse_flat_toml(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  json out = json::object();
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string text = line;
    // Strip comments outside of strings.
    bool in_string = false;
    for (std::size_t i = 0; i < text.size(); ++i) {
      if (text[i] == '"') in_string = !in_string;
      if (text[i] == '#' && !in_string) {
        text = text.substr(0, i);
        break;
      }
    }
    text = trim(text);
    if (text.empty()) continue;
    auto where = path + ":" + std::to_string(line_no);
    if (text.front() == '[') {
      throw InputError(where + ": table sections are not supported, use flat keys");
    }
    auto eq = text.find('=');
    if (eq == std::string::npos) {
      throw InputError(where + ": expected 'key = value'");
    }
    std::string key = trim(text.substr(0, eq));
    std::string value = trim(text.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw InputError(where + ": expected 'key = value'");
    }
    if (value.front() == '"') {
      if (value.size() < 2 || value.back() != '"') {
        throw InputError(where + ": unterminated string");
      }
      out[key] = value.substr(1, value.size() - 2);
    } else if (value == "true" || value == "false") {
      out[key] = (value == "true");
    } else {
      json num = json::parse(value, nullptr, false);
      if (num.is_discarded() || !(num.is_number())) {
        throw InputError(where + ": cannot parse value '" + value + "'");
      }
      out[key] = num;
    }
  }
  return out;
}

MatchAgainst parse_match_against(const std::string& value) {
  if (value == "raw") return MatchAgainst::kRaw;
  if (value == "stabilized") return MatchAgainst::kStabilized;
  throw InputError("match_against must be 'raw' or 'stabilized', got '" +
                   value + "'");
}

}  // namespace

TcaConfig apply_config_json(const json& overrides, TcaConfig cfg) {
  if (!overrides.is_object()) {
    throw InputError("config must be a table of key/value pairs");
  }
  for (const auto& [key, value] : overrides.items()) {
    if (key == "alpha") cfg.alpha = value.get<double>();
    else if (key == "downsample_factor") cfg.downsample_factor = value.get<int>();
    else if (key == "min_present") cfg.min_present = value.get<int>();
    else if (key == "decay_gamma") cfg.decay_gamma = value.get<double>();
    else if (key == "sigma") cfg.sigma = value.get<double>();
    else if (key == "low") cfg.low = value.get<double>();
    else if (key == "high") cfg.high = value.get<double>();
    else if (key == "dilation_radius") cfg.dilation_radius = value.get<int>();
    else if (key == "iou_gate") cfg.iou_gate = value.get<double>();
    else if (key == "max_absent_frames") cfg.max_absent_frames = value.get<int>();
    else if (key == "match_against")
      cfg.match_against = parse_match_against(value.get<std::string>());
    else if (key == "reset_present_on_absence")
      cfg.reset_present_on_absence = value.get<bool>();
    else if (key == "smooth_in_place") cfg.smooth_in_place = value.get<bool>();
    else throw InputError("unknown config key '" + key + "'");
  }
  cfg.validate();
  return cfg;
}

TcaConfig load_tca_config(const std::string& path, TcaConfig base) {
  json overrides;
  if (path.size() >= 5 && path.substr(path.size() - 5) == ".toml") {
    overrides = parse_flat_toml(path);
  } else {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    overrides = json::parse(in, nullptr, false);
    if (overrides.is_discarded()) throw InputError(path + ": malformed JSON");
  }
  return apply_config_json(overrides, base);
}

json config_to_json(const TcaConfig& cfg) {
  return json{
      {"alpha", cfg.alpha},
      {"downsample_factor", cfg.downsample_factor},
      {"min_present", cfg.min_present},
      {"decay_gamma", cfg.decay_gamma},
      {"sigma", cfg.sigma},
      {"low", cfg.low},
      {"high", cfg.high},
      {"dilation_radius", cfg.dilation_radius},
      {"iou_gate", cfg.iou_gate},
      {"max_absent_frames", cfg.max_absent_frames},
      {"match_against",
       cfg.match_against == MatchAgainst::kRaw ? "raw" : "stabilized"},
      {"reset_present_on_absence", cfg.reset_present_on_absence},
      {"smooth_in_place", cfg.smooth_in_place},
  };
}

}  // namespace ripstab
