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

#include "ripstab/io/scenario_io.hpp"

#include <fstream>

namespace ripstab {

using nlohmann::json;

namespace {

void reject_unknown(const json& obj, std::initializer_list<const char*> known,
                    const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    bool ok = false;
    for (const char* k : known) {
      if (key == k) {
        ok = true;
        break;
      }
    }
    if (!ok) throw InputError(where + ": unknown key '" + key + "'");
  }
}

}  // namespace

ScenarioSpec scenario_from_json(const json& doc) {
  if (!doc.is_object()) throw InputError("scenario spec must be a JSON object");
  reject_unknown(doc,
                 {"seed", "video_id", "width", "height", "num_frames", "blobs",
                  "noise", "camera"},
                 "scenario");
  ScenarioSpec spec;
  spec.seed = doc.value("seed", std::uint64_t{0});
  spec.video_id = doc.value("video_id", std::string("synthetic"));
  spec.geometry = FrameGeometry(doc.value("width", 256), doc.value("height", 256));
  spec.num_frames = doc.value("num_frames", std::int64_t{0});

  for (const auto& b : doc.value("blobs", json::array())) {
    reject_unknown(b, {"trajectory", "base_radius", "deform_amplitude", "score"},
                   "blob");
    BlobSpec blob;
    for (const auto& w : b.value("trajectory", json::array())) {
      reject_unknown(w, {"frame", "x", "y"}, "waypoint");
      blob.trajectory.push_back({w.at("frame").get<std::int64_t>(),
                                 w.at("x").get<double>(),
                                 w.at("y").get<double>()});
    }
    if (blob.trajectory.empty()) {
      throw InputError("blob needs at least one trajectory waypoint");
    }
    blob.base_radius = b.value("base_radius", 20.0);
    blob.deform_amplitude = b.value("deform_amplitude", 0.1);
    blob.score = b.value("score", 0.9);
    spec.blobs.push_back(std::move(blob));
  }

  if (doc.contains("noise")) {
    const json& n = doc.at("noise");
    reject_unknown(n,
                   {"drop_prob", "drop_bursts", "spurious_rate",
                    "spurious_lifetime", "spurious_margin_px", "jitter_px",
                    "score_noise"},
                   "noise");
    spec.noise.drop_prob = n.value("drop_prob", 0.0);
    for (const auto& b : n.value("drop_bursts", json::array())) {
      if (!b.is_array() || b.size() != 2) {
        throw InputError("drop_bursts entries must be [start, length]");
      }
      spec.noise.drop_bursts.push_back(
          {b.at(0).get<std::int64_t>(), b.at(1).get<std::int64_t>()});
    }
    spec.noise.spurious_rate = n.value("spurious_rate", 0.0);
    spec.noise.spurious_lifetime = n.value("spurious_lifetime", std::int64_t{1});
    spec.noise.spurious_margin_px = n.value("spurious_margin_px", 0.0);
    spec.noise.jitter_px = n.value("jitter_px", 0.0);
    spec.noise.score_noise = n.value("score_noise", 0.0);
  }

  if (doc.contains("camera")) {
    const json& c = doc.at("camera");
    reject_unknown(c, {"pan_vx", "pan_vy"}, "camera");
    spec.camera.pan_vx = c.value("pan_vx", 0.0);
    spec.camera.pan_vy = c.value("pan_vy", 0.0);
  }
  return spec;
}

ScenarioSpec load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  json doc = json::parse(in, nullptr, false);
  if (doc.is_discarded()) throw InputError(path + ": malformed JSON");
  return scenario_from_json(doc);
}

json scenario_to_json(const ScenarioSpec& spec) {
  json blobs = json::array();
  for (const auto& b : spec.blobs) {
    json waypoints = json::array();
    for (const auto& w : b.trajectory) {
      waypoints.push_back({{"frame", w.frame}, {"x", w.x}, {"y", w.y}});
    }
    blobs.push_back({{"trajectory", waypoints},
                     {"base_radius", b.base_radius},
                     {"deform_amplitude", b.deform_amplitude},
                     {"score", b.score}});
  }
  json bursts = json::array();
  for (const auto& b : spec.noise.drop_bursts) {
    bursts.push_back({b.start, b.length});
  }
  return json{
      {"seed", spec.seed},
      {"video_id", spec.video_id},
      {"width", spec.geometry.width},
      {"height", spec.geometry.height},
      {"num_frames", spec.num_frames},
      {"blobs", blobs},
      {"noise",
       {{"drop_prob", spec.noise.drop_prob},
        {"drop_bursts", bursts},
        {"spurious_rate", spec.noise.spurious_rate},
        {"spurious_lifetime", spec.noise.spurious_lifetime},
        {"spurious_margin_px", spec.noise.spurious_margin_px},
        {"jitter_px", spec.noise.jitter_px},
        {"score_noise", spec.noise.score_noise}}},
      {"camera", {{"pan_vx", spec.camera.pan_vx}, {"pan_vy", spec.camera.pan_vy}}},
  };
}

}  // namespace ripstab
