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

#include "ripstab/io/jsonl.hpp"

#include "ripstab/polygon.hpp"
#include "ripstab/rle.hpp"

namespace ripstab {

using nlohmann::json;

BinaryMask mask_from_json(const json& payload,
                          std::optional<FrameGeometry> geometry,
                          const std::string& context) {
  if (payload.is_object()) {
    // RLE: {"size": [h, w], "counts": [...]}
    if (!payload.contains("size") || !payload.contains("counts")) {
      throw InputError(context + ": RLE object needs 'size' and 'counts'");
    }
    const auto& size = payload.at("size");
    if (!size.is_array() || size.size() != 2) {
      throw InputError(context + ": RLE 'size' must be [height, width]");
    }
    Rle rle;
    rle.geometry = FrameGeometry(size.at(1).get<int>(), size.at(0).get<int>());
    rle.counts = payload.at("counts").get<std::vector<std::int64_t>>();
    if (geometry && rle.geometry != *geometry) {
      throw InputError(context + ": mask geometry " + rle.geometry.str() +
                       " does not match expected " + geometry->str());
    }
    return rle_decode(rle, context);
  }
  if (payload.is_array()) {
    if (!geometry) {
      throw InputError(context +
                       ": polygon mask needs a frame geometry (add "
                       "width/height fields or pass --width/--height)");
    }
    // Flat ring or list of flat rings; multiple rings are unioned.
    std::vector<std::vector<double>> rings;
    if (!payload.empty() && payload.front().is_array()) {
      for (const auto& ring : payload) {
        rings.push_back(ring.get<std::vector<double>>());
      }
    } else {
      rings.push_back(payload.get<std::vector<double>>());
    }
    BinaryMask acc(*geometry);
    for (const auto& flat : rings) {
      BinaryMask part = rasterize(Polygon::from_flat(flat, *geometry), *geometry);
      for (std::size_t i = 0; i < acc.bits().size(); ++i) {
        acc.bits()[i] |= part.bits()[i];
      }
    }
    return acc;
  }
  throw InputError(context + ": mask must be an RLE object or a polygon list");
}

json mask_to_json(const BinaryMask& mask) {
  Rle rle = rle_encode(mask);
  return json{{"size", {mask.height(), mask.width()}}, {"counts", rle.counts}};
}

JsonlReader::JsonlReader(const std::string& path,
                         std::optional<FrameGeometry> default_geometry)
    : in_(path), path_(path), default_geometry_(default_geometry) {
  if (!in_) throw InputError("cannot open " + path);
}

std::optional<json> JsonlReader::read_record() {
  if (pending_) {
    auto rec = std::move(*pending_);
    pending_.reset();
    return rec;
  }
  std::string line;
  while (std::getline(in_, line)) {
    ++line_no_;
    if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
    json rec = json::parse(line, nullptr, false);
    if (rec.is_discarded()) {
      throw InputError(path_ + ":" + std::to_string(line_no_) +
                       ": malformed JSON line");
    }
    if (!rec.contains("video_id") || !rec.contains("frame_index")) {
      throw InputError(path_ + ":" + std::to_string(line_no_) +
                       ": line needs 'video_id' and 'frame_index'");
    }
    return rec;
  }
  return std::nullopt;
}

std::optional<FrameDetections> JsonlReader::next() {
  auto first = read_record();
  if (!first) return std::nullopt;

  FrameDetections frame;
  frame.video_id = first->at("video_id").get<std::string>();
  frame.frame_index = first->at("frame_index").get<std::int64_t>();

  auto it = last_frame_.find(frame.video_id);
  if (it != last_frame_.end() && frame.frame_index < it->second) {
    throw InputError(path_ + ":" + std::to_string(line_no_) +
                     ": frame_index " + std::to_string(frame.frame_index) +
                     " decreases for video '" + frame.video_id + "'");
  }

  json rec = std::move(*first);
  while (true) {
    if (rec.contains("instance") && !rec.at("instance").is_null()) {
      const json& inst = rec.at("instance");
      const std::string context = path_ + ":" + std::to_string(line_no_) +
                                  " (video '" + frame.video_id + "' frame " +
                                  std::to_string(frame.frame_index) + ")";
      if (!inst.contains("score") || !inst.contains("mask")) {
        throw InputError(context + ": instance needs 'score' and 'mask'");
      }
      std::optional<FrameGeometry> geometry = default_geometry_;
      if (rec.contains("width") && rec.contains("height")) {
        geometry = FrameGeometry(rec.at("width").get<int>(),
                                 rec.at("height").get<int>());
      }
      Detection det;
      det.score = inst.at("score").get<double>();
      det.mask = mask_from_json(inst.at("mask"), geometry, context);
      if (inst.contains("track_id") && !inst.at("track_id").is_null()) {
        det.track_id = inst.at("track_id").get<std::int64_t>();
      }
      frame.instances.push_back(std::move(det));
    }
    auto next_rec = read_record();
    if (!next_rec) break;
    if (next_rec->at("video_id").get<std::string>() != frame.video_id ||
        next_rec->at("frame_index").get<std::int64_t>() != frame.frame_index) {
      pending_ = std::move(next_rec);
      break;
    }
    rec = std::move(*next_rec);
  }

  last_frame_[frame.video_id] = frame.frame_index;
  return frame;
}

JsonlWriter::JsonlWriter(const std::string& path) : out_(path), path_(path) {
  if (!out_) throw InputError("cannot open " + path + " for writing");
}

void JsonlWriter::write_instance(const std::string& video_id,
                                 std::int64_t frame_index, double score,
                                 const BinaryMask& mask,
                                 std::optional<std::int64_t> track_id) {
  json inst{{"score", score}, {"mask", mask_to_json(mask)}};
  if (track_id) inst["track_id"] = *track_id;
  json rec{{"video_id", video_id},
           {"frame_index", frame_index},
           {"instance", std::move(inst)}};
  out_ << rec.dump() << "\n";
  if (!out_) throw InputError("write failed for " + path_);
}

void JsonlWriter::close() {
  out_.flush();
  out_.close();
}

}  // namespace ripstab
