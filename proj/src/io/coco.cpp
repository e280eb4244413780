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

#include "ripstab/io/coco.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>

#include "ripstab/io/jsonl.hpp"
#include "ripstab/rle.hpp"

namespace ripstab {

using nlohmann::json;

namespace {

Provenance parse_provenance(const json& rec) {
  if (!rec.contains("provenance")) return Provenance::kManual;
  const std::string p = rec.at("provenance").get<std::string>();
  if (p == "manual") return Provenance::kManual;
  if (p == "interpolated") return Provenance::kInterpolated;
  throw InputError("unknown provenance '" + p + "'");
}

const char* provenance_name(Provenance p) {
  return p == Provenance::kManual ? "manual" : "interpolated";
}

}  // namespace

namespace {

CocoFile parse_coco_root(json root, const std::string& path) {
  if (!root.contains("images") || !root.contains("annotations")) {
    throw InputError(path + ": annotation file needs 'images' and 'annotations'");
  }

  CocoFile file;
  file.root = std::move(root);

  std::map<std::int64_t, CocoFile::Frame> by_image_id;
  for (const auto& img : file.root.at("images")) {
    CocoFile::Frame frame;
    frame.image_id = img.at("id").get<std::int64_t>();
    frame.video_id = img.value("video_id", std::string("video"));
    frame.frame_index = img.at("frame_index").get<std::int64_t>();
    frame.geometry =
        FrameGeometry(img.at("width").get<int>(), img.at("height").get<int>());
    frame.provenance = parse_provenance(img);
    if (by_image_id.count(frame.image_id)) {
      throw InputError(path + ": duplicate image id " +
                       std::to_string(frame.image_id));
    }
    by_image_id[frame.image_id] = std::move(frame);
  }

  for (const auto& ann : file.root.at("annotations")) {
    std::int64_t image_id = ann.at("image_id").get<std::int64_t>();
    auto it = by_image_id.find(image_id);
    if (it == by_image_id.end()) {
      throw InputError(path + ": annotation references unknown image id " +
                       std::to_string(image_id));
    }
    CocoFile::Frame& frame = it->second;
    const std::string context = path + " image " + std::to_string(image_id);
    AnnotatedInstance inst;
    inst.instance_id = ann.value("instance_id", std::int64_t{0});
    inst.mask =
        mask_from_json(ann.at("segmentation"), frame.geometry, context);
    frame.instances.push_back(std::move(inst));
  }

  for (auto& [id, frame] : by_image_id) file.frames.push_back(std::move(frame));
  std::sort(file.frames.begin(), file.frames.end(),
            [](const CocoFile::Frame& a, const CocoFile::Frame& b) {
              return std::tie(a.video_id, a.frame_index) <
                     std::tie(b.video_id, b.frame_index);
            });
  for (std::size_t i = 1; i < file.frames.size(); ++i) {
    const CocoFile::Frame& a = file.frames[i - 1];
    const CocoFile::Frame& b = file.frames[i];
    if (a.video_id == b.video_id && a.frame_index == b.frame_index) {
      throw InputError(path + ": duplicate frame " +
                       std::to_string(a.frame_index) + " for video '" +
                       a.video_id + "'");
    }
    if (a.video_id == b.video_id && a.geometry != b.geometry) {
      throw InputError(path + ": video '" + a.video_id +
                       "' mixes frame geometries " + a.geometry.str() +
                       " and " + b.geometry.str());
    }
  }
  return file;
}

}  // namespace

CocoFile CocoFile::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  json root = json::parse(in, nullptr, false);
  if (root.is_discarded()) throw InputError(path + ": malformed JSON");
  return parse_coco_root(std::move(root), path);
}

CocoFile CocoFile::load_path(const std::string& path) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(path)) return load(path);

  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(path)) {
    if (entry.path().extension() == ".json") files.push_back(entry.path());
  }
  if (files.empty()) {
    throw InputError(path + ": no .json annotation files in directory");
  }
  std::sort(files.begin(), files.end());

  // Merge per-frame documents into one, re-keying ids so files may reuse
  // local numbering.
  json merged;
  std::int64_t next_image = 1;
  std::int64_t next_ann = 1;
  for (const fs::path& file : files) {
    std::ifstream in(file);
    if (!in) throw InputError("cannot open " + file.string());
    json doc = json::parse(in, nullptr, false);
    if (doc.is_discarded()) {
      throw InputError(file.string() + ": malformed JSON");
    }
    if (!doc.contains("images") || !doc.contains("annotations")) {
      throw InputError(file.string() +
                       ": annotation file needs 'images' and 'annotations'");
    }
    if (merged.is_null()) {
      merged = doc;
      merged["images"] = json::array();
      merged["annotations"] = json::array();
    }
    std::map<std::int64_t, std::int64_t> id_map;
    for (json img : doc.at("images")) {
      id_map[img.at("id").get<std::int64_t>()] = next_image;
      img["id"] = next_image++;
      merged["images"].push_back(std::move(img));
    }
    for (json ann : doc.at("annotations")) {
      auto it = id_map.find(ann.at("image_id").get<std::int64_t>());
      if (it == id_map.end()) {
        throw InputError(file.string() +
                         ": annotation references an image from another file");
      }
      ann["image_id"] = it->second;
      ann["id"] = next_ann++;
      merged["annotations"].push_back(std::move(ann));
    }
  }

  return parse_coco_root(std::move(merged), path);
}

void CocoFile::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw InputError("cannot open " + path + " for writing");
  out << root.dump(2) << "\n";
  if (!out) throw InputError("write failed for " + path);
}

std::vector<KeyframeAnnotation> CocoFile::keyframes(
    const std::string& video_id) const {
  std::vector<KeyframeAnnotation> result;
  for (const Frame& frame : frames) {
    if (frame.video_id != video_id) continue;
    if (frame.provenance != Provenance::kManual) continue;
    KeyframeAnnotation kf;
    kf.frame_index = frame.frame_index;
    kf.instances = frame.instances;
    result.push_back(std::move(kf));
  }
  return result;
}

std::vector<std::string> CocoFile::video_ids() const {
  std::vector<std::string> ids;
  for (const Frame& frame : frames) {
    if (std::find(ids.begin(), ids.end(), frame.video_id) == ids.end()) {
      ids.push_back(frame.video_id);
    }
  }
  return ids;
}

std::vector<FrameGroundTruth> CocoFile::ground_truth() const {
  std::vector<FrameGroundTruth> gts;
  gts.reserve(frames.size());
  for (const Frame& frame : frames) {
    FrameGroundTruth gt;
    gt.video_id = frame.video_id;
    gt.frame_index = frame.frame_index;
    gt.manual = frame.provenance == Provenance::kManual;
    for (const auto& inst : frame.instances) gt.instances.push_back(inst.mask);
    gts.push_back(std::move(gt));
  }
  return gts;
}

namespace {

std::int64_t max_id(const json& records) {
  std::int64_t m = 0;
  for (const auto& rec : records) {
    if (rec.contains("id")) m = std::max(m, rec.at("id").get<std::int64_t>());
  }
  return m;
}

}  // namespace

void CocoFile::append_interpolated(const std::string& video_id,
                                   const FrameGeometry& geometry,
                                   const std::vector<DenseAnnotation>& dense) {
  std::int64_t next_image = max_id(root.at("images")) + 1;
  std::int64_t next_ann = max_id(root.at("annotations")) + 1;
  for (const DenseAnnotation& frame : dense) {
    if (frame.provenance != Provenance::kInterpolated) continue;
    json img{{"id", next_image},
             {"video_id", video_id},
             {"frame_index", frame.frame_index},
             {"width", geometry.width},
             {"height", geometry.height},
             {"provenance", provenance_name(frame.provenance)}};
    root["images"].push_back(img);

    Frame view;
    view.image_id = next_image;
    view.video_id = video_id;
    view.frame_index = frame.frame_index;
    view.geometry = geometry;
    view.provenance = frame.provenance;
    for (const AnnotatedInstance& inst : frame.instances) {
      json ann{{"id", next_ann++},
               {"image_id", next_image},
               {"category_id", 1},
               {"instance_id", inst.instance_id},
               {"segmentation", mask_to_json(inst.mask)},
               {"area", inst.mask.area()},
               {"provenance", provenance_name(frame.provenance)}};
      root["annotations"].push_back(std::move(ann));
      view.instances.push_back(inst);
    }
    frames.push_back(std::move(view));
    ++next_image;
  }
  std::sort(frames.begin(), frames.end(), [](const Frame& a, const Frame& b) {
    return std::tie(a.video_id, a.frame_index) <
           std::tie(b.video_id, b.frame_index);
  });
}

CocoFile make_coco(const std::string& video_id, const FrameGeometry& geometry,
                   const std::vector<DenseAnnotation>& frames) {
  CocoFile file;
  file.root = json{{"images", json::array()},
                   {"annotations", json::array()},
                   {"categories",
                    json::array({json{{"id", 1}, {"name", "rip_current"}}})}};
  std::int64_t next_image = 1;
  std::int64_t next_ann = 1;
  for (const DenseAnnotation& frame : frames) {
    json img{{"id", next_image},
             {"video_id", video_id},
             {"frame_index", frame.frame_index},
             {"width", geometry.width},
             {"height", geometry.height},
             {"provenance", provenance_name(frame.provenance)}};
    file.root["images"].push_back(img);

    CocoFile::Frame view;
    view.image_id = next_image;
    view.video_id = video_id;
    view.frame_index = frame.frame_index;
    view.geometry = geometry;
    view.provenance = frame.provenance;
    for (const AnnotatedInstance& inst : frame.instances) {
      json ann{{"id", next_ann++},
               {"image_id", next_image},
               {"category_id", 1},
               {"instance_id", inst.instance_id},
               {"segmentation", mask_to_json(inst.mask)},
               {"area", inst.mask.area()},
               {"provenance", provenance_name(frame.provenance)}};
      file.root["annotations"].push_back(std::move(ann));
      view.instances.push_back(inst);
    }
    file.frames.push_back(std::move(view));
    ++next_image;
  }
  return file;
}

}  // namespace ripstab
