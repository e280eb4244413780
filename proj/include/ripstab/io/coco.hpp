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

#ifndef RIPSTAB_IO_COCO_HPP
#define RIPSTAB_IO_COCO_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "ripstab/annotations.hpp"
#include "ripstab/metrics.hpp"

namespace ripstab {

/// COCO-style annotation file: images carry video_id, frame_index and a
/// frame-level provenance flag; annotations carry instance_id and either a
/// polygon segmentation or an uncompressed RLE. Unknown fields are preserved
/// on round-trip because the raw JSON records are kept alongside the parsed
/// view.
struct CocoFile {
  nlohmann::json root;

  struct Frame {
    std::int64_t image_id = 0;
    std::string video_id;
    std::int64_t frame_index = 0;
    FrameGeometry geometry{1, 1};
    Provenance provenance = Provenance::kManual;
    std::vector<AnnotatedInstance> instances;
  };
  std::vector<Frame> frames;  // sorted by (video_id, frame_index)

  static CocoFile load(const std::string& path);

  /// Accepts either a single annotation JSON or a directory of per-frame
  /// JSON files (merged in filename order, ids re-keyed to stay unique).
  static CocoFile load_path(const std::string& path);

  void save(const std::string& path) const;

  /// Keyframes of one video (manual frames only), for densify.
  std::vector<KeyframeAnnotation> keyframes(const std::string& video_id) const;

  /// All video ids in frame order of first appearance.
  std::vector<std::string> video_ids() const;

  /// Frame-aligned view for the metrics module.
  std::vector<FrameGroundTruth> ground_truth() const;

  /// Appends interpolated frames for one video; record layout mirrors the
  /// existing schema.
  void append_interpolated(const std::string& video_id,
                           const FrameGeometry& geometry,
                           const std::vector<DenseAnnotation>& dense);
};

/// Builds an annotation file from scratch (synth output path).
CocoFile make_coco(const std::string& video_id, const FrameGeometry& geometry,
                   const std::vector<DenseAnnotation>& frames);

}  // namespace ripstab

#endif  // RIPSTAB_IO_COCO_HPP
