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

#include "commands.hpp"
#include "ripstab/annotations.hpp"
#include "ripstab/io/coco.hpp"
#include "ripstab/log.hpp"

namespace ripstab::cli {

int cmd_interpolate(const InterpolateArgs& args) {
  if (args.fps_policy != "linear") {
    throw InputError("unknown fps policy '" + args.fps_policy +
                     "', only 'linear' is available");
  }
  CocoFile file = CocoFile::load_path(args.input);
  std::int64_t added = 0;
  for (const std::string& video : file.video_ids()) {
    std::vector<KeyframeAnnotation> keyframes = file.keyframes(video);
    if (keyframes.size() < 2) continue;
    FrameGeometry geometry{1, 1};
    for (const auto& frame : file.frames) {
      if (frame.video_id == video) {
        geometry = frame.geometry;
        break;
      }
    }
    std::vector<DenseAnnotation> dense = densify(keyframes);
    for (const auto& d : dense) {
      if (d.provenance == Provenance::kInterpolated) ++added;
    }
    file.append_interpolated(video, geometry, dense);
  }
  file.save(args.output);
  log_info("interpolate: added " + std::to_string(added) +
           " interpolated frames -> " + args.output);
  return 0;
}

}  // namespace ripstab::cli
