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

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "commands.hpp"
#include "ripstab/io/jsonl.hpp"
#include "ripstab/io/png_io.hpp"
#include "ripstab/io/scenario_io.hpp"
#include "ripstab/log.hpp"
#include "ripstab/synth.hpp"

namespace ripstab::cli {

namespace fs = std::filesystem;
using nlohmann::json;

int cmd_synth(const SynthArgs& args) {
  const ScenarioSpec spec = load_scenario(args.spec_path);
  JsonlWriter det_writer(args.out_detections);

  // Ground truth goes straight into the annotation JSON, one RLE per
  // instance, so full-resolution masks never accumulate in memory.
  json images = json::array();
  json annotations = json::array();
  std::int64_t next_ann = 1;

  if (!args.png_dir.empty()) fs::create_directories(args.png_dir);

  generate(spec, [&](SynthFrame&& frame) {
    for (const Detection& det : frame.detections.instances) {
      det_writer.write_instance(spec.video_id, frame.frame_index, det.score,
                                det.mask, std::nullopt);
    }
    const std::int64_t image_id = frame.frame_index + 1;
    images.push_back({{"id", image_id},
                      {"video_id", spec.video_id},
                      {"frame_index", frame.frame_index},
                      {"width", spec.geometry.width},
                      {"height", spec.geometry.height},
                      {"provenance", "manual"}});
    for (const AnnotatedInstance& inst : frame.ground_truth.instances) {
      annotations.push_back({{"id", next_ann++},
                             {"image_id", image_id},
                             {"category_id", 1},
                             {"instance_id", inst.instance_id},
                             {"segmentation", mask_to_json(inst.mask)},
                             {"area", inst.mask.area()},
                             {"provenance", "manual"}});
    }
    if (!args.png_dir.empty()) {
      char name[64];
      for (std::size_t i = 0; i < frame.ground_truth.instances.size(); ++i) {
        std::snprintf(name, sizeof(name), "gt_frame%06lld_inst%zu.png",
                      static_cast<long long>(frame.frame_index), i);
        write_mask_png(frame.ground_truth.instances[i].mask,
                       (fs::path(args.png_dir) / name).string());
      }
      for (std::size_t i = 0; i < frame.detections.instances.size(); ++i) {
        std::snprintf(name, sizeof(name), "det_frame%06lld_inst%zu.png",
                      static_cast<long long>(frame.frame_index), i);
        write_mask_png(frame.detections.instances[i].mask,
                       (fs::path(args.png_dir) / name).string());
      }
    }
  });
  det_writer.close();

  json root{{"images", std::move(images)},
            {"annotations", std::move(annotations)},
            {"categories", json::array({json{{"id", 1}, {"name", "rip_current"}}})}};
  std::ofstream out(args.out_ground_truth);
  if (!out) {
    throw InputError("cannot open " + args.out_ground_truth + " for writing");
  }
  out << root.dump(2) << "\n";
  if (!out) throw InputError("write failed for " + args.out_ground_truth);

  log_info("synth: " + std::to_string(spec.num_frames) + " frames -> " +
           args.out_detections + ", " + args.out_ground_truth);
  return 0;
}

}  // namespace ripstab::cli
