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

#ifndef RIPSTAB_TOOLS_COMMANDS_HPP
#define RIPSTAB_TOOLS_COMMANDS_HPP

#include <optional>
#include <string>

#include "ripstab/geometry.hpp"
#include "ripstab/tca.hpp"

namespace ripstab::cli {

struct TcaArgs {
  std::string input;
  std::string output;
  std::string config_path;
  std::string preset;
  std::string manifest_path;  // default: <output>.manifest.json
  int width = 0;
  int height = 0;
  int jobs = 1;
};

struct EvalArgs {
  std::string pred_path;
  std::string gt_path;
  std::string report_path;
  std::string csv_path;
  std::string fbeta_only_path;
  double iou_threshold = 0.5;
  double score_threshold = 0.5;
  bool coco_interp = false;
  int width = 0;
  int height = 0;
  int jobs = 1;
};

struct InterpolateArgs {
  std::string input;
  std::string output;
  std::string fps_policy = "linear";
};

struct SynthArgs {
  std::string spec_path;
  std::string out_detections;
  std::string out_ground_truth;
  std::string png_dir;
};

struct BenchArgs {
  std::string input;
  std::string config_path;
  std::string preset;
  std::string out_path;
  int passes = 3;
  int width = 0;
  int height = 0;
};

TcaConfig resolve_config(const std::string& preset, const std::string& config_path);
std::optional<FrameGeometry> optional_geometry(int width, int height);

int cmd_tca(const TcaArgs& args);
int cmd_eval(const EvalArgs& args);
int cmd_interpolate(const InterpolateArgs& args);
int cmd_synth(const SynthArgs& args);
int cmd_bench(const BenchArgs& args);

}  // namespace ripstab::cli

#endif  // RIPSTAB_TOOLS_COMMANDS_HPP
