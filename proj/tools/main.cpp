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

#include <CLI11.hpp>

#include "commands.hpp"
#include "ripstab/errors.hpp"
#include "ripstab/log.hpp"
#include "ripstab/version.hpp"

int main(int argc, char** argv) {
  using namespace ripstab;
  using namespace ripstab::cli;

  CLI::App app{"Temporal confidence aggregation and evaluation for video "
               "instance segmentation streams"};
  app.set_version_flag("--version", RIPSTAB_VERSION);
  app.require_subcommand(1);

  std::string log_level = "warn";
  int jobs = 1;
  app.add_option("--log-level", log_level, "debug|info|warn|error|off")
      ->envname("RIPSTAB_LOG_LEVEL");
  app.add_option("--jobs", jobs, "parallel videos (tca, eval)")
      ->envname("RIPSTAB_JOBS")
      ->check(CLI::PositiveNumber);

  TcaArgs tca;
  auto* tca_cmd = app.add_subcommand(
      "tca", "stabilize a prediction stream with temporal aggregation");
  tca_cmd->add_option("--in", tca.input, "prediction JSONL")->required();
  tca_cmd->add_option("--out", tca.output, "stabilized JSONL")->required();
  tca_cmd->add_option("--config", tca.config_path, "TcaConfig JSON or TOML");
  tca_cmd->add_option("--preset", tca.preset,
                      "fast-gain-fast-decay|slow-gain-slow-decay|"
                      "fast-gain-slow-decay");
  tca_cmd->add_option("--manifest", tca.manifest_path,
                      "run manifest path (default <out>.manifest.json)");
  tca_cmd->add_option("--width", tca.width, "frame width for polygon masks");
  tca_cmd->add_option("--height", tca.height, "frame height for polygon masks");

  EvalArgs eval;
  auto* eval_cmd =
      app.add_subcommand("eval", "score a prediction stream against ground truth");
  eval_cmd->add_option("--pred", eval.pred_path, "prediction JSONL");
  eval_cmd->add_option("--gt", eval.gt_path, "annotation JSON");
  eval_cmd->add_option("--report", eval.report_path, "report JSON path");
  eval_cmd->add_option("--csv", eval.csv_path, "per-video CSV path");
  eval_cmd->add_option("--iou-thresh", eval.iou_threshold, "match IoU threshold");
  eval_cmd->add_option("--score-thresh", eval.score_threshold,
                       "operating point for precision/recall");
  eval_cmd->add_flag("--coco-interp", eval.coco_interp,
                     "101-point interpolated AP instead of the raw sum");
  eval_cmd->add_option("--fbeta-only", eval.fbeta_only_path,
                       "CSV of label,precision,recall rows; compute F1/F2 only");
  eval_cmd->add_option("--width", eval.width, "frame width for polygon masks");
  eval_cmd->add_option("--height", eval.height, "frame height for polygon masks");

  InterpolateArgs interp;
  auto* interp_cmd = app.add_subcommand(
      "interpolate", "densify keyframe annotations to every frame");
  interp_cmd->add_option("--in", interp.input, "annotation JSON")->required();
  interp_cmd->add_option("--out", interp.output, "output annotation JSON")
      ->required();
  interp_cmd->add_option("--fps-policy", interp.fps_policy,
                         "interpolation schedule (linear)");

  SynthArgs synth;
  auto* synth_cmd =
      app.add_subcommand("synth", "generate a synthetic detection stream");
  synth_cmd->add_option("--spec", synth.spec_path, "scenario spec JSON")
      ->required();
  synth_cmd->add_option("--out-det", synth.out_detections, "detections JSONL")
      ->required();
  synth_cmd->add_option("--out-gt", synth.out_ground_truth, "ground-truth JSON")
      ->required();
  synth_cmd->add_option("--png-dir", synth.png_dir,
                        "also write per-frame PNG masks here");

  BenchArgs bench;
  auto* bench_cmd =
      app.add_subcommand("bench", "measure TCA throughput on a stream");
  bench_cmd->add_option("--in", bench.input, "prediction JSONL")->required();
  bench_cmd->add_option("--config", bench.config_path, "TcaConfig JSON or TOML");
  bench_cmd->add_option("--preset", bench.preset, "named config preset");
  bench_cmd->add_option("--passes", bench.passes, "timing passes (median)")
      ->check(CLI::PositiveNumber);
  bench_cmd->add_option("--out", bench.out_path, "manifest JSON path");
  bench_cmd->add_option("--width", bench.width, "frame width for polygon masks");
  bench_cmd->add_option("--height", bench.height, "frame height for polygon masks");

  CLI11_PARSE(app, argc, argv);

  try {
    set_log_level(parse_log_level(log_level));
    tca.jobs = jobs;
    eval.jobs = jobs;
    if (tca_cmd->parsed()) return cmd_tca(tca);
    if (eval_cmd->parsed()) return cmd_eval(eval);
    if (interp_cmd->parsed()) return cmd_interpolate(interp);
    if (synth_cmd->parsed()) return cmd_synth(synth);
    if (bench_cmd->parsed()) return cmd_bench(bench);
  } catch (const InputError& e) {
    log_error(e.what());
    return 1;
  } catch (const InternalError& e) {
    log_error(std::string("internal invariant violated: ") + e.what());
    return 2;
  } catch (const std::exception& e) {
    log_error(e.what());
    return 2;
  }
  return 0;
}
