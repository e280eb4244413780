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
#include <fstream>
#include <set>
#include <sstream>

#include "commands.hpp"
#include "ripstab/io/coco.hpp"
#include "ripstab/io/jsonl.hpp"
#include "ripstab/io/manifest.hpp"
#include "ripstab/log.hpp"
#include "ripstab/metrics.hpp"

namespace ripstab::cli {

namespace {

using nlohmann::json;

json metrics_to_json(const VideoMetrics& m) {
  return json{{"precision", m.precision},
              {"recall", m.recall},
              {"ap50", m.ap50},
              {"f1", m.f1},
              {"f2", m.f2},
              {"frames_evaluated", m.frames_evaluated},
              {"tp", m.tp},
              {"fp", m.fp},
              {"fn", m.fn}};
}

void print_table(const EvalReport& report) {
  std::printf("%-16s %9s %9s %9s %9s %9s %8s\n", "video", "precision",
              "recall", "ap50", "f1", "f2", "frames");
  auto row = [](const std::string& name, const VideoMetrics& m) {
    std::printf("%-16s %9.4f %9.4f %9.4f %9.4f %9.4f %8lld\n", name.c_str(),
                m.precision, m.recall, m.ap50, m.f1, m.f2,
                static_cast<long long>(m.frames_evaluated));
  };
  for (const auto& [video, m] : report.per_video) row(video, m);
  row("(aggregate)", report.aggregate);
  std::printf("fps: %.2f\n", report.fps);
}

int run_fbeta_only(const EvalArgs& args) {
  std::ifstream in(args.fbeta_only_path);
  if (!in) throw InputError("cannot open " + args.fbeta_only_path);
  json rows = json::array();
  std::printf("%-24s %9s %9s %9s %9s\n", "label", "precision", "recall", "f1",
              "f2");
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
    std::stringstream ss(line);
    std::string label, p_str, r_str;
    if (!std::getline(ss, label, ',') || !std::getline(ss, p_str, ',') ||
        !std::getline(ss, r_str, ',')) {
      throw InputError(args.fbeta_only_path + ":" + std::to_string(line_no) +
                       ": expected 'label,precision,recall'");
    }
    char* end = nullptr;
    double p = std::strtod(p_str.c_str(), &end);
    if (end == p_str.c_str()) {
      if (line_no == 1) continue;  // header row
      throw InputError(args.fbeta_only_path + ":" + std::to_string(line_no) +
                       ": cannot parse precision '" + p_str + "'");
    }
    double r = std::strtod(r_str.c_str(), nullptr);
    double f1 = f_beta(p, r, 1.0);
    double f2 = f_beta(p, r, 2.0);
    std::printf("%-24s %9.4f %9.4f %9.4f %9.4f\n", label.c_str(), p, r, f1, f2);
    rows.push_back({{"label", label},
                    {"precision", p},
                    {"recall", r},
                    {"f1", f1},
                    {"f2", f2}});
  }
  if (!args.report_path.empty()) write_json(rows, args.report_path);
  return 0;
}

}  // namespace

int cmd_eval(const EvalArgs& args) {
  if (!args.fbeta_only_path.empty()) return run_fbeta_only(args);
  if (args.pred_path.empty() || args.gt_path.empty()) {
    throw InputError("eval needs --pred and --gt (or --fbeta-only)");
  }

  CocoFile gt_file = CocoFile::load_path(args.gt_path);
  std::vector<FrameGroundTruth> gts = gt_file.ground_truth();

  JsonlReader reader(args.pred_path, optional_geometry(args.width, args.height));
  std::vector<FramePredictions> preds;
  std::set<std::pair<std::string, std::int64_t>> seen;
  while (auto frame = reader.next()) {
    if (!seen.insert({frame->video_id, frame->frame_index}).second) {
      throw InputError(args.pred_path + ": frame " +
                       std::to_string(frame->frame_index) + " of video '" +
                       frame->video_id + "' appears in multiple groups");
    }
    FramePredictions fp;
    fp.video_id = frame->video_id;
    fp.frame_index = frame->frame_index;
    for (Detection& det : frame->instances) {
      fp.instances.push_back({det.score, std::move(det.mask)});
    }
    preds.push_back(std::move(fp));
  }

  EvalParams params;
  params.iou_threshold = args.iou_threshold;
  params.score_threshold = args.score_threshold;
  params.coco_interp = args.coco_interp;
  EvalReport report = evaluate_stream(preds, gts, params, args.jobs);

  print_table(report);

  if (!args.report_path.empty()) {
    json doc;
    doc["params"] = {{"iou_threshold", params.iou_threshold},
                     {"score_threshold", params.score_threshold},
                     {"coco_interp", params.coco_interp}};
    doc["per_video"] = json::object();
    for (const auto& [video, m] : report.per_video) {
      doc["per_video"][video] = metrics_to_json(m);
    }
    doc["aggregate"] = metrics_to_json(report.aggregate);
    doc["fps"] = report.fps;
    write_json(doc, args.report_path);
  }
  if (!args.csv_path.empty()) {
    std::ofstream csv(args.csv_path);
    if (!csv) throw InputError("cannot open " + args.csv_path + " for writing");
    csv << "video,precision,recall,ap50,f1,f2,frames,tp,fp,fn\n";
    auto line = [&](const std::string& name, const VideoMetrics& m) {
      csv << name << ',' << m.precision << ',' << m.recall << ',' << m.ap50
          << ',' << m.f1 << ',' << m.f2 << ',' << m.frames_evaluated << ','
          << m.tp << ',' << m.fp << ',' << m.fn << "\n";
    };
    for (const auto& [video, m] : report.per_video) line(video, m);
    line("__aggregate__", report.aggregate);
  }
  return 0;
}

}  // namespace ripstab::cli
