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

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <thread>
#include <vector>

#include "commands.hpp"
#include "ripstab/io/config_io.hpp"
#include "ripstab/io/jsonl.hpp"
#include "ripstab/io/manifest.hpp"
#include "ripstab/log.hpp"

namespace ripstab::cli {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

TcaConfig resolve_config(const std::string& preset,
                         const std::string& config_path) {
  TcaConfig cfg;
  if (!preset.empty()) cfg = TcaConfig::preset(preset);
  if (!config_path.empty()) cfg = load_tca_config(config_path, cfg);
  cfg.validate();
  return cfg;
}

std::optional<FrameGeometry> optional_geometry(int width, int height) {
  if (width > 0 && height > 0) return FrameGeometry(width, height);
  if (width > 0 || height > 0) {
    throw InputError("--width and --height must be given together");
  }
  return std::nullopt;
}

namespace {

struct StageTimes {
  double decode_s = 0.0;
  double tca_s = 0.0;
  double encode_s = 0.0;
  std::int64_t frames = 0;
  std::int64_t instances_in = 0;
  std::int64_t instances_out = 0;

  void merge(const StageTimes& other) {
    decode_s += other.decode_s;
    tca_s += other.tca_s;
    encode_s += other.encode_s;
    frames += other.frames;
    instances_in += other.instances_in;
    instances_out += other.instances_out;
  }
};

// Streams one JSONL file through per-video pipelines. Gaps in the frame
// index are stepped as empty frames so absent detections still decay tracks.
StageTimes run_stream(const std::string& in_path, const std::string& out_path,
                      const TcaConfig& cfg,
                      std::optional<FrameGeometry> geometry) {
  StageTimes times;
  JsonlReader reader(in_path, geometry);
  JsonlWriter writer(out_path);
  std::map<std::string, std::unique_ptr<TcaPipeline>> pipelines;

  auto emit = [&](const std::string& video, std::int64_t frame,
                  const std::vector<TrackOutput>& outputs) {
    auto t0 = Clock::now();
    for (const TrackOutput& out : outputs) {
      writer.write_instance(video, frame, out.score, out.mask,
                            static_cast<std::int64_t>(out.track_id));
    }
    times.encode_s += std::chrono::duration<double>(Clock::now() - t0).count();
    times.instances_out += static_cast<std::int64_t>(outputs.size());
  };

  while (true) {
    auto t0 = Clock::now();
    std::optional<FrameDetections> frame = reader.next();
    times.decode_s += std::chrono::duration<double>(Clock::now() - t0).count();
    if (!frame) break;

    auto it = pipelines.find(frame->video_id);
    if (it == pipelines.end()) {
      if (frame->instances.empty()) {
        // Nothing to track yet; a pipeline starts at the first detection.
        ++times.frames;
        continue;
      }
      auto pipeline = std::make_unique<TcaPipeline>(
          cfg, frame->instances.front().mask.geometry(), frame->frame_index);
      it = pipelines.emplace(frame->video_id, std::move(pipeline)).first;
    }
    TcaPipeline& pipeline = *it->second;

    // Step implicit empty frames up to this index.
    while (pipeline.next_frame_index() < frame->frame_index) {
      FrameDetections gap{frame->video_id, pipeline.next_frame_index(), {}};
      auto t1 = Clock::now();
      auto outputs = pipeline.step(gap);
      times.tca_s += std::chrono::duration<double>(Clock::now() - t1).count();
      ++times.frames;
      emit(frame->video_id, gap.frame_index, outputs);
    }

    times.instances_in += static_cast<std::int64_t>(frame->instances.size());
    auto t1 = Clock::now();
    auto outputs = pipeline.step(*frame);
    times.tca_s += std::chrono::duration<double>(Clock::now() - t1).count();
    ++times.frames;
    emit(frame->video_id, frame->frame_index, outputs);
  }
  writer.close();
  return times;
}

// Splits an interleaved JSONL into one temp file per video, preserving line
// order. Returns video ids in first-appearance order with their paths.
std::vector<std::pair<std::string, fs::path>> split_by_video(
    const std::string& in_path, const fs::path& scratch) {
  std::ifstream in(in_path);
  if (!in) throw InputError("cannot open " + in_path);
  std::vector<std::pair<std::string, fs::path>> order;
  std::map<std::string, std::unique_ptr<std::ofstream>> outs;
  std::string line;
  std::int64_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
    auto rec = nlohmann::json::parse(line, nullptr, false);
    if (rec.is_discarded() || !rec.contains("video_id")) {
      throw InputError(in_path + ":" + std::to_string(line_no) +
                       ": malformed JSON line");
    }
    std::string video = rec.at("video_id").get<std::string>();
    auto it = outs.find(video);
    if (it == outs.end()) {
      fs::path path = scratch / ("video_" + std::to_string(order.size()) +
                                 ".jsonl");
      order.emplace_back(video, path);
      it = outs.emplace(video, std::make_unique<std::ofstream>(path)).first;
    }
    *it->second << line << "\n";
  }
  return order;
}

}  // namespace

int cmd_tca(const TcaArgs& args) {
  const TcaConfig cfg = resolve_config(args.preset, args.config_path);
  const auto geometry = optional_geometry(args.width, args.height);
  const auto t_start = Clock::now();

  StageTimes times;
  if (args.jobs <= 1) {
    times = run_stream(args.input, args.output, cfg, geometry);
  } else {
    fs::path scratch =
        fs::path(args.output).parent_path() /
        (fs::path(args.output).filename().string() + ".scratch");
    fs::create_directories(scratch);
    auto videos = split_by_video(args.input, scratch);

    std::vector<StageTimes> results(videos.size());
    std::vector<std::string> errors;
    std::mutex mu;
    std::size_t next = 0;
    auto worker = [&] {
      while (true) {
        std::size_t idx;
        {
          std::lock_guard lock(mu);
          if (next >= videos.size()) return;
          idx = next++;
        }
        try {
          fs::path out = videos[idx].second;
          out += ".out";
          results[idx] = run_stream(videos[idx].second.string(), out.string(),
                                    cfg, geometry);
        } catch (const std::exception& e) {
          std::lock_guard lock(mu);
          errors.push_back(videos[idx].first + ": " + e.what());
        }
      }
    };
    std::vector<std::thread> pool;
    for (int i = 0; i < std::min<int>(args.jobs, videos.size()); ++i) {
      pool.emplace_back(worker);
    }
    for (auto& t : pool) t.join();
    if (!errors.empty()) {
      fs::remove_all(scratch);
      throw InputError(errors.front());
    }

    // Concatenate per-video outputs in first-appearance order.
    std::ofstream out(args.output, std::ios::binary);
    if (!out) throw InputError("cannot open " + args.output + " for writing");
    for (std::size_t i = 0; i < videos.size(); ++i) {
      fs::path part = videos[i].second;
      part += ".out";
      std::ifstream chunk(part, std::ios::binary);
      out << chunk.rdbuf();
      times.merge(results[i]);
    }
    out.close();
    fs::remove_all(scratch);
  }

  const double total_s =
      std::chrono::duration<double>(Clock::now() - t_start).count();

  nlohmann::json manifest = make_manifest("tca");
  manifest["config"] = config_to_json(cfg);
  manifest["inputs"] = {{{"path", args.input}, {"fnv1a64", fnv1a64_file(args.input)}}};
  manifest["frames"] = times.frames;
  manifest["instances_in"] = times.instances_in;
  manifest["instances_out"] = times.instances_out;
  manifest["jobs"] = args.jobs;
  manifest["timings"] = {{"decode_s", times.decode_s},
                         {"tca_s", times.tca_s},
                         {"encode_s", times.encode_s},
                         {"total_s", total_s}};
  manifest["fps"] = total_s > 0.0 ? times.frames / total_s : 0.0;
  const std::string manifest_path = args.manifest_path.empty()
                                        ? args.output + ".manifest.json"
                                        : args.manifest_path;
  write_json(manifest, manifest_path);
  log_info("tca: " + std::to_string(times.frames) + " frames -> " +
           args.output);
  return 0;
}

}  // namespace ripstab::cli
