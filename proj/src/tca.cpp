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

#include "ripstab/tca.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "ripstab/log.hpp"

namespace ripstab {

void TcaConfig::validate() const {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw InputError("alpha must be in (0,1]");
  if (downsample_factor < 1) throw InputError("downsample_factor must be >= 1");
  if (min_present < 1) throw InputError("min_present must be >= 1");
  if (!(decay_gamma >= 0.0 && decay_gamma < 1.0)) {
    throw InputError("decay_gamma must be in [0,1)");
  }
  if (sigma < 0.0) throw InputError("sigma must be >= 0");
  if (!(low >= 0.0 && low <= high && high <= 1.0)) {
    throw InputError("thresholds must satisfy 0 <= low <= high <= 1");
  }
  if (dilation_radius < 0) throw InputError("dilation_radius must be >= 0");
  if (!(iou_gate >= 0.0 && iou_gate <= 1.0)) {
    throw InputError("iou_gate must be in [0,1]");
  }
  if (max_absent_frames < 1) throw InputError("max_absent_frames must be >= 1");
}

TcaConfig TcaConfig::preset(const std::string& name) {
  TcaConfig cfg;
  if (name == "fast-gain-fast-decay") {
    cfg.alpha = 0.7;
    cfg.min_present = 1;
    cfg.decay_gamma = 0.6;
    cfg.max_absent_frames = 10;
  } else if (name == "slow-gain-slow-decay") {
    cfg.alpha = 0.2;
    cfg.min_present = 5;
    cfg.decay_gamma = 0.95;
    cfg.max_absent_frames = 60;
  } else if (name == "fast-gain-slow-decay") {
    cfg.alpha = 0.7;
    cfg.min_present = 1;
    cfg.decay_gamma = 0.95;
    cfg.max_absent_frames = 60;
  } else {
    throw InputError("unknown preset: " + name);
  }
  return cfg;
}

TcaConfig TcaConfig::identity() {
  TcaConfig cfg;
  cfg.alpha = 1.0;
  cfg.downsample_factor = 1;
  cfg.min_present = 1;
  cfg.decay_gamma = 0.0;
  cfg.sigma = 0.0;
  cfg.low = 0.5;
  cfg.high = 0.5;
  cfg.dilation_radius = 0;
  return cfg;
}

const BinaryMask& TrackState::matching_mask(const TcaConfig& cfg) const {
  if (cfg.match_against == MatchAgainst::kRaw) return last_raw;
  if (last_output.area() > 0) return last_output;
  return last_raw;
}

namespace {

void check_track_geometry(const TrackState& track, const BinaryMask& det_mask) {
  if (det_mask.geometry() != track.heat.geometry()) {
    throw InputError("detection mask geometry " + det_mask.geometry().str() +
                     " does not match track geometry " +
                     track.heat.geometry().str());
  }
}

template <typename ScoreAt>
void update_impl(TrackState& track, const BinaryMask& det_mask,
                 const ScoreAt& score_at, const TcaConfig& cfg) {
  check_track_geometry(track, det_mask);
  const auto& bits = det_mask.bits();
  auto& heat = track.heat.values();
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (!bits[i]) continue;
    track.present_counter[i] += 1;
    track.absence_counter[i] = 0;
    if (track.present_counter[i] >= static_cast<std::uint32_t>(cfg.min_present)) {
      heat[i] = cfg.alpha * score_at(i) + (1.0 - cfg.alpha) * heat[i];
    }
  }
}

}  // namespace

void heatmap_update(TrackState& track, const BinaryMask& det_mask,
                    double det_score, const TcaConfig& cfg) {
  if (!(det_score >= 0.0 && det_score <= 1.0)) {
    throw InputError("detection score " + std::to_string(det_score) +
                     " outside [0,1]");
  }
  update_impl(track, det_mask, [&](std::size_t) { return det_score; }, cfg);
}

void heatmap_update(TrackState& track, const BinaryMask& det_mask,
                    const Heatmap& det_scores, const TcaConfig& cfg) {
  if (det_scores.geometry() != det_mask.geometry()) {
    throw InputError("score map geometry does not match detection mask");
  }
  const auto& values = det_scores.values();
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (det_mask.bits()[i] && !(values[i] >= 0.0 && values[i] <= 1.0)) {
      throw InputError("per-pixel score outside [0,1]");
    }
  }
  update_impl(track, det_mask, [&](std::size_t i) { return values[i]; }, cfg);
}

void heatmap_decay(TrackState& track, const BinaryMask& det_mask,
                   const TcaConfig& cfg) {
  check_track_geometry(track, det_mask);
  const auto& bits = det_mask.bits();
  auto& heat = track.heat.values();
  bool any_present = false;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i]) {
      any_present = true;
      continue;
    }
    track.absence_counter[i] += 1;
    if (cfg.reset_present_on_absence) track.present_counter[i] = 0;
    heat[i] *= cfg.decay_gamma;
  }
  if (any_present) {
    track.frames_fully_absent = 0;
  } else {
    track.frames_fully_absent += 1;
  }
}

BinaryMask threshold_hysteresis(const Heatmap& h, double low, double high,
                                int dilation_radius) {
  if (!(low >= 0.0 && low <= high && high <= 1.0)) {
    throw InputError("thresholds must satisfy 0 <= low <= high <= 1");
  }
  if (dilation_radius < 0) throw InputError("dilation_radius must be >= 0");

  const int w = h.width();
  const int ht = h.height();
  const auto& v = h.values();

  BinaryMask strong(h.geometry());
  BinaryMask candidates(h.geometry());  // weak or strong
  bool any_strong = false;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] >= high) {
      strong.bits()[i] = 1;
      candidates.bits()[i] = 1;
      any_strong = true;
    } else if (v[i] >= low) {
      candidates.bits()[i] = 1;
    }
  }
  BinaryMask out(h.geometry());
  if (!any_strong) return out;

  // Seeds: candidate pixels touched by the dilated strong set. Flooding from
  // them through the candidate set marks exactly the weak-or-strong
  // components that intersect the dilated strong regions.
  BinaryMask reach = dilate(strong, dilation_radius);
  std::deque<std::pair<int, int>> queue;
  for (int y = 0; y < ht; ++y) {
    for (int x = 0; x < w; ++x) {
      if (candidates.at(x, y) && reach.at(x, y)) {
        out.set(x, y);
        queue.emplace_back(x, y);
      }
    }
  }
  while (!queue.empty()) {
    auto [x, y] = queue.front();
    queue.pop_front();
    for (int dy = -1; dy <= 1; ++dy) {
      for (int dx = -1; dx <= 1; ++dx) {
        if (dx == 0 && dy == 0) continue;
        int nx = x + dx;
        int ny = y + dy;
        if (nx < 0 || ny < 0 || nx >= w || ny >= ht) continue;
        if (candidates.at(nx, ny) && !out.at(nx, ny)) {
          out.set(nx, ny);
          queue.emplace_back(nx, ny);
        }
      }
    }
  }
  return out;
}

BinaryMask threshold_hysteresis(const Heatmap& h, const TcaConfig& cfg) {
  return threshold_hysteresis(h, cfg.low, cfg.high, cfg.dilation_radius);
}

TcaPipeline::TcaPipeline(TcaConfig cfg, const FrameGeometry& native_geometry,
                         std::int64_t start_frame)
    : cfg_(cfg),
      native_(native_geometry),
      working_(downsampled_geometry(native_geometry, cfg.downsample_factor)),
      next_frame_(start_frame) {
  cfg_.validate();
}

namespace {

struct Box {
  int x0 = 0, y0 = 0, x1 = -1, y1 = -1;
  bool empty() const { return x1 < x0 || y1 < y0; }
};

Box bbox_at_least(const Heatmap& h, double threshold) {
  Box box{h.width(), h.height(), -1, -1};
  for (int y = 0; y < h.height(); ++y) {
    for (int x = 0; x < h.width(); ++x) {
      if (h.at(x, y) >= threshold) {
        box.x0 = std::min(box.x0, x);
        box.y0 = std::min(box.y0, y);
        box.x1 = std::max(box.x1, x);
        box.y1 = std::max(box.y1, y);
      }
    }
  }
  return box;
}

// Bilinear samples of the full-frame upsampling restricted to a target
// window; identical pixel for pixel to upsample_heatmap of the whole frame.
Heatmap upsample_window(const Heatmap& src, const FrameGeometry& target,
                        int tx0, int ty0, int tw, int th) {
  Heatmap out(FrameGeometry(tw, th));
  const int sw = src.width();
  const int sh = src.height();
  for (int y = 0; y < th; ++y) {
    double sy = (ty0 + y + 0.5) * static_cast<double>(sh) / target.height - 0.5;
    double fl = std::floor(sy);
    int i = static_cast<int>(fl);
    double fy = sy - fl;
    if (i < 0) { i = 0; fy = 0.0; }
    if (i >= sh - 1) { i = sh - 1; fy = 0.0; }
    int j = std::min(i + 1, sh - 1);
    const double* row0 = src.values().data() + static_cast<std::size_t>(i) * sw;
    const double* row1 = src.values().data() + static_cast<std::size_t>(j) * sw;
    double* orow = out.values().data() + static_cast<std::size_t>(y) * tw;
    for (int x = 0; x < tw; ++x) {
      double sx = (tx0 + x + 0.5) * static_cast<double>(sw) / target.width - 0.5;
      double xfl = std::floor(sx);
      int a = static_cast<int>(xfl);
      double fx = sx - xfl;
      if (a < 0) { a = 0; fx = 0.0; }
      if (a >= sw - 1) { a = sw - 1; fx = 0.0; }
      int b = std::min(a + 1, sw - 1);
      double top = row0[a] + fx * (row0[b] - row0[a]);
      double bot = row1[a] + fx * (row1[b] - row1[a]);
      orow[x] = top + fy * (bot - top);
    }
  }
  return out;
}

}  // namespace

std::vector<TrackOutput> TcaPipeline::step(const FrameDetections& frame) {
  if (frame.frame_index != next_frame_) {
    throw InputError("out-of-order frame index " +
                     std::to_string(frame.frame_index) + " for video '" +
                     frame.video_id + "', expected " +
                     std::to_string(next_frame_));
  }

  // 1. Downsample detection masks into working space.
  std::vector<BinaryMask> dets;
  std::vector<double> scores;
  dets.reserve(frame.instances.size());
  for (const Detection& det : frame.instances) {
    if (det.mask.geometry() != native_) {
      throw InputError("frame " + std::to_string(frame.frame_index) +
                       ": detection geometry " + det.mask.geometry().str() +
                       " does not match video geometry " + native_.str());
    }
    dets.push_back(downsample_mask(det.mask, cfg_.downsample_factor));
    scores.push_back(det.score);
  }

  // 2. Associate detections with existing tracks.
  std::vector<BinaryMask> track_masks;
  track_masks.reserve(tracks_.size());
  for (const TrackState& t : tracks_) track_masks.push_back(t.matching_mask(cfg_));
  Assignment asg = associate(track_masks, dets, cfg_.iou_gate);

  // 3. Update matched tracks, decay unmatched ones, spawn new tracks.
  const BinaryMask empty_mask(working_);
  for (auto [r, c] : asg.matches) {
    TrackState& track = tracks_[r];
    heatmap_update(track, dets[c], scores[c], cfg_);
    heatmap_decay(track, dets[c], cfg_);
    track.last_raw = dets[c];
  }
  for (int r : asg.unmatched_rows) {
    heatmap_decay(tracks_[r], empty_mask, cfg_);
  }
  for (int c : asg.unmatched_cols) {
    TrackState track(next_track_id_++, working_);
    heatmap_update(track, dets[c], scores[c], cfg_);
    track.last_raw = dets[c];
    tracks_.push_back(std::move(track));
  }

  // 4-5. Smooth, threshold, and rebuild each nonempty mask at native scale.
  std::vector<TrackOutput> outputs;
  const int radius_native = cfg_.dilation_radius * cfg_.downsample_factor;
  for (TrackState& track : tracks_) {
    Heatmap blurred = gaussian_blur(track.heat, cfg_.sigma);
    BinaryMask out_small = threshold_hysteresis(blurred, cfg_);
    track.last_output = out_small;
    if (cfg_.smooth_in_place) track.heat = blurred;
    if (out_small.area() == 0) continue;

    if (working_ == native_) {
      double sum = 0.0;
      std::int64_t count = 0;
      for (std::size_t i = 0; i < out_small.bits().size(); ++i) {
        if (out_small.bits()[i]) {
          sum += blurred.values()[i];
          ++count;
        }
      }
      outputs.push_back({track.id, out_small, sum / count});
      continue;
    }

    // Only the window that can reach the low threshold matters; everything
    // outside interpolates strictly below it.
    Box sb = bbox_at_least(blurred, cfg_.low);
    if (sb.empty()) continue;
    sb.x0 = std::max(0, sb.x0 - 1);
    sb.y0 = std::max(0, sb.y0 - 1);
    sb.x1 = std::min(working_.width - 1, sb.x1 + 1);
    sb.y1 = std::min(working_.height - 1, sb.y1 + 1);
    const double fx = static_cast<double>(native_.width) / working_.width;
    const double fy = static_cast<double>(native_.height) / working_.height;
    int tx0 = std::clamp(static_cast<int>(std::floor((sb.x0 + 0.5) * fx - 0.5)) - 1,
                         0, native_.width - 1);
    int tx1 = std::clamp(static_cast<int>(std::ceil((sb.x1 + 0.5) * fx - 0.5)) + 1,
                         0, native_.width - 1);
    int ty0 = std::clamp(static_cast<int>(std::floor((sb.y0 + 0.5) * fy - 0.5)) - 1,
                         0, native_.height - 1);
    int ty1 = std::clamp(static_cast<int>(std::ceil((sb.y1 + 0.5) * fy - 0.5)) + 1,
                         0, native_.height - 1);
    const int tw = tx1 - tx0 + 1;
    const int th = ty1 - ty0 + 1;
    Heatmap window = upsample_window(blurred, native_, tx0, ty0, tw, th);
    BinaryMask window_mask =
        threshold_hysteresis(window, cfg_.low, cfg_.high, radius_native);
    double sum = 0.0;
    std::int64_t count = 0;
    BinaryMask native_mask(native_);
    for (int y = 0; y < th; ++y) {
      for (int x = 0; x < tw; ++x) {
        if (window_mask.at(x, y)) {
          native_mask.set(tx0 + x, ty0 + y);
          sum += window.at(x, y);
          ++count;
        }
      }
    }
    if (count == 0) continue;
    outputs.push_back({track.id, std::move(native_mask), sum / count});
  }

  // 6. Remove tracks that have been fully absent for too long.
  std::erase_if(tracks_, [&](const TrackState& t) {
    return t.frames_fully_absent >=
           static_cast<std::uint32_t>(cfg_.max_absent_frames);
  });

  ++next_frame_;
  return outputs;
}

}  // namespace ripstab
