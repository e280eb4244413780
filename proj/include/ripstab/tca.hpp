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

#ifndef RIPSTAB_TCA_HPP
#define RIPSTAB_TCA_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ripstab/heatmap.hpp"
#include "ripstab/mask.hpp"
#include "ripstab/tracking.hpp"

namespace ripstab {

enum class MatchAgainst { kRaw, kStabilized };

/// All knobs of the temporal confidence aggregation stage.
///
/// The update rule per tracked instance and pixel is an exponential moving
/// average gated by a present counter:
///   heat <- alpha * score + (1 - alpha) * heat     (pixel detected)
///   heat <- decay_gamma * heat                     (pixel absent)
/// followed by Gaussian smoothing and dual-threshold hysteresis.
struct TcaConfig {
  double alpha = 0.4;            // EMA weight of the current frame
  int downsample_factor = 4;     // working resolution divisor
  int min_present = 3;           // detections before a pixel may grow
  double decay_gamma = 0.9;      // per-absent-frame multiplicative decay
  double sigma = 2.0;            // Gaussian sigma, downsampled pixels
  double low = 0.3;              // hysteresis lower threshold
  double high = 0.6;             // hysteresis upper threshold
  int dilation_radius = 1;       // strong-region bridge, downsampled pixels
  double iou_gate = 0.1;         // minimum overlap to keep a match
  int max_absent_frames = 30;    // fully-absent frames before track removal
  MatchAgainst match_against = MatchAgainst::kStabilized;
  bool reset_present_on_absence = false;
  bool smooth_in_place = false;  // feed the smoothed heatmap back into state

  /// Throws InputError when a field is out of range.
  void validate() const;

  /// Named parameter sets for the three operating regimes: fast-gain-fast-decay,
  /// slow-gain-slow-decay and fast-gain-slow-decay.
  static TcaConfig preset(const std::string& name);

  /// Degenerate configuration under which the pipeline reproduces its input:
  /// alpha=1, factor=1, min_present=1, gamma=0, sigma=0, low=high=0.5,
  /// radius=0.
  static TcaConfig identity();
};

/// One tracked instance: its temporal heatmap and bookkeeping grids, all in
/// downsampled space.
struct TrackState {
  TrackId id = 0;
  Heatmap heat;
  std::vector<std::uint32_t> present_counter;
  std::vector<std::uint32_t> absence_counter;
  BinaryMask last_output;   // most recent stabilized mask
  BinaryMask last_raw;      // most recent matched detection mask
  std::uint32_t frames_fully_absent = 0;

  explicit TrackState(TrackId track_id, const FrameGeometry& geometry)
      : id(track_id),
        heat(geometry),
        present_counter(geometry.pixel_count(), 0),
        absence_counter(geometry.pixel_count(), 0),
        last_output(geometry),
        last_raw(geometry) {}

  /// The mask used to build this track's cost row during association.
  /// In stabilized mode a track whose output is still gated shut falls back
  /// to its latest raw mask so that young tracks remain matchable.
  const BinaryMask& matching_mask(const TcaConfig& cfg) const;
};

/// Applies the gated EMA update to every pixel of `det_mask`: the present
/// counter increments, the absence counter resets, and once the present
/// counter has reached min_present the heatmap moves toward `det_score`.
/// Throws InputError when the score is outside [0,1].
void heatmap_update(TrackState& track, const BinaryMask& det_mask,
                    double det_score, const TcaConfig& cfg);

/// Per-pixel score variant; `det_scores` supplies C(t) per pixel.
void heatmap_update(TrackState& track, const BinaryMask& det_mask,
                    const Heatmap& det_scores, const TcaConfig& cfg);

/// Applies absence accounting to every pixel NOT covered by `det_mask`
/// (pass an empty mask when the track went unmatched): the absence counter
/// increments and the heatmap decays by decay_gamma. Updates
/// frames_fully_absent.
void heatmap_decay(TrackState& track, const BinaryMask& det_mask,
                   const TcaConfig& cfg);

/// Dual-threshold hysteresis: pixels >= high are strong; pixels in
/// [low, high) are weak and survive only when their 8-connected component of
/// weak-or-strong pixels touches the strong set dilated by dilation_radius.
BinaryMask threshold_hysteresis(const Heatmap& h, const TcaConfig& cfg);

/// As above with explicit thresholds, used at native scale where the bridge
/// radius is rescaled by the downsample factor.
BinaryMask threshold_hysteresis(const Heatmap& h, double low, double high,
                                int dilation_radius);

struct Detection {
  double score = 0.0;
  BinaryMask mask;
  std::optional<std::int64_t> track_id;  // carried through from the input
};

struct FrameDetections {
  std::string video_id;
  std::int64_t frame_index = 0;
  std::vector<Detection> instances;
};

struct TrackOutput {
  TrackId track_id = 0;
  BinaryMask mask;      // native resolution
  double score = 0.0;   // mean heatmap value over the output mask
};

/// Per-video TCA state machine. Frames must be fed strictly in order, one
/// call per frame; the outputs for a frame are returned before the next
/// frame is accepted.
class TcaPipeline {
 public:
  TcaPipeline(TcaConfig cfg, const FrameGeometry& native_geometry,
              std::int64_t start_frame = 0);

  /// Runs one frame through downsample, association, heatmap update/decay,
  /// smoothing, hysteresis and native-scale mask reconstruction. Detections
  /// carry masks at native geometry. Throws InputError on an out-of-order
  /// frame index or geometry mismatch.
  std::vector<TrackOutput> step(const FrameDetections& frame);

  const TcaConfig& config() const { return cfg_; }
  const FrameGeometry& native_geometry() const { return native_; }
  const FrameGeometry& working_geometry() const { return working_; }
  std::int64_t next_frame_index() const { return next_frame_; }
  const std::vector<TrackState>& tracks() const { return tracks_; }

 private:
  TcaConfig cfg_;
  FrameGeometry native_;
  FrameGeometry working_;
  std::int64_t next_frame_ = 0;
  TrackId next_track_id_ = 0;
  std::vector<TrackState> tracks_;
};

}  // namespace ripstab

#endif  // RIPSTAB_TCA_HPP
