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

#ifndef RIPSTAB_SYNTH_HPP
#define RIPSTAB_SYNTH_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ripstab/annotations.hpp"
#include "ripstab/mask.hpp"
#include "ripstab/tca.hpp"

namespace ripstab {

/// Stateless counter-based generator: every draw is a pure hash of
/// (seed, stream, counter words), so streams are reproducible independent of
/// platform and evaluation order.
struct CounterRng {
  std::uint64_t seed = 0;

  std::uint64_t bits(std::uint64_t stream, std::uint64_t a,
                     std::uint64_t b = 0) const;
  /// Uniform in [0, 1).
  double uniform(std::uint64_t stream, std::uint64_t a,
                 std::uint64_t b = 0) const;
  /// Uniform in [lo, hi).
  double range(double lo, double hi, std::uint64_t stream, std::uint64_t a,
               std::uint64_t b = 0) const;
};

struct Waypoint {
  std::int64_t frame = 0;
  double x = 0.0;
  double y = 0.0;
};

/// An amorphous blob: a disc whose radius is modulated by low-order radial
/// harmonics with per-frame phase drift, following a piecewise-linear center
/// path.
struct BlobSpec {
  std::vector<Waypoint> trajectory;  // clamped outside [first, last] frame
  double base_radius = 20.0;
  double deform_amplitude = 0.1;
  double score = 0.9;
};

struct DropBurst {
  std::int64_t start = 0;
  std::int64_t length = 0;
};

struct NoiseSpec {
  double drop_prob = 0.0;            // per blob per frame
  std::vector<DropBurst> drop_bursts;  // force-drop all blobs in these ranges
  double spurious_rate = 0.0;        // spawn probability per frame
  std::int64_t spurious_lifetime = 1;  // max lifetime, uniform in [1, value]
  double spurious_margin_px = 0.0;   // min distance from any clean blob center
  double jitter_px = 0.0;            // detection center jitter, uniform +/-
  double score_noise = 0.0;          // score jitter, uniform +/-, clamped
};

struct CameraSpec {
  double pan_vx = 0.0;  // global drift applied to clean blobs, px/frame
  double pan_vy = 0.0;
};

struct ScenarioSpec {
  std::uint64_t seed = 0;
  std::string video_id = "synthetic";
  FrameGeometry geometry{256, 256};
  std::int64_t num_frames = 0;
  std::vector<BlobSpec> blobs;
  NoiseSpec noise;
  CameraSpec camera;
};

/// One generated frame: clean ground truth plus the corrupted detections.
/// `spurious` holds the union of all spurious detection masks of the frame.
struct SynthFrame {
  std::int64_t frame_index = 0;
  DenseAnnotation ground_truth;
  FrameDetections detections;
  BinaryMask spurious;
};

/// Streams the scenario frame by frame into `sink`. Ground truth contains
/// the clean blobs every frame; detections are the ground truth corrupted by
/// the noise model. Determinism: identical seed and spec give bit-identical
/// streams, and the clean ground truth does not depend on the seed at all.
void generate(const ScenarioSpec& spec,
              const std::function<void(SynthFrame&&)>& sink);

/// Collects the whole scenario in memory; intended for desk-scale streams.
std::vector<SynthFrame> collect(const ScenarioSpec& spec);

}  // namespace ripstab

#endif  // RIPSTAB_SYNTH_HPP
