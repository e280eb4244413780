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

#include "ripstab/synth.hpp"

#include <algorithm>
#include <cmath>

#include "ripstab/log.hpp"

namespace ripstab {

namespace {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Stream tags for the noise draws.
enum : std::uint64_t {
  kStreamDrop = 1,
  kStreamSpuriousSpawn = 2,
  kStreamSpuriousParams = 3,
  kStreamJitter = 4,
  kStreamScore = 5,
};

// The clean ground truth derives from a fixed constant, never from the
// scenario seed, so reseeding changes only the noise realization.
constexpr std::uint64_t kCleanStreamSeed = 0x52697056697300ULL;

struct HarmonicShape {
  // radius(theta) = base * (1 + amp * sum_k a_k * sin(k*theta + phase_k))
  double a2 = 0.0, a3 = 0.0;
  double phase2 = 0.0, phase3 = 0.0;
  double drift2 = 0.0, drift3 = 0.0;
};

HarmonicShape clean_shape(std::size_t blob_index) {
  CounterRng rng{kCleanStreamSeed};
  HarmonicShape s;
  s.a2 = 0.4 + 0.6 * rng.uniform(1, blob_index, 0);
  s.a3 = 0.4 + 0.6 * rng.uniform(1, blob_index, 1);
  s.phase2 = 2.0 * M_PI * rng.uniform(2, blob_index, 0);
  s.phase3 = 2.0 * M_PI * rng.uniform(2, blob_index, 1);
  s.drift2 = 0.05 + 0.10 * rng.uniform(3, blob_index, 0);
  s.drift3 = 0.05 + 0.10 * rng.uniform(3, blob_index, 1);
  return s;
}

struct Center {
  double x = 0.0;
  double y = 0.0;
};

Center path_at(const std::vector<Waypoint>& path, std::int64_t frame) {
  if (path.empty()) return {};
  if (frame <= path.front().frame) return {path.front().x, path.front().y};
  if (frame >= path.back().frame) return {path.back().x, path.back().y};
  for (std::size_t i = 1; i < path.size(); ++i) {
    if (frame <= path[i].frame) {
      const Waypoint& a = path[i - 1];
      const Waypoint& b = path[i];
      double t = static_cast<double>(frame - a.frame) / (b.frame - a.frame);
      return {a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)};
    }
  }
  return {path.back().x, path.back().y};
}

// Rasterizes the radial-harmonic blob: pixel centers within radius(theta) of
// the center are set. Restricted to the blob's bounding box.
BinaryMask rasterize_blob(const FrameGeometry& geom, const Center& c,
                          double base_radius, double amplitude,
                          const HarmonicShape& shape, std::int64_t frame,
                          bool* clipped) {
  BinaryMask mask(geom);
  const double rmax = base_radius * (1.0 + 2.0 * std::abs(amplitude));
  int x0 = std::max(0, static_cast<int>(std::floor(c.x - rmax - 1)));
  int x1 = std::min(geom.width - 1, static_cast<int>(std::ceil(c.x + rmax + 1)));
  int y0 = std::max(0, static_cast<int>(std::floor(c.y - rmax - 1)));
  int y1 = std::min(geom.height - 1, static_cast<int>(std::ceil(c.y + rmax + 1)));
  bool any = false;
  for (int y = y0; y <= y1; ++y) {
    for (int x = x0; x <= x1; ++x) {
      double dx = (x + 0.5) - c.x;
      double dy = (y + 0.5) - c.y;
      double dist = std::hypot(dx, dy);
      double theta = std::atan2(dy, dx);
      double wobble =
          shape.a2 * std::sin(2.0 * theta + shape.phase2 + shape.drift2 * frame) +
          shape.a3 * std::sin(3.0 * theta + shape.phase3 + shape.drift3 * frame);
      double radius = base_radius * (1.0 + amplitude * wobble);
      if (dist <= radius) {
        mask.set(x, y);
        any = true;
      }
    }
  }
  if (clipped) *clipped = !any;
  return mask;
}

bool in_burst(const std::vector<DropBurst>& bursts, std::int64_t frame) {
  for (const auto& b : bursts) {
    if (frame >= b.start && frame < b.start + b.length) return true;
  }
  return false;
}

}  // namespace

std::uint64_t CounterRng::bits(std::uint64_t stream, std::uint64_t a,
                               std::uint64_t b) const {
  std::uint64_t h = splitmix64(seed ^ 0x8f1bbcdcbfa53e0bULL);
  h = splitmix64(h ^ stream);
  h = splitmix64(h ^ a);
  h = splitmix64(h ^ b);
  return h;
}

double CounterRng::uniform(std::uint64_t stream, std::uint64_t a,
                           std::uint64_t b) const {
  return static_cast<double>(bits(stream, a, b) >> 11) * 0x1.0p-53;
}

double CounterRng::range(double lo, double hi, std::uint64_t stream,
                         std::uint64_t a, std::uint64_t b) const {
  return lo + (hi - lo) * uniform(stream, a, b);
}

void generate(const ScenarioSpec& spec,
              const std::function<void(SynthFrame&&)>& sink) {
  if (spec.num_frames < 0) throw InputError("num_frames must be >= 0");
  if (spec.noise.spurious_lifetime < 1) {
    throw InputError("spurious_lifetime must be >= 1");
  }
  const CounterRng rng{spec.seed};
  const FrameGeometry& geom = spec.geometry;

  // Live spurious blobs: (spawn_frame, death_frame exclusive).
  struct Spurious {
    std::int64_t spawn = 0;
    std::int64_t death = 0;
    Center center;
    double radius = 0.0;
    double score = 0.0;
    HarmonicShape shape;
  };
  std::vector<Spurious> live_spurious;

  for (std::int64_t frame = 0; frame < spec.num_frames; ++frame) {
    SynthFrame out;
    out.frame_index = frame;
    out.ground_truth.frame_index = frame;
    out.ground_truth.provenance = Provenance::kManual;
    out.detections.video_id = spec.video_id;
    out.detections.frame_index = frame;
    out.spurious = BinaryMask(geom);

    const double pan_x = spec.camera.pan_vx * frame;
    const double pan_y = spec.camera.pan_vy * frame;

    std::vector<Center> clean_centers;
    for (std::size_t bi = 0; bi < spec.blobs.size(); ++bi) {
      const BlobSpec& blob = spec.blobs[bi];
      Center c = path_at(blob.trajectory, frame);
      c.x += pan_x;
      c.y += pan_y;
      clean_centers.push_back(c);

      bool clipped = false;
      BinaryMask gt_mask = rasterize_blob(geom, c, blob.base_radius,
                                          blob.deform_amplitude,
                                          clean_shape(bi), frame, &clipped);
      if (clipped) {
        // Fully outside the frame: like a non-visible object, the blob is
        // not annotated on this frame and emits no detection.
        log_warn("blob " + std::to_string(bi) + " left the frame at frame " +
                 std::to_string(frame) + ", clipped");
        continue;
      }
      out.ground_truth.instances.push_back(
          {static_cast<std::int64_t>(bi), gt_mask});

      // Detection: maybe dropped, otherwise jittered.
      if (in_burst(spec.noise.drop_bursts, frame)) continue;
      if (spec.noise.drop_prob > 0.0 &&
          rng.uniform(kStreamDrop, frame, bi) < spec.noise.drop_prob) {
        continue;
      }
      Center det_c = c;
      if (spec.noise.jitter_px > 0.0) {
        det_c.x += rng.range(-spec.noise.jitter_px, spec.noise.jitter_px,
                             kStreamJitter, frame, bi * 2);
        det_c.y += rng.range(-spec.noise.jitter_px, spec.noise.jitter_px,
                             kStreamJitter, frame, bi * 2 + 1);
      }
      double score = blob.score;
      if (spec.noise.score_noise > 0.0) {
        score += rng.range(-spec.noise.score_noise, spec.noise.score_noise,
                           kStreamScore, frame, bi);
        score = std::clamp(score, 0.0, 1.0);
      }
      BinaryMask det_mask =
          spec.noise.jitter_px > 0.0
              ? rasterize_blob(geom, det_c, blob.base_radius,
                               blob.deform_amplitude, clean_shape(bi), frame,
                               nullptr)
              : gt_mask;
      out.detections.instances.push_back({score, std::move(det_mask), {}});
    }

    // Spawn spurious blobs.
    if (spec.noise.spurious_rate > 0.0 &&
        rng.uniform(kStreamSpuriousSpawn, frame, 0) < spec.noise.spurious_rate) {
      Spurious sp;
      sp.spawn = frame;
      std::int64_t lifetime =
          1 + static_cast<std::int64_t>(
                  rng.uniform(kStreamSpuriousParams, frame, 0) *
                  static_cast<double>(spec.noise.spurious_lifetime));
      lifetime = std::min(lifetime, spec.noise.spurious_lifetime);
      sp.death = frame + lifetime;
      sp.radius = rng.range(6.0, 14.0, kStreamSpuriousParams, frame, 1);
      sp.score = rng.range(0.6, 0.95, kStreamSpuriousParams, frame, 2);
      sp.shape = clean_shape(1000 + static_cast<std::size_t>(frame));
      // Resample the position until it clears every clean blob.
      bool placed = false;
      for (std::uint64_t attempt = 0; attempt < 64 && !placed; ++attempt) {
        sp.center.x = rng.range(sp.radius, geom.width - sp.radius,
                                kStreamSpuriousParams, frame, 10 + attempt * 2);
        sp.center.y = rng.range(sp.radius, geom.height - sp.radius,
                                kStreamSpuriousParams, frame, 11 + attempt * 2);
        placed = true;
        for (const Center& c : clean_centers) {
          double d = std::hypot(sp.center.x - c.x, sp.center.y - c.y);
          if (d < spec.noise.spurious_margin_px) {
            placed = false;
            break;
          }
        }
      }
      if (placed) live_spurious.push_back(sp);
    }

    // Emit live spurious blobs and retire dead ones.
    std::erase_if(live_spurious,
                  [&](const Spurious& sp) { return frame >= sp.death; });
    for (const Spurious& sp : live_spurious) {
      BinaryMask m = rasterize_blob(geom, sp.center, sp.radius, 0.15, sp.shape,
                                    frame, nullptr);
      for (std::size_t i = 0; i < m.bits().size(); ++i) {
        out.spurious.bits()[i] |= m.bits()[i];
      }
      out.detections.instances.push_back({sp.score, std::move(m), {}});
    }

    sink(std::move(out));
  }
}

std::vector<SynthFrame> collect(const ScenarioSpec& spec) {
  std::vector<SynthFrame> frames;
  frames.reserve(static_cast<std::size_t>(spec.num_frames));
  generate(spec, [&](SynthFrame&& f) { frames.push_back(std::move(f)); });
  return frames;
}

}  // namespace ripstab
