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

#include <cmath>
#include <random>

#include <doctest.h>

#include "oracles.hpp"
#include "ripstab/synth.hpp"
#include "ripstab/tca.hpp"
#include "test_support.hpp"

using namespace ripstab;
using namespace ripstab::testing;

namespace {

TrackState make_track(const FrameGeometry& geom) {
  return TrackState(0, geom);
}

BinaryMask full_mask(const FrameGeometry& geom) {
  BinaryMask m(geom);
  std::fill(m.bits().begin(), m.bits().end(), 1);
  return m;
}

}  // namespace

TEST_SUITE_BEGIN("tca");

TEST_CASE("config validation and presets") {
  TcaConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.low = 0.7;
  cfg.high = 0.6;
  CHECK_THROWS_AS(cfg.validate(), InputError);

  CHECK(TcaConfig::preset("fast-gain-fast-decay").alpha == 0.7);
  CHECK(TcaConfig::preset("slow-gain-slow-decay").decay_gamma == 0.95);
  CHECK(TcaConfig::preset("fast-gain-slow-decay").min_present == 1);
  CHECK_THROWS_AS(TcaConfig::preset("nope"), InputError);

  CHECK_NOTHROW(TcaConfig::identity().validate());
}

TEST_CASE("heatmap_update direct substitutions") {
  FrameGeometry geom(1, 1);
  TcaConfig cfg;
  cfg.min_present = 1;

  TrackState track = make_track(geom);
  cfg.alpha = 0.5;
  heatmap_update(track, full_mask(geom), 1.0, cfg);
  CHECK(track.heat.at(0, 0) == doctest::Approx(0.5));

  TrackState track2 = make_track(geom);
  track2.heat.at(0, 0) = 0.5;
  track2.present_counter[0] = 5;
  cfg.alpha = 0.3;
  heatmap_update(track2, full_mask(geom), 1.0, cfg);
  CHECK(track2.heat.at(0, 0) == doctest::Approx(0.65));
}

TEST_CASE("heatmap_update is gated by the present counter") {
  FrameGeometry geom(1, 1);
  TcaConfig cfg;
  cfg.min_present = 3;
  cfg.alpha = 1.0;
  TrackState track = make_track(geom);

  heatmap_update(track, full_mask(geom), 0.9, cfg);
  CHECK(track.heat.at(0, 0) == 0.0);
  heatmap_update(track, full_mask(geom), 0.9, cfg);
  CHECK(track.heat.at(0, 0) == 0.0);
  heatmap_update(track, full_mask(geom), 0.9, cfg);
  CHECK(track.heat.at(0, 0) == doctest::Approx(0.9));
  CHECK(track.present_counter[0] == 3);
}

TEST_CASE("heatmap_update rejects bad scores and geometry") {
  FrameGeometry geom(2, 2);
  TcaConfig cfg;
  TrackState track = make_track(geom);
  CHECK_THROWS_AS(heatmap_update(track, full_mask(geom), 1.5, cfg), InputError);
  CHECK_THROWS_AS(heatmap_update(track, full_mask(geom), -0.1, cfg), InputError);
  CHECK_THROWS_AS(
      heatmap_update(track, full_mask(FrameGeometry(3, 3)), 0.5, cfg),
      InputError);
}

TEST_CASE("heatmap_update accepts a per-pixel score map") {
  FrameGeometry geom(2, 1);
  TcaConfig cfg;
  cfg.min_present = 1;
  cfg.alpha = 1.0;
  TrackState track = make_track(geom);
  Heatmap scores(geom, {0.25, 0.75});
  heatmap_update(track, full_mask(geom), scores, cfg);
  CHECK(track.heat.at(0, 0) == doctest::Approx(0.25));
  CHECK(track.heat.at(1, 0) == doctest::Approx(0.75));
}

TEST_CASE("heatmap_decay multiplies by gamma and counts absences") {
  FrameGeometry geom(1, 1);
  TcaConfig cfg;
  cfg.decay_gamma = 0.8;
  TrackState track = make_track(geom);
  track.heat.at(0, 0) = 0.5;

  BinaryMask empty(geom);
  heatmap_decay(track, empty, cfg);
  CHECK(track.heat.at(0, 0) == doctest::Approx(0.4));
  CHECK(track.absence_counter[0] == 1);
  CHECK(track.frames_fully_absent == 1);

  track.heat.at(0, 0) = 0.64;
  heatmap_decay(track, empty, cfg);
  heatmap_decay(track, empty, cfg);
  CHECK(track.heat.at(0, 0) == doctest::Approx(0.4096));
  CHECK(track.frames_fully_absent == 3);

  cfg.decay_gamma = 0.0;
  track.heat.at(0, 0) = 0.77;
  heatmap_decay(track, empty, cfg);
  CHECK(track.heat.at(0, 0) == 0.0);
}

TEST_CASE("per frame, a pixel increments exactly one counter") {
  FrameGeometry geom(2, 1);
  TcaConfig cfg;
  TrackState track = make_track(geom);
  BinaryMask det(geom);
  det.set(0, 0);

  heatmap_update(track, det, 0.9, cfg);
  heatmap_decay(track, det, cfg);
  CHECK(track.present_counter[0] == 1);
  CHECK(track.absence_counter[0] == 0);
  CHECK(track.present_counter[1] == 0);
  CHECK(track.absence_counter[1] == 1);
  CHECK(track.frames_fully_absent == 0);

  // Presence is cumulative: an absent frame does not reset it by default.
  BinaryMask empty(geom);
  heatmap_decay(track, empty, cfg);
  CHECK(track.present_counter[0] == 1);

  TcaConfig resetting = cfg;
  resetting.reset_present_on_absence = true;
  heatmap_decay(track, empty, resetting);
  CHECK(track.present_counter[0] == 0);
}

TEST_CASE("threshold_hysteresis 1-D example") {
  Heatmap h(FrameGeometry(5, 1), {0.2, 0.4, 0.7, 0.4, 0.2});
  TcaConfig cfg;
  cfg.low = 0.3;
  cfg.high = 0.6;
  cfg.dilation_radius = 1;
  BinaryMask out = threshold_hysteresis(h, cfg);
  CHECK(out == mask_from_rows({".XXX."}));
}

TEST_CASE("threshold_hysteresis degenerate cases") {
  TcaConfig cfg;
  cfg.low = 0.3;
  cfg.high = 0.6;
  Heatmap below(FrameGeometry(4, 4));
  std::fill(below.values().begin(), below.values().end(), 0.1);
  CHECK(threshold_hysteresis(below, cfg).area() == 0);

  // low == high degenerates to a plain threshold.
  Heatmap h(FrameGeometry(3, 1), {0.2, 0.5, 0.9});
  TcaConfig plain;
  plain.low = 0.5;
  plain.high = 0.5;
  plain.dilation_radius = 2;
  CHECK(threshold_hysteresis(h, plain) == mask_from_rows({".XX"}));
}

TEST_CASE("threshold_hysteresis keeps weak islands near strong regions only") {
  // Strong pixel at x=0; weak island at x=3..4 bridged only when the
  // dilation radius reaches it.
  Heatmap h(FrameGeometry(6, 1), {0.9, 0.0, 0.0, 0.4, 0.4, 0.0});
  TcaConfig cfg;
  cfg.low = 0.3;
  cfg.high = 0.6;
  cfg.dilation_radius = 0;
  CHECK(threshold_hysteresis(h, cfg) == mask_from_rows({"X....."}));
  cfg.dilation_radius = 3;
  CHECK(threshold_hysteresis(h, cfg) == mask_from_rows({"X..XX."}));
}

TEST_CASE("threshold_hysteresis equals the flood-fill oracle") {
  std::mt19937_64 rng(606);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<int> radius(0, 3);
  for (int trial = 0; trial < 200; ++trial) {
    Heatmap h = random_heatmap(rng, 16, 16);
    double a = u(rng), b = u(rng);
    TcaConfig cfg;
    cfg.low = std::min(a, b);
    cfg.high = std::max(a, b);
    cfg.dilation_radius = radius(rng);
    CHECK(threshold_hysteresis(h, cfg) ==
          hysteresis_oracle(h, cfg.low, cfg.high, cfg.dilation_radius));
  }
}

TEST_CASE("raising thresholds never adds output pixels") {
  std::mt19937_64 rng(707);
  for (int trial = 0; trial < 50; ++trial) {
    Heatmap h = random_heatmap(rng, 12, 12);
    TcaConfig lo;
    lo.low = 0.2;
    lo.high = 0.6;
    lo.dilation_radius = 1;
    TcaConfig hi = lo;
    hi.low = 0.4;
    BinaryMask out_lo = threshold_hysteresis(h, lo);
    BinaryMask out_hi = threshold_hysteresis(h, hi);
    for (std::size_t i = 0; i < out_hi.bits().size(); ++i) {
      if (out_hi.bits()[i]) CHECK(out_lo.bits()[i] == 1);
    }
  }
}

TEST_CASE("EMA converges exactly to the closed form") {
  std::mt19937_64 rng(909);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<int> steps(1, 100);
  FrameGeometry geom(1, 1);
  for (int trial = 0; trial < 50; ++trial) {
    double alpha = 0.01 + 0.98 * u(rng);
    double c = u(rng);
    double h0 = u(rng);
    int t = steps(rng);

    TcaConfig prime;
    prime.alpha = 1.0;
    prime.min_present = 1;
    TrackState track = make_track(geom);
    heatmap_update(track, full_mask(geom), h0, prime);

    TcaConfig cfg;
    cfg.alpha = alpha;
    cfg.min_present = 1;
    for (int i = 0; i < t; ++i) {
      heatmap_update(track, full_mask(geom), c, cfg);
    }
    double expected = c - std::pow(1.0 - alpha, t) * (c - h0);
    CHECK(std::abs(track.heat.at(0, 0) - expected) <= 1e-9);
  }
}

TEST_CASE("heatmap values stay in [0,1] under random update sequences") {
  std::mt19937_64 rng(111);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  FrameGeometry geom(4, 4);
  for (int trial = 0; trial < 20; ++trial) {
    TcaConfig cfg;
    cfg.alpha = 0.05 + 0.95 * u(rng);
    cfg.decay_gamma = 0.99 * u(rng);
    cfg.min_present = 1 + static_cast<int>(u(rng) * 3);
    TrackState track = make_track(geom);
    for (int step = 0; step < 200; ++step) {
      BinaryMask det = random_mask(rng, 4, 4, 0.5);
      heatmap_update(track, det, u(rng), cfg);
      heatmap_decay(track, det, cfg);
      for (double v : track.heat.values()) {
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
      }
    }
  }
}

TEST_CASE("detection streaks shorter than min_present never grow the heatmap") {
  FrameGeometry geom(8, 8);
  TcaConfig cfg;
  cfg.min_present = 4;
  TrackState track = make_track(geom);
  BinaryMask det = mask_from_rows({"XX......", "XX......", "........",
                                   "........", "........", "........",
                                   "........", "........"});
  BinaryMask empty(geom);
  for (int streak = 0; streak < 3; ++streak) {
    heatmap_update(track, det, 0.99, cfg);
    heatmap_decay(track, det, cfg);
  }
  for (int gap = 0; gap < 10; ++gap) heatmap_decay(track, empty, cfg);
  for (double v : track.heat.values()) CHECK(v == 0.0);
}

TEST_CASE("identity config reproduces the input stream") {
  std::mt19937_64 rng(321);
  FrameGeometry geom(32, 24);
  TcaPipeline pipeline(TcaConfig::identity(), geom);
  for (int frame = 0; frame < 12; ++frame) {
    FrameDetections dets;
    dets.video_id = "v";
    dets.frame_index = frame;
    int n = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < n; ++i) {
      BinaryMask m = random_mask(rng, 32, 24, 0.2);
      if (m.area() == 0) m.set(0, 0);
      dets.instances.push_back({0.6 + 0.4 * (i + 1) / (n + 1.0), m, {}});
    }
    auto outputs = pipeline.step(dets);
    REQUIRE(outputs.size() == dets.instances.size());
    // Outputs are per new track in spawn order on this stream.
    for (std::size_t i = 0; i < outputs.size(); ++i) {
      bool found = false;
      for (const auto& det : dets.instances) {
        if (det.mask == outputs[i].mask) {
          found = true;
          CHECK(outputs[i].score == doctest::Approx(det.score).epsilon(1e-9));
          break;
        }
      }
      CHECK(found);
    }
  }
}

TEST_CASE("one-frame spurious blobs never reach the output") {
  FrameGeometry geom(64, 64);
  TcaConfig cfg;  // defaults: min_present = 3
  TcaPipeline pipeline(cfg, geom);
  BinaryMask blob = disc_mask(geom, 32, 32, 12);
  BinaryMask spurious = disc_mask(geom, 10, 10, 5);

  for (int frame = 0; frame < 40; ++frame) {
    FrameDetections dets;
    dets.video_id = "v";
    dets.frame_index = frame;
    dets.instances.push_back({0.9, blob, {}});
    if (frame == 20) dets.instances.push_back({0.95, spurious, {}});
    auto outputs = pipeline.step(dets);
    for (const TrackOutput& out : outputs) {
      // No output pixel may fall in the spurious region away from the blob.
      for (int y = 0; y < 16; ++y) {
        for (int x = 0; x < 16; ++x) CHECK(out.mask.at(x, y) == 0);
      }
    }
  }
}

TEST_CASE("gap bridging survives three absent frames with defaults") {
  FrameGeometry geom(128, 128);
  TcaConfig cfg;  // decay_gamma 0.9, low 0.3, high 0.6
  TcaPipeline pipeline(cfg, geom);
  BinaryMask blob = disc_mask(geom, 64, 64, 40);

  std::int64_t frame = 0;
  for (; frame < 50; ++frame) {
    FrameDetections dets{"v", frame, {{0.9, blob, {}}}};
    pipeline.step(dets);
  }
  int nonempty_gap_frames = 0;
  for (int gap = 0; gap < 3; ++gap, ++frame) {
    FrameDetections dets{"v", frame, {}};
    auto outputs = pipeline.step(dets);
    if (!outputs.empty() && outputs.front().mask.area() > 0) {
      ++nonempty_gap_frames;
      CHECK(iou(outputs.front().mask, blob) > 0.5);
    }
  }
  CHECK(nonempty_gap_frames == 3);

  // The fourth absent frame drops below the high threshold: 0.9 * 0.9^4.
  FrameDetections dets{"v", frame, {}};
  CHECK(pipeline.step(dets).empty());
}

TEST_CASE("a translating blob keeps one track id") {
  FrameGeometry geom(128, 64);
  TcaConfig cfg;
  TcaPipeline pipeline(cfg, geom);
  for (int frame = 0; frame < 40; ++frame) {
    BinaryMask blob = disc_mask(geom, 20.0 + 2.0 * frame, 32.0, 14);
    FrameDetections dets{"v", frame, {{0.9, blob, {}}}};
    pipeline.step(dets);
    REQUIRE(pipeline.tracks().size() == 1);
    CHECK(pipeline.tracks().front().id == 0);
  }
}

TEST_CASE("raw matching mode also keeps a moving blob on one track") {
  FrameGeometry geom(128, 64);
  TcaConfig cfg;
  cfg.match_against = MatchAgainst::kRaw;
  TcaPipeline pipeline(cfg, geom);
  for (int frame = 0; frame < 30; ++frame) {
    BinaryMask blob = disc_mask(geom, 20.0 + 2.0 * frame, 32.0, 14);
    pipeline.step({"v", frame, {{0.9, blob, {}}}});
    REQUIRE(pipeline.tracks().size() == 1);
    CHECK(pipeline.tracks().front().id == 0);
  }
}

TEST_CASE("tracks die after max_absent_frames fully absent frames") {
  FrameGeometry geom(32, 32);
  TcaConfig cfg;
  cfg.max_absent_frames = 5;
  TcaPipeline pipeline(cfg, geom);
  BinaryMask blob = disc_mask(geom, 16, 16, 8);
  std::int64_t frame = 0;
  for (; frame < 10; ++frame) {
    pipeline.step({"v", frame, {{0.9, blob, {}}}});
  }
  CHECK(pipeline.tracks().size() == 1);
  for (int gap = 0; gap < 5; ++gap, ++frame) {
    pipeline.step({"v", frame, {}});
  }
  CHECK(pipeline.tracks().empty());
}

TEST_CASE("pipeline rejects out-of-order frames and bad geometry") {
  FrameGeometry geom(16, 16);
  TcaPipeline pipeline(TcaConfig{}, geom);
  pipeline.step({"v", 0, {}});
  CHECK_THROWS_AS(pipeline.step({"v", 0, {}}), InputError);
  CHECK_THROWS_AS(pipeline.step({"v", 5, {}}), InputError);

  TcaPipeline fresh(TcaConfig{}, geom);
  FrameDetections bad{"v", 0, {{0.9, BinaryMask(FrameGeometry(8, 8)), {}}}};
  CHECK_THROWS_AS(fresh.step(bad), InputError);
}

TEST_CASE("native reconstruction equals the naive full-frame computation") {
  // After one step with alpha=1 and min_present=1 the track heatmap is
  // exactly score * downsampled(det), so the expected native mask can be
  // rebuilt through the public primitives and compared to the step output.
  std::mt19937_64 rng(1212);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const FrameGeometry native(61, 45);  // non-integer ratio to the grid
  int nonempty = 0;
  for (int trial = 0; trial < 60; ++trial) {
    TcaConfig cfg;
    cfg.alpha = 1.0;
    cfg.min_present = 1;
    cfg.downsample_factor = 2 + static_cast<int>(rng() % 3);
    cfg.sigma = (trial % 3) * 1.0;
    double a = 0.2 + 0.6 * u(rng);
    double b = 0.2 + 0.6 * u(rng);
    cfg.low = std::min(a, b);
    cfg.high = std::max(a, b);
    cfg.dilation_radius = static_cast<int>(rng() % 3);

    BinaryMask det = random_mask(rng, native.width, native.height, 0.08);
    const double score = 0.95;

    TcaPipeline pipeline(cfg, native);
    auto outputs = pipeline.step({"v", 0, {{score, det, {}}}});

    Heatmap heat(downsampled_geometry(native, cfg.downsample_factor));
    BinaryMask small = downsample_mask(det, cfg.downsample_factor);
    for (std::size_t i = 0; i < small.bits().size(); ++i) {
      if (small.bits()[i]) heat.values()[i] = score;
    }
    Heatmap blurred = gaussian_blur(heat, cfg.sigma);
    BinaryMask out_small = threshold_hysteresis(blurred, cfg);
    BinaryMask expected(native);
    if (out_small.area() > 0) {
      Heatmap up = upsample_heatmap(blurred, native);
      expected = threshold_hysteresis(
          up, cfg.low, cfg.high, cfg.dilation_radius * cfg.downsample_factor);
    }
    BinaryMask got(native);
    if (!outputs.empty()) got = outputs.front().mask;
    CHECK(got == expected);
    if (expected.area() > 0) ++nonempty;
  }
  CHECK(nonempty > 20);  // the comparison must not be vacuous
}

TEST_CASE("smooth_in_place feeds the blurred heatmap back into state") {
  FrameGeometry geom(64, 64);
  TcaConfig cfg;
  cfg.smooth_in_place = true;
  TcaPipeline pipeline(cfg, geom);
  BinaryMask blob = disc_mask(geom, 32, 32, 14);
  for (int frame = 0; frame < 20; ++frame) {
    pipeline.step({"v", frame, {{0.9, blob, {}}}});
    for (const TrackState& track : pipeline.tracks()) {
      for (double v : track.heat.values()) {
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
      }
    }
  }
  // Feedback smears confidence outside the detection footprint, unlike the
  // per-frame-copy default.
  REQUIRE(pipeline.tracks().size() == 1);
  const Heatmap& heat = pipeline.tracks().front().heat;
  BinaryMask small = downsample_mask(blob, cfg.downsample_factor);
  double outside = 0.0;
  for (int y = 0; y < heat.height(); ++y) {
    for (int x = 0; x < heat.width(); ++x) {
      if (!small.at(x, y)) outside = std::max(outside, heat.at(x, y));
    }
  }
  CHECK(outside > 0.0);
}

TEST_CASE("identical streams give bit-identical outputs") {
  auto run = [] {
    FrameGeometry geom(96, 96);
    TcaConfig cfg;
    TcaPipeline pipeline(cfg, geom);
    std::vector<std::vector<TrackOutput>> all;
    for (int frame = 0; frame < 30; ++frame) {
      FrameDetections dets{"v", frame, {}};
      if (frame % 7 != 3) {
        dets.instances.push_back(
            {0.85, disc_mask(geom, 30.0 + frame, 40, 16), {}});
      }
      if (frame > 10) {
        dets.instances.push_back(
            {0.7, disc_mask(geom, 70, 70 - frame * 0.5, 10), {}});
      }
      all.push_back(pipeline.step(dets));
    }
    return all;
  };
  auto a = run();
  auto b = run();
  REQUIRE(a.size() == b.size());
  for (std::size_t f = 0; f < a.size(); ++f) {
    REQUIRE(a[f].size() == b[f].size());
    for (std::size_t i = 0; i < a[f].size(); ++i) {
      CHECK(a[f][i].track_id == b[f][i].track_id);
      CHECK(a[f][i].mask == b[f][i].mask);
      CHECK(a[f][i].score == b[f][i].score);
    }
  }
}

TEST_SUITE_END();
