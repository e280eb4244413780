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

#include <doctest.h>

#include "ripstab/synth.hpp"
#include "ripstab/tca.hpp"
#include "test_support.hpp"

using namespace ripstab;
using namespace ripstab::testing;

namespace {

ScenarioSpec basic_spec() {
  ScenarioSpec spec;
  spec.seed = 42;
  spec.geometry = FrameGeometry(96, 80);
  spec.num_frames = 40;
  BlobSpec blob;
  blob.trajectory = {{0, 30, 40}, {39, 60, 40}};
  blob.base_radius = 12;
  blob.deform_amplitude = 0.08;
  blob.score = 0.9;
  spec.blobs.push_back(blob);
  return spec;
}

}  // namespace

TEST_SUITE_BEGIN("synth");

TEST_CASE("identical seed and spec give bit-identical streams") {
  ScenarioSpec spec = basic_spec();
  spec.noise.spurious_rate = 0.3;
  spec.noise.spurious_lifetime = 2;
  spec.noise.drop_prob = 0.1;
  spec.noise.jitter_px = 1.0;
  spec.noise.score_noise = 0.05;

  auto a = collect(spec);
  auto b = collect(spec);
  REQUIRE(a.size() == b.size());
  for (std::size_t f = 0; f < a.size(); ++f) {
    REQUIRE(a[f].detections.instances.size() == b[f].detections.instances.size());
    for (std::size_t i = 0; i < a[f].detections.instances.size(); ++i) {
      CHECK(a[f].detections.instances[i].score ==
            b[f].detections.instances[i].score);
      CHECK(a[f].detections.instances[i].mask ==
            b[f].detections.instances[i].mask);
    }
  }
}

TEST_CASE("changing the seed changes noise but not the ground truth") {
  ScenarioSpec spec = basic_spec();
  spec.noise.spurious_rate = 0.4;
  spec.noise.spurious_lifetime = 2;
  spec.noise.drop_prob = 0.2;

  ScenarioSpec other = spec;
  other.seed = 43;

  auto a = collect(spec);
  auto b = collect(other);
  REQUIRE(a.size() == b.size());
  bool any_noise_difference = false;
  for (std::size_t f = 0; f < a.size(); ++f) {
    REQUIRE(a[f].ground_truth.instances.size() ==
            b[f].ground_truth.instances.size());
    for (std::size_t i = 0; i < a[f].ground_truth.instances.size(); ++i) {
      CHECK(a[f].ground_truth.instances[i].mask ==
            b[f].ground_truth.instances[i].mask);
    }
    if (a[f].detections.instances.size() != b[f].detections.instances.size()) {
      any_noise_difference = true;
    }
  }
  CHECK(any_noise_difference);
}

TEST_CASE("zero noise: detections equal ground truth every frame") {
  ScenarioSpec spec = basic_spec();
  auto frames = collect(spec);
  REQUIRE(frames.size() == 40);
  for (const SynthFrame& frame : frames) {
    REQUIRE(frame.detections.instances.size() ==
            frame.ground_truth.instances.size());
    for (std::size_t i = 0; i < frame.detections.instances.size(); ++i) {
      CHECK(frame.detections.instances[i].mask ==
            frame.ground_truth.instances[i].mask);
      CHECK(frame.detections.instances[i].score == 0.9);
    }
    CHECK(frame.spurious.area() == 0);
  }
}

TEST_CASE("drop bursts remove the blob on exactly the given frames") {
  ScenarioSpec spec = basic_spec();
  spec.noise.drop_bursts = {{10, 3}};
  auto frames = collect(spec);
  for (const SynthFrame& frame : frames) {
    bool dropped =
        frame.frame_index >= 10 && frame.frame_index < 13;
    CHECK(frame.detections.instances.size() == (dropped ? 0u : 1u));
    CHECK(frame.ground_truth.instances.size() == 1);  // ground truth stays
  }
}

TEST_CASE("spurious spawn count stays within the binomial band at this seed") {
  ScenarioSpec spec = basic_spec();
  spec.num_frames = 200;
  spec.blobs[0].trajectory = {{0, 30, 40}, {199, 60, 40}};
  spec.noise.spurious_rate = 0.3;
  spec.noise.spurious_lifetime = 1;
  auto frames = collect(spec);
  int spurious_detections = 0;
  for (const SynthFrame& frame : frames) {
    spurious_detections +=
        static_cast<int>(frame.detections.instances.size()) -
        static_cast<int>(frame.ground_truth.instances.size());
  }
  // Lifetime 1, so detections == spawns.
  CHECK(spurious_detections >= 40);
  CHECK(spurious_detections <= 80);
}

TEST_CASE("camera pan shifts ground truth and detections together") {
  ScenarioSpec spec = basic_spec();
  spec.blobs[0].trajectory = {{0, 30, 40}};
  spec.camera.pan_vx = 1.0;
  auto frames = collect(spec);
  // With a static trajectory, pan moves the blob one pixel per frame.
  CHECK(frames[0].ground_truth.instances[0].mask !=
        frames[10].ground_truth.instances[0].mask);
  CHECK(iou(frames[0].detections.instances[0].mask,
            frames[0].ground_truth.instances[0].mask) == 1.0);
}

TEST_CASE("a blob fully outside the frame is skipped with a warning") {
  ScenarioSpec spec = basic_spec();
  spec.blobs[0].trajectory = {{0, -200, -200}};
  spec.num_frames = 3;
  auto frames = collect(spec);
  for (const SynthFrame& frame : frames) {
    CHECK(frame.ground_truth.instances.empty());
    CHECK(frame.detections.instances.empty());
  }

  // Partially visible blobs keep their on-frame pixels.
  spec.blobs[0].trajectory = {{0, 0, 40}};
  auto partial = collect(spec);
  CHECK(partial[0].ground_truth.instances.size() == 1);
  CHECK(partial[0].ground_truth.instances[0].mask.area() > 0);
  CHECK(partial[0].ground_truth.instances[0].mask.area() <
        disc_mask(spec.geometry, 40, 40, 12).area());
}

TEST_CASE("clean scenario with identity config reproduces ground truth") {
  ScenarioSpec spec = basic_spec();
  auto frames = collect(spec);
  TcaPipeline pipeline(TcaConfig::identity(), spec.geometry);
  for (const SynthFrame& frame : frames) {
    auto outputs = pipeline.step(frame.detections);
    REQUIRE(outputs.size() == frame.ground_truth.instances.size());
    for (std::size_t i = 0; i < outputs.size(); ++i) {
      CHECK(outputs[i].mask == frame.ground_truth.instances[i].mask);
    }
  }
}

TEST_SUITE_END();
