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

#include "ripstab/annotations.hpp"

#include <algorithm>
#include <map>

#include "ripstab/distance_transform.hpp"
#include "ripstab/log.hpp"

namespace ripstab {

BinaryMask interpolate_instance(const BinaryMask& kf_a, const BinaryMask& kf_b,
                                double t) {
  if (kf_a.geometry() != kf_b.geometry()) {
    throw InputError("interpolation endpoints differ in geometry: " +
                     kf_a.geometry().str() + " vs " + kf_b.geometry().str());
  }
  if (!(t >= 0.0 && t <= 1.0)) {
    throw InputError("interpolation parameter t must be in [0,1]");
  }
  if (t == 0.0) return kf_a;
  if (t == 1.0) return kf_b;

  const bool a_empty = kf_a.area() == 0;
  const bool b_empty = kf_b.area() == 0;
  if (a_empty && b_empty) return kf_a;
  if (a_empty != b_empty) {
    log_warn("interpolating against an empty mask, shape fades linearly");
  }

  const std::vector<double> sdf_a = signed_distance_field(kf_a);
  const std::vector<double> sdf_b = signed_distance_field(kf_b);
  BinaryMask out(kf_a.geometry());
  for (std::size_t i = 0; i < sdf_a.size(); ++i) {
    double blended = (1.0 - t) * sdf_a[i] + t * sdf_b[i];
    out.bits()[i] = blended <= 0.0 ? 1 : 0;
  }
  return out;
}

std::vector<DenseAnnotation> densify(
    const std::vector<KeyframeAnnotation>& keyframes) {
  for (std::size_t i = 1; i < keyframes.size(); ++i) {
    if (keyframes[i].frame_index == keyframes[i - 1].frame_index) {
      throw InputError("duplicate keyframe index " +
                       std::to_string(keyframes[i].frame_index));
    }
    if (keyframes[i].frame_index < keyframes[i - 1].frame_index) {
      throw InputError("keyframe indices must be strictly increasing");
    }
  }

  std::vector<DenseAnnotation> dense;
  for (std::size_t k = 0; k < keyframes.size(); ++k) {
    const KeyframeAnnotation& a = keyframes[k];
    dense.push_back({a.frame_index, Provenance::kManual, a.instances});
    if (k + 1 == keyframes.size()) break;

    const KeyframeAnnotation& b = keyframes[k + 1];
    const std::int64_t span = b.frame_index - a.frame_index;
    if (span <= 1) continue;

    std::map<std::int64_t, const BinaryMask*> in_a, in_b;
    for (const auto& inst : a.instances) in_a[inst.instance_id] = &inst.mask;
    for (const auto& inst : b.instances) in_b[inst.instance_id] = &inst.mask;

    for (std::int64_t g = a.frame_index + 1; g < b.frame_index; ++g) {
      const double t = static_cast<double>(g - a.frame_index) / span;
      DenseAnnotation frame{g, Provenance::kInterpolated, {}};
      // Iterate ids of both endpoints in ascending order.
      auto ia = in_a.begin();
      auto ib = in_b.begin();
      while (ia != in_a.end() || ib != in_b.end()) {
        if (ib == in_b.end() || (ia != in_a.end() && ia->first < ib->first)) {
          // Only in the earlier keyframe: held until the midpoint.
          if (t < 0.5) frame.instances.push_back({ia->first, *ia->second});
          ++ia;
        } else if (ia == in_a.end() || ib->first < ia->first) {
          // Only in the later keyframe: appears at the midpoint.
          if (t >= 0.5) frame.instances.push_back({ib->first, *ib->second});
          ++ib;
        } else {
          frame.instances.push_back(
              {ia->first, interpolate_instance(*ia->second, *ib->second, t)});
          ++ia;
          ++ib;
        }
      }
      dense.push_back(std::move(frame));
    }
  }
  return dense;
}

}  // namespace ripstab
