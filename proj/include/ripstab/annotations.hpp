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

#ifndef RIPSTAB_ANNOTATIONS_HPP
#define RIPSTAB_ANNOTATIONS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "ripstab/mask.hpp"

namespace ripstab {

enum class Provenance { kManual, kInterpolated };

struct AnnotatedInstance {
  std::int64_t instance_id = 0;
  BinaryMask mask;
};

/// A manually annotated keyframe, instances already rasterized.
struct KeyframeAnnotation {
  std::int64_t frame_index = 0;
  std::vector<AnnotatedInstance> instances;
};

/// One frame of dense ground truth, manual or synthesized between keyframes.
struct DenseAnnotation {
  std::int64_t frame_index = 0;
  Provenance provenance = Provenance::kManual;
  std::vector<AnnotatedInstance> instances;
};

/// Shape interpolation through signed distance fields: threshold
/// (1-t)*sdf_a + t*sdf_b <= 0. t=0 reproduces kf_a bit-exactly, t=1 kf_b.
/// With exactly one empty endpoint the empty side becomes a max-distance
/// field, producing a linear fade, and a warning is emitted. Two empty
/// endpoints give an empty mask.
BinaryMask interpolate_instance(const BinaryMask& kf_a, const BinaryMask& kf_b,
                                double t);

/// Expands keyframes into per-frame annotations. Between consecutive
/// keyframes, instances sharing an id are SDF-interpolated at linear t;
/// instances present in only one endpoint are held unchanged on that
/// endpoint's side of the midpoint (alive for t < 0.5 from the earlier
/// keyframe, for t >= 0.5 from the later one). Keyframes themselves are
/// emitted as manual frames, bit-exact. Throws InputError on duplicate or
/// unsorted frame indices.
std::vector<DenseAnnotation> densify(
    const std::vector<KeyframeAnnotation>& keyframes);

}  // namespace ripstab

#endif  // RIPSTAB_ANNOTATIONS_HPP
