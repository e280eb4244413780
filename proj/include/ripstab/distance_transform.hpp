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

#ifndef RIPSTAB_DISTANCE_TRANSFORM_HPP
#define RIPSTAB_DISTANCE_TRANSFORM_HPP

#include <vector>

#include "ripstab/mask.hpp"

namespace ripstab {

/// Exact squared Euclidean distance from every pixel to the nearest set
/// pixel (0 on set pixels), via the two-pass lower-envelope algorithm.
/// An empty mask yields `empty_value` everywhere.
std::vector<double> squared_distance_transform(const BinaryMask& mask,
                                               double empty_value);

/// Signed Euclidean distance field: negative inside the mask, positive
/// outside, clamped to +/- (hypot(w,h) + 1). An empty mask gives the
/// positive clamp everywhere, a full mask the negative clamp.
std::vector<double> signed_distance_field(const BinaryMask& mask);

}  // namespace ripstab

#endif  // RIPSTAB_DISTANCE_TRANSFORM_HPP
