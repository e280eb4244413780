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

#ifndef RIPSTAB_TRACKING_HPP
#define RIPSTAB_TRACKING_HPP

#include <cstdint>
#include <span>

#include "ripstab/hungarian.hpp"
#include "ripstab/mask.hpp"

namespace ripstab {

/// Monotonically increasing per-video track identity, never reused.
using TrackId = std::uint64_t;

/// Builds the 1 - IoU cost matrix between track masks (rows) and detection
/// masks (columns), solves it optimally, then discards matched pairs whose
/// IoU falls below `iou_gate`: those rows and columns move back to the
/// unmatched sets. Pairs with zero overlap are always discarded, so empty
/// never matches empty. All masks must share one geometry.
Assignment associate(std::span<const BinaryMask> track_masks,
                     std::span<const BinaryMask> detection_masks,
                     double iou_gate);

}  // namespace ripstab

#endif  // RIPSTAB_TRACKING_HPP
