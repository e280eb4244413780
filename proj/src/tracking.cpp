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

#include "ripstab/tracking.hpp"

#include <algorithm>

namespace ripstab {

Assignment associate(std::span<const BinaryMask> track_masks,
                     std::span<const BinaryMask> detection_masks,
                     double iou_gate) {
  const int rows = static_cast<int>(track_masks.size());
  const int cols = static_cast<int>(detection_masks.size());

  CostMatrix cost(rows, cols);
  std::vector<double> ious(static_cast<std::size_t>(rows) * cols, 0.0);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      double ov = iou(track_masks[r], detection_masks[c]);
      ious[static_cast<std::size_t>(r) * cols + c] = ov;
      cost.at(r, c) = 1.0 - ov;
    }
  }

  Assignment asg = hungarian(cost);

  Assignment gated;
  gated.unmatched_rows = asg.unmatched_rows;
  gated.unmatched_cols = asg.unmatched_cols;
  for (auto [r, c] : asg.matches) {
    double ov = ious[static_cast<std::size_t>(r) * cols + c];
    if (ov >= iou_gate && ov > 0.0) {
      gated.matches.emplace_back(r, c);
      gated.total_cost += cost.at(r, c);
    } else {
      gated.unmatched_rows.push_back(r);
      gated.unmatched_cols.push_back(c);
    }
  }
  std::sort(gated.unmatched_rows.begin(), gated.unmatched_rows.end());
  std::sort(gated.unmatched_cols.begin(), gated.unmatched_cols.end());
  return gated;
}

}  // namespace ripstab
