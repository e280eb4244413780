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

#ifndef RIPSTAB_HEATMAP_HPP
#define RIPSTAB_HEATMAP_HPP

#include <vector>

#include "ripstab/geometry.hpp"

namespace ripstab {

/// Dense row-major grid of confidence values, each in [0,1].
class Heatmap {
 public:
  Heatmap() = default;
  explicit Heatmap(const FrameGeometry& geometry)
      : geometry_(geometry), values_(geometry.pixel_count(), 0.0) {}
  Heatmap(const FrameGeometry& geometry, std::vector<double> values);

  const FrameGeometry& geometry() const { return geometry_; }
  int width() const { return geometry_.width; }
  int height() const { return geometry_.height; }

  double at(int x, int y) const {
    return values_[static_cast<std::size_t>(y) * geometry_.width + x];
  }
  double& at(int x, int y) {
    return values_[static_cast<std::size_t>(y) * geometry_.width + x];
  }

  const std::vector<double>& values() const { return values_; }
  std::vector<double>& values() { return values_; }

 private:
  FrameGeometry geometry_{1, 1};
  std::vector<double> values_ = {0.0};
};

/// Separable Gaussian smoothing with kernel radius ceil(3*sigma), kernel
/// renormalized to sum 1, replicate padding at the edges. sigma 0 is the
/// identity.
Heatmap gaussian_blur(const Heatmap& h, double sigma);

/// Bilinear upsampling (half-pixel center alignment) to a target geometry at
/// least as large as the source in both dimensions. Values stay in the
/// source range.
Heatmap upsample_heatmap(const Heatmap& h, const FrameGeometry& target);

}  // namespace ripstab

#endif  // RIPSTAB_HEATMAP_HPP
