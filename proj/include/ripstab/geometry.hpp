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

#ifndef RIPSTAB_GEOMETRY_HPP
#define RIPSTAB_GEOMETRY_HPP

#include <cstdint>
#include <string>

#include "ripstab/errors.hpp"

namespace ripstab {

// Pixel grid dimensions shared by all masks and heatmaps of one video.
struct FrameGeometry {
  int width = 0;
  int height = 0;

  FrameGeometry() = default;
  FrameGeometry(int w, int h) : width(w), height(h) {
    if (w < 1 || h < 1) {
      throw InputError("frame geometry must be at least 1x1, got " +
                       std::to_string(w) + "x" + std::to_string(h));
    }
  }

  std::int64_t pixel_count() const {
    return static_cast<std::int64_t>(width) * height;
  }

  bool operator==(const FrameGeometry& other) const = default;

  std::string str() const {
    return std::to_string(width) + "x" + std::to_string(height);
  }
};

// Geometry of a grid after max-pool downsampling by an integer factor.
inline FrameGeometry downsampled_geometry(const FrameGeometry& g, int factor) {
  if (factor < 1) throw InputError("downsample factor must be >= 1");
  return FrameGeometry((g.width + factor - 1) / factor,
                       (g.height + factor - 1) / factor);
}

}  // namespace ripstab

#endif  // RIPSTAB_GEOMETRY_HPP
