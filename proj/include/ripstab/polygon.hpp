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

#ifndef RIPSTAB_POLYGON_HPP
#define RIPSTAB_POLYGON_HPP

#include <vector>

#include "ripstab/mask.hpp"

namespace ripstab {

struct Vertex {
  double x = 0.0;
  double y = 0.0;
};

/// Closed ring of sub-pixel vertices. The closing edge from the last vertex
/// back to the first is implicit.
class Polygon {
 public:
  /// Validates (>= 3 vertices, no NaN) and clamps coordinates into
  /// [0,width] x [0,height]. Clamping is logged at warn level.
  Polygon(std::vector<Vertex> vertices, const FrameGeometry& bounds);

  /// From a flat [x0,y0,x1,y1,...] list, the interchange layout.
  static Polygon from_flat(const std::vector<double>& coords,
                           const FrameGeometry& bounds);

  const std::vector<Vertex>& vertices() const { return vertices_; }

 private:
  std::vector<Vertex> vertices_;
};

/// Scanline even-odd fill: a pixel is set iff its center (x+0.5, y+0.5) lies
/// inside the ring. A degenerate zero-area ring yields an empty mask and a
/// warning, not an error.
BinaryMask rasterize(const Polygon& polygon, const FrameGeometry& geometry);

}  // namespace ripstab

#endif  // RIPSTAB_POLYGON_HPP
