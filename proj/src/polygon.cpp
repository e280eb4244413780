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

#include "ripstab/polygon.hpp"

#include <algorithm>
#include <cmath>

#include "ripstab/log.hpp"

namespace ripstab {

Polygon::Polygon(std::vector<Vertex> vertices, const FrameGeometry& bounds)
    : vertices_(std::move(vertices)) {
  if (vertices_.size() < 3) {
    throw InputError("polygon must have at least 3 vertices, got " +
                     std::to_string(vertices_.size()));
  }
  bool clamped = false;
  for (auto& v : vertices_) {
    if (std::isnan(v.x) || std::isnan(v.y)) {
      throw InputError("polygon vertex has NaN coordinate");
    }
    double cx = std::clamp(v.x, 0.0, static_cast<double>(bounds.width));
    double cy = std::clamp(v.y, 0.0, static_cast<double>(bounds.height));
    if (cx != v.x || cy != v.y) clamped = true;
    v.x = cx;
    v.y = cy;
  }
  if (clamped) {
    log_warn("polygon coordinates clamped to frame bounds " + bounds.str());
  }
}

Polygon Polygon::from_flat(const std::vector<double>& coords,
                           const FrameGeometry& bounds) {
  if (coords.size() % 2 != 0) {
    throw InputError("flat polygon list must have an even number of values");
  }
  std::vector<Vertex> verts;
  verts.reserve(coords.size() / 2);
  for (std::size_t i = 0; i + 1 < coords.size(); i += 2) {
    verts.push_back({coords[i], coords[i + 1]});
  }
  return Polygon(std::move(verts), bounds);
}

namespace {

double ring_area(const std::vector<Vertex>& v) {
  double acc = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Vertex& a = v[i];
    const Vertex& b = v[(i + 1) % v.size()];
    acc += a.x * b.y - b.x * a.y;
  }
  return 0.5 * std::abs(acc);
}

}  // namespace

BinaryMask rasterize(const Polygon& polygon, const FrameGeometry& geometry) {
  BinaryMask out(geometry);
  const auto& verts = polygon.vertices();
  if (ring_area(verts) == 0.0) {
    log_warn("degenerate zero-area polygon rasterizes to an empty mask");
    return out;
  }

  std::vector<double> xs;
  for (int y = 0; y < geometry.height; ++y) {
    const double cy = y + 0.5;
    xs.clear();
    // Even-odd rule: collect crossings of edges that straddle the scanline.
    // Edges are half-open in y so shared vertices are counted once.
    for (std::size_t i = 0; i < verts.size(); ++i) {
      const Vertex& a = verts[i];
      const Vertex& b = verts[(i + 1) % verts.size()];
      if ((a.y <= cy && b.y > cy) || (b.y <= cy && a.y > cy)) {
        double t = (cy - a.y) / (b.y - a.y);
        xs.push_back(a.x + t * (b.x - a.x));
      }
    }
    std::sort(xs.begin(), xs.end());
    std::uint8_t* row =
        out.bits().data() + static_cast<std::size_t>(y) * geometry.width;
    for (std::size_t k = 0; k + 1 < xs.size(); k += 2) {
      // Pixel centers x+0.5 in [xs[k], xs[k+1]).
      int x0 = static_cast<int>(std::ceil(xs[k] - 0.5));
      int x1 = static_cast<int>(std::ceil(xs[k + 1] - 0.5)) - 1;
      x0 = std::max(x0, 0);
      x1 = std::min(x1, geometry.width - 1);
      for (int x = x0; x <= x1; ++x) row[x] = 1;
    }
  }
  return out;
}

}  // namespace ripstab
