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

#include "ripstab/heatmap.hpp"

#include <algorithm>
#include <cmath>

namespace ripstab {

Heatmap::Heatmap(const FrameGeometry& geometry, std::vector<double> values)
    : geometry_(geometry), values_(std::move(values)) {
  if (static_cast<std::int64_t>(values_.size()) != geometry_.pixel_count()) {
    throw InputError("heatmap value count does not match geometry " +
                     geometry_.str());
  }
}

namespace {

std::vector<double> gaussian_kernel(double sigma) {
  const int radius = static_cast<int>(std::ceil(3.0 * sigma));
  std::vector<double> k(2 * radius + 1);
  double sum = 0.0;
  for (int i = -radius; i <= radius; ++i) {
    double w = std::exp(-0.5 * (i * i) / (sigma * sigma));
    k[i + radius] = w;
    sum += w;
  }
  for (double& w : k) w /= sum;
  return k;
}

}  // namespace

Heatmap gaussian_blur(const Heatmap& h, double sigma) {
  if (sigma < 0.0) throw InputError("blur sigma must be >= 0");
  if (sigma == 0.0) return h;
  const std::vector<double> kernel = gaussian_kernel(sigma);
  const int radius = static_cast<int>(kernel.size() / 2);
  const int w = h.width();
  const int ht = h.height();

  // Horizontal pass with replicate padding.
  Heatmap tmp(h.geometry());
  for (int y = 0; y < ht; ++y) {
    const double* row = h.values().data() + static_cast<std::size_t>(y) * w;
    double* orow = tmp.values().data() + static_cast<std::size_t>(y) * w;
    for (int x = 0; x < w; ++x) {
      double acc = 0.0;
      for (int k = -radius; k <= radius; ++k) {
        int xi = std::clamp(x + k, 0, w - 1);
        acc += kernel[k + radius] * row[xi];
      }
      orow[x] = acc;
    }
  }

  // Vertical pass.
  Heatmap out(h.geometry());
  for (int y = 0; y < ht; ++y) {
    double* orow = out.values().data() + static_cast<std::size_t>(y) * w;
    for (int x = 0; x < w; ++x) {
      double acc = 0.0;
      for (int k = -radius; k <= radius; ++k) {
        int yi = std::clamp(y + k, 0, ht - 1);
        acc += kernel[k + radius] * tmp.at(x, yi);
      }
      orow[x] = acc;
    }
  }
  return out;
}

Heatmap upsample_heatmap(const Heatmap& h, const FrameGeometry& target) {
  if (target.width < h.width() || target.height < h.height()) {
    throw InputError("upsample target " + target.str() +
                     " smaller than source " + h.geometry().str());
  }
  if (target == h.geometry()) return h;

  const int sw = h.width();
  const int sh = h.height();
  const int tw = target.width;
  const int th = target.height;

  // Precompute source column index and fraction per target column.
  std::vector<int> x0(tw);
  std::vector<double> xf(tw);
  for (int tx = 0; tx < tw; ++tx) {
    double sx = (tx + 0.5) * static_cast<double>(sw) / tw - 0.5;
    double fl = std::floor(sx);
    int i = static_cast<int>(fl);
    double f = sx - fl;
    if (i < 0) { i = 0; f = 0.0; }
    if (i >= sw - 1) { i = sw - 1; f = 0.0; }
    x0[tx] = i;
    xf[tx] = f;
  }

  Heatmap out(target);
  for (int ty = 0; ty < th; ++ty) {
    double sy = (ty + 0.5) * static_cast<double>(sh) / th - 0.5;
    double fl = std::floor(sy);
    int y0 = static_cast<int>(fl);
    double fy = sy - fl;
    if (y0 < 0) { y0 = 0; fy = 0.0; }
    if (y0 >= sh - 1) { y0 = sh - 1; fy = 0.0; }
    int y1 = std::min(y0 + 1, sh - 1);
    const double* row0 = h.values().data() + static_cast<std::size_t>(y0) * sw;
    const double* row1 = h.values().data() + static_cast<std::size_t>(y1) * sw;
    double* orow = out.values().data() + static_cast<std::size_t>(ty) * tw;
    for (int tx = 0; tx < tw; ++tx) {
      int i = x0[tx];
      int j = std::min(i + 1, sw - 1);
      double f = xf[tx];
      double top = row0[i] + f * (row0[j] - row0[i]);
      double bot = row1[i] + f * (row1[j] - row1[i]);
      orow[tx] = top + fy * (bot - top);
    }
  }
  return out;
}

}  // namespace ripstab
