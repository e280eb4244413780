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

#include "ripstab/mask.hpp"

#include <algorithm>

namespace ripstab {

BinaryMask::BinaryMask(const FrameGeometry& geometry,
                       std::vector<std::uint8_t> bits)
    : geometry_(geometry), bits_(std::move(bits)) {
  if (static_cast<std::int64_t>(bits_.size()) != geometry_.pixel_count()) {
    throw InputError("mask bit count " + std::to_string(bits_.size()) +
                     " does not match geometry " + geometry_.str());
  }
  for (auto& b : bits_) b = b ? 1 : 0;
}

std::int64_t BinaryMask::area() const {
  std::int64_t n = 0;
  for (std::uint8_t b : bits_) n += b;
  return n;
}

double iou(const BinaryMask& a, const BinaryMask& b) {
  if (a.geometry() != b.geometry()) {
    throw InputError("iou geometry mismatch: " + a.geometry().str() + " vs " +
                     b.geometry().str());
  }
  std::int64_t inter = 0;
  std::int64_t uni = 0;
  const auto& pa = a.bits();
  const auto& pb = b.bits();
  for (std::size_t i = 0; i < pa.size(); ++i) {
    inter += pa[i] & pb[i];
    uni += pa[i] | pb[i];
  }
  if (uni == 0) return 0.0;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

namespace {

// 1-D binary dilation along rows with window [-radius, radius], done with a
// running count of set pixels inside the window.
void dilate_rows(const std::uint8_t* in, std::uint8_t* out, int w, int h,
                 int radius) {
  for (int y = 0; y < h; ++y) {
    const std::uint8_t* row = in + static_cast<std::size_t>(y) * w;
    std::uint8_t* orow = out + static_cast<std::size_t>(y) * w;
    int count = 0;
    for (int x = 0; x < std::min(radius, w); ++x) count += row[x];
    for (int x = 0; x < w; ++x) {
      int enter = x + radius;
      if (enter < w) count += row[enter];
      orow[x] = count > 0 ? 1 : 0;
      int leave = x - radius;
      if (leave >= 0) count -= row[leave];
    }
  }
}

void dilate_cols(const std::uint8_t* in, std::uint8_t* out, int w, int h,
                 int radius) {
  std::vector<int> count(w, 0);
  for (int y = 0; y < std::min(radius, h); ++y) {
    const std::uint8_t* row = in + static_cast<std::size_t>(y) * w;
    for (int x = 0; x < w; ++x) count[x] += row[x];
  }
  for (int y = 0; y < h; ++y) {
    int enter = y + radius;
    if (enter < h) {
      const std::uint8_t* row = in + static_cast<std::size_t>(enter) * w;
      for (int x = 0; x < w; ++x) count[x] += row[x];
    }
    std::uint8_t* orow = out + static_cast<std::size_t>(y) * w;
    for (int x = 0; x < w; ++x) orow[x] = count[x] > 0 ? 1 : 0;
    int leave = y - radius;
    if (leave >= 0) {
      const std::uint8_t* row = in + static_cast<std::size_t>(leave) * w;
      for (int x = 0; x < w; ++x) count[x] -= row[x];
    }
  }
}

}  // namespace

BinaryMask dilate(const BinaryMask& mask, int radius) {
  if (radius < 0) throw InputError("dilation radius must be >= 0");
  if (radius == 0) return mask;
  const int w = mask.width();
  const int h = mask.height();
  BinaryMask tmp(mask.geometry());
  BinaryMask out(mask.geometry());
  dilate_rows(mask.bits().data(), tmp.bits().data(), w, h, radius);
  dilate_cols(tmp.bits().data(), out.bits().data(), w, h, radius);
  return out;
}

BinaryMask downsample_mask(const BinaryMask& mask, int factor) {
  if (factor < 1) throw InputError("downsample factor must be >= 1");
  if (factor == 1) return mask;
  const FrameGeometry out_geom = downsampled_geometry(mask.geometry(), factor);
  BinaryMask out(out_geom);
  const int w = mask.width();
  const int h = mask.height();
  for (int y = 0; y < h; ++y) {
    const std::uint8_t* row = mask.bits().data() + static_cast<std::size_t>(y) * w;
    std::uint8_t* orow =
        out.bits().data() + static_cast<std::size_t>(y / factor) * out_geom.width;
    for (int x = 0; x < w; ++x) {
      if (row[x]) orow[x / factor] = 1;
    }
  }
  return out;
}

}  // namespace ripstab
