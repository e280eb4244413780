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

#ifndef RIPSTAB_MASK_HPP
#define RIPSTAB_MASK_HPP

#include <cstdint>
#include <vector>

#include "ripstab/geometry.hpp"

namespace ripstab {

/// Dense row-major binary grid, one byte per pixel (0 or 1).
class BinaryMask {
 public:
  BinaryMask() = default;
  explicit BinaryMask(const FrameGeometry& geometry)
      : geometry_(geometry), bits_(geometry.pixel_count(), 0) {}
  BinaryMask(const FrameGeometry& geometry, std::vector<std::uint8_t> bits);

  const FrameGeometry& geometry() const { return geometry_; }
  int width() const { return geometry_.width; }
  int height() const { return geometry_.height; }

  std::uint8_t at(int x, int y) const {
    return bits_[static_cast<std::size_t>(y) * geometry_.width + x];
  }
  void set(int x, int y, bool value = true) {
    bits_[static_cast<std::size_t>(y) * geometry_.width + x] = value ? 1 : 0;
  }

  const std::vector<std::uint8_t>& bits() const { return bits_; }
  std::vector<std::uint8_t>& bits() { return bits_; }

  /// Number of set pixels.
  std::int64_t area() const;
  bool empty() const { return area() == 0; }

  bool operator==(const BinaryMask& other) const = default;

 private:
  FrameGeometry geometry_{1, 1};
  std::vector<std::uint8_t> bits_ = {0};
};

/// Intersection over union of two masks on the same grid.
/// Defined as 0 when both masks are empty so that empty never matches empty.
/// Throws InputError on geometry mismatch.
double iou(const BinaryMask& a, const BinaryMask& b);

/// Morphological dilation with a square structuring element of side
/// 2*radius+1 (Chebyshev ball). Radius 0 returns the input unchanged.
BinaryMask dilate(const BinaryMask& mask, int radius);

/// Max-pool downsampling: output pixel is set iff any covered input pixel is
/// set. Output geometry is ceil(w/factor) x ceil(h/factor).
BinaryMask downsample_mask(const BinaryMask& mask, int factor);

}  // namespace ripstab

#endif  // RIPSTAB_MASK_HPP
