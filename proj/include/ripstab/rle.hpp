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

#ifndef RIPSTAB_RLE_HPP
#define RIPSTAB_RLE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "ripstab/mask.hpp"

namespace ripstab {

/// Column-major uncompressed run lengths, alternating 0-runs and 1-runs and
/// always starting with a 0-run (COCO counts semantics).
struct Rle {
  FrameGeometry geometry{1, 1};
  std::vector<std::int64_t> counts;

  bool operator==(const Rle& other) const = default;
};

Rle rle_encode(const BinaryMask& mask);

/// Inverse of rle_encode. Throws InputError when the run lengths do not sum
/// to width*height; `context` (e.g. "frame 12 instance 3") is prepended to
/// the error message when non-empty.
BinaryMask rle_decode(const Rle& rle, const std::string& context = "");

}  // namespace ripstab

#endif  // RIPSTAB_RLE_HPP
