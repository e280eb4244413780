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

#include "ripstab/rle.hpp"

namespace ripstab {

Rle rle_encode(const BinaryMask& mask) {
  Rle rle;
  rle.geometry = mask.geometry();
  const int w = mask.width();
  const int h = mask.height();
  std::uint8_t current = 0;  // counts start with a 0-run
  std::int64_t run = 0;
  for (int x = 0; x < w; ++x) {
    for (int y = 0; y < h; ++y) {
      std::uint8_t v = mask.at(x, y);
      if (v == current) {
        ++run;
      } else {
        rle.counts.push_back(run);
        current = v;
        run = 1;
      }
    }
  }
  rle.counts.push_back(run);
  return rle;
}

BinaryMask rle_decode(const Rle& rle, const std::string& context) {
  const FrameGeometry& g = rle.geometry;
  std::int64_t total = 0;
  for (std::int64_t c : rle.counts) {
    if (c < 0) {
      throw InputError((context.empty() ? "" : context + ": ") +
                       "negative RLE run length");
    }
    total += c;
  }
  if (total != g.pixel_count()) {
    throw InputError((context.empty() ? "" : context + ": ") +
                     "RLE run lengths sum to " + std::to_string(total) +
                     ", expected " + std::to_string(g.pixel_count()) +
                     " for geometry " + g.str());
  }
  BinaryMask mask(g);
  const int h = g.height;
  std::int64_t pos = 0;  // column-major linear index
  std::uint8_t value = 0;
  for (std::int64_t c : rle.counts) {
    if (value) {
      for (std::int64_t i = pos; i < pos + c; ++i) {
        int x = static_cast<int>(i / h);
        int y = static_cast<int>(i % h);
        mask.set(x, y);
      }
    }
    pos += c;
    value ^= 1;
  }
  return mask;
}

}  // namespace ripstab
