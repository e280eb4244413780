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

#include "ripstab/distance_transform.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ripstab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// 1-D squared distance transform (lower envelope of parabolas).
void dt_1d(const double* f, double* d, int n, int* v, double* z) {
  int k = 0;
  v[0] = 0;
  z[0] = -kInf;
  z[1] = kInf;
  for (int q = 1; q < n; ++q) {
    if (f[q] == kInf) continue;
    double s;
    while (true) {
      if (f[v[k]] == kInf) {
        // Previous parabola is at infinity, drop it.
        if (k == 0) {
          v[0] = q;
          z[0] = -kInf;
          z[1] = kInf;
          break;
        }
        --k;
        continue;
      }
      s = ((f[q] + q * static_cast<double>(q)) -
           (f[v[k]] + v[k] * static_cast<double>(v[k]))) /
          (2.0 * q - 2.0 * v[k]);
      if (s <= z[k]) {
        --k;
      } else {
        ++k;
        v[k] = q;
        z[k] = s;
        z[k + 1] = kInf;
        break;
      }
    }
  }
  k = 0;
  for (int q = 0; q < n; ++q) {
    while (z[k + 1] < q) ++k;
    double dq = q - static_cast<double>(v[k]);
    d[q] = f[v[k]] == kInf ? kInf : dq * dq + f[v[k]];
  }
}

}  // namespace

std::vector<double> squared_distance_transform(const BinaryMask& mask,
                                               double empty_value) {
  const int w = mask.width();
  const int h = mask.height();
  const std::size_t n = static_cast<std::size_t>(w) * h;
  std::vector<double> dist(n);
  bool any = false;
  for (std::size_t i = 0; i < n; ++i) {
    if (mask.bits()[i]) {
      dist[i] = 0.0;
      any = true;
    } else {
      dist[i] = kInf;
    }
  }
  if (!any) {
    std::fill(dist.begin(), dist.end(), empty_value);
    return dist;
  }

  const int m = std::max(w, h);
  std::vector<double> f(m), d(m), z(m + 1);
  std::vector<int> v(m);

  // Columns first, then rows.
  for (int x = 0; x < w; ++x) {
    for (int y = 0; y < h; ++y) f[y] = dist[static_cast<std::size_t>(y) * w + x];
    dt_1d(f.data(), d.data(), h, v.data(), z.data());
    for (int y = 0; y < h; ++y) dist[static_cast<std::size_t>(y) * w + x] = d[y];
  }
  for (int y = 0; y < h; ++y) {
    double* row = dist.data() + static_cast<std::size_t>(y) * w;
    std::copy(row, row + w, f.begin());
    dt_1d(f.data(), d.data(), w, v.data(), z.data());
    std::copy(d.begin(), d.begin() + w, row);
  }
  return dist;
}

std::vector<double> signed_distance_field(const BinaryMask& mask) {
  const int w = mask.width();
  const int h = mask.height();
  const double clamp_value = std::hypot(w, h) + 1.0;
  const double clamp_sq = clamp_value * clamp_value;

  std::vector<double> outside = squared_distance_transform(mask, clamp_sq);

  BinaryMask complement(mask.geometry());
  for (std::size_t i = 0; i < mask.bits().size(); ++i) {
    complement.bits()[i] = mask.bits()[i] ? 0 : 1;
  }
  std::vector<double> inside = squared_distance_transform(complement, clamp_sq);

  std::vector<double> sdf(outside.size());
  for (std::size_t i = 0; i < sdf.size(); ++i) {
    double d = mask.bits()[i] ? -std::sqrt(inside[i]) : std::sqrt(outside[i]);
    sdf[i] = std::clamp(d, -clamp_value, clamp_value);
  }
  return sdf;
}

}  // namespace ripstab
