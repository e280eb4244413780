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

#ifndef RIPSTAB_HUNGARIAN_HPP
#define RIPSTAB_HUNGARIAN_HPP

#include <utility>
#include <vector>

namespace ripstab {

/// Row-major rectangular cost matrix; rows are existing tracks, columns are
/// current-frame detections.
struct CostMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> data;

  CostMatrix() = default;
  CostMatrix(int r, int c, double fill = 0.0)
      : rows(r), cols(c), data(static_cast<std::size_t>(r) * c, fill) {}

  double at(int r, int c) const {
    return data[static_cast<std::size_t>(r) * cols + c];
  }
  double& at(int r, int c) {
    return data[static_cast<std::size_t>(r) * cols + c];
  }
};

struct Assignment {
  /// (row, column) pairs sorted by row index.
  std::vector<std::pair<int, int>> matches;
  std::vector<int> unmatched_rows;
  std::vector<int> unmatched_cols;
  /// Sum of matched costs, accumulated in row order.
  double total_cost = 0.0;
};

/// Minimum-cost one-to-one assignment of maximum cardinality on the smaller
/// side. Rectangular matrices are handled by implicit padding with cost 1.0.
/// Among cost ties, the lexicographically smallest (row, column) pair list is
/// returned. Throws InputError on non-finite entries.
Assignment hungarian(const CostMatrix& cost);

}  // namespace ripstab

#endif  // RIPSTAB_HUNGARIAN_HPP
