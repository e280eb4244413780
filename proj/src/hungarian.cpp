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

#include "ripstab/hungarian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ripstab/errors.hpp"

namespace ripstab {

namespace {

constexpr double kPadCost = 1.0;
constexpr double kTieEps = 1e-9;
// Above this size the lexicographic tie-break refinement is skipped; the
// plain solver result is already deterministic.
constexpr int kLexRefineLimit = 48;

// Square min-cost assignment via shortest augmenting paths with potentials
// (Jonker-Volgenant). cost(i, j) looks up the padded matrix. Returns the
// column assigned to each row.
std::vector<int> solve_square(int n, const auto& cost) {
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      int i0 = p[j0], j1 = -1;
      double delta = inf;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }
  std::vector<int> row_to_col(n, -1);
  for (int j = 1; j <= n; ++j) {
    if (p[j] > 0) row_to_col[p[j] - 1] = j - 1;
  }
  return row_to_col;
}

// Minimum total cost of assigning the given rows to a subset of the given
// columns, on the padded square matrix.
double completion_cost(const std::vector<int>& rows,
                       const std::vector<int>& cols, const auto& cost) {
  const int n = static_cast<int>(rows.size());
  if (n == 0) return 0.0;
  auto sub = [&](int r, int c) { return cost(rows[r], cols[c]); };
  std::vector<int> asg = solve_square(n, sub);
  double total = 0.0;
  for (int r = 0; r < n; ++r) total += sub(r, asg[r]);
  return total;
}

}  // namespace

Assignment hungarian(const CostMatrix& cost) {
  const int rows = cost.rows;
  const int cols = cost.cols;
  for (double c : cost.data) {
    if (!std::isfinite(c)) throw InputError("cost matrix entry is not finite");
  }

  Assignment out;
  if (rows == 0 || cols == 0) {
    for (int r = 0; r < rows; ++r) out.unmatched_rows.push_back(r);
    for (int c = 0; c < cols; ++c) out.unmatched_cols.push_back(c);
    return out;
  }

  const int n = std::max(rows, cols);
  auto padded = [&](int r, int c) {
    return (r < rows && c < cols) ? cost.at(r, c) : kPadCost;
  };

  std::vector<int> row_to_col = solve_square(n, padded);
  double best_total = 0.0;
  for (int r = 0; r < n; ++r) best_total += padded(r, row_to_col[r]);

  if (n <= kLexRefineLimit) {
    // Rebuild the assignment row by row, taking for each real row the
    // smallest column that still admits an optimal completion. Real columns
    // come before pad columns, so ties resolve to the lexicographically
    // smallest (row, column) pair list.
    std::vector<int> free_cols(n);
    for (int c = 0; c < n; ++c) free_cols[c] = c;
    std::vector<int> remaining_rows(n);
    for (int r = 0; r < n; ++r) remaining_rows[r] = r;
    std::vector<int> refined(n, -1);
    double partial = 0.0;
    for (int r = 0; r < rows && r < n; ++r) {
      remaining_rows.erase(remaining_rows.begin());
      bool fixed = false;
      for (std::size_t k = 0; k < free_cols.size() && !fixed; ++k) {
        int c = free_cols[k];
        double cand = partial + padded(r, c);
        std::vector<int> rest_cols = free_cols;
        rest_cols.erase(rest_cols.begin() + k);
        cand += completion_cost(remaining_rows, rest_cols, padded);
        if (cand <= best_total + kTieEps) {
          refined[r] = c;
          partial += padded(r, c);
          free_cols.erase(free_cols.begin() + k);
          fixed = true;
        }
        // Pad columns are interchangeable; if the first one fails, the rest
        // fail too.
        if (!fixed && c >= cols) break;
      }
      if (!fixed) {
        throw InternalError("hungarian refinement failed to place a row");
      }
    }
    // Remaining (pad) rows take any leftover column; they never reach the
    // output.
    for (int r = rows; r < n; ++r) {
      refined[r] = free_cols.front();
      free_cols.erase(free_cols.begin());
    }
    row_to_col = refined;
  }

  std::vector<char> col_matched(cols, 0);
  for (int r = 0; r < rows; ++r) {
    int c = row_to_col[r];
    if (c >= 0 && c < cols) {
      out.matches.emplace_back(r, c);
      out.total_cost += cost.at(r, c);
      col_matched[c] = 1;
    } else {
      out.unmatched_rows.push_back(r);
    }
  }
  for (int c = 0; c < cols; ++c) {
    if (!col_matched[c]) out.unmatched_cols.push_back(c);
  }
  return out;
}

}  // namespace ripstab
