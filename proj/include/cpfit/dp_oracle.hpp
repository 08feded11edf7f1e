// Copyright 2026 The cpfit Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Exact optimal partitioning for discontinuous piecewise-linear fits.
//
// Without continuity the K-segment problem separates into contiguous windows,
// so a table of per-window best-line costs plus an O(K T^2) dynamic program
// gives the global optimum. Windows are 0-based and inclusive.

#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "cpfit/formulations.hpp"
#include "cpfit/series.hpp"

namespace cpfit {

struct LineFit {
  double cost = 0.0;
  double slope = 0.0;
  double intercept = 0.0;
};

/// Least-squares line on [first, last]. A single point gets slope 0.
LineFit segment_cost_l2(std::span<const double> xs, std::span<const double> ys);
/// Least-absolute-deviation line on a window. Some optimal line passes
/// through two of the window's points, so all pairs are tried: O(n^3).
LineFit segment_cost_l1(std::span<const double> xs, std::span<const double> ys);
LineFit segment_cost(std::span<const double> xs, std::span<const double> ys, Loss loss);

class SegmentCostTable {
 public:
  SegmentCostTable() = default;
  SegmentCostTable(std::span<const double> xs, std::span<const double> ys, Loss loss);

  std::size_t size() const { return n_; }
  double cost(std::size_t first, std::size_t last) const { return at(first, last).cost; }
  const LineFit& fit(std::size_t first, std::size_t last) const { return at(first, last); }

  /// Adds another table's costs (multi-dimensional fits share windows).
  /// Line parameters keep this table's values.
  SegmentCostTable& add_costs(const SegmentCostTable& other);

 private:
  const LineFit& at(std::size_t first, std::size_t last) const { return cells_[first * n_ + last]; }

  std::size_t n_ = 0;
  std::vector<LineFit> cells_;
};

struct Partition {
  std::vector<std::size_t> ends;  // last index of each block, strictly increasing
  double cost = 0.0;
};

/// Best split into exactly K nonempty blocks. Throws for K < 1 or K > T.
Partition dp_partition(const SegmentCostTable& table, int segments);
/// Best split into at most K nonempty blocks.
Partition dp_partition_upto(const SegmentCostTable& table, int segments);

/// Partition turned into a fit: per-block lines, breakpoints at the midpoints
/// between blocks, r_0 = x_1 and r_K = x_T.
PwlFit partition_fit(const TimeSeries& series, const Partition& partition, Loss loss);

PwlFit dp_optimal_partition(const TimeSeries& series, int segments, Loss loss);
PwlFit dp_optimal_partition_upto(const TimeSeries& series, int segments, Loss loss);

/// Calls visit(ends) for every split of T points into exactly K nonempty
/// blocks, in lexicographic order of the block ends. There are C(T-1, K-1).
void for_each_partition(std::size_t points, int segments,
                        const std::function<void(std::span<const std::size_t>)>& visit);

std::vector<std::vector<std::size_t>> enumerate_partitions(std::size_t points, int segments);

}  // namespace cpfit
