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

#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace cpfit {

/// Observations (x_t, y_t) with strictly increasing x and at least two points.
class TimeSeries {
 public:
  /// Throws Error{kInvalidSeries} when the invariants do not hold.
  TimeSeries(std::vector<double> xs, std::vector<double> ys);

  /// x_t = 1..T.
  static TimeSeries indexed(std::vector<double> ys);

  std::size_t size() const { return xs_.size(); }
  std::span<const double> xs() const { return xs_; }
  std::span<const double> ys() const { return ys_; }
  double x(std::size_t t) const { return xs_[t]; }
  double y(std::size_t t) const { return ys_[t]; }

  /// Contiguous window [first, last] (0-based, inclusive). Windows of one point
  /// are allowed here even though a TimeSeries needs two.
  std::span<const double> xs(std::size_t first, std::size_t last) const {
    return std::span<const double>(xs_).subspan(first, last - first + 1);
  }
  std::span<const double> ys(std::size_t first, std::size_t last) const {
    return std::span<const double>(ys_).subspan(first, last - first + 1);
  }

 private:
  std::vector<double> xs_;
  std::vector<double> ys_;
};

/// D response sequences sharing one strictly increasing domain.
class MultiSeries {
 public:
  MultiSeries(std::vector<double> xs, std::vector<std::vector<double>> ys);

  std::size_t size() const { return xs_.size(); }
  std::size_t dims() const { return ys_.size(); }
  std::span<const double> xs() const { return xs_; }
  std::span<const double> ys(std::size_t d) const { return ys_[d]; }

  /// Dimension d as a univariate series.
  TimeSeries dimension(std::size_t d) const { return TimeSeries(xs_, ys_[d]); }
  static MultiSeries from(const TimeSeries& series);

 private:
  std::vector<double> xs_;
  std::vector<std::vector<double>> ys_;
};

struct DedupResult {
  std::vector<double> xs;
  std::vector<double> ys;
  std::size_t merged = 0;
};

/// Collapses runs of equal x (input must be nondecreasing in x) to a single
/// point whose y is the mean of the run.
DedupResult deduplicate_x(std::span<const double> xs, std::span<const double> ys);

}  // namespace cpfit
