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

#include "cpfit/dp_oracle.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "cpfit/error.hpp"

namespace cpfit {
namespace {

constexpr double kBig = std::numeric_limits<double>::infinity();

void check_window(std::span<const double> xs, std::span<const double> ys) {
  if (xs.empty() || xs.size() != ys.size()) {
    throw Error(ErrorCode::kInvalidArgument, "segment window is empty or ragged");
  }
}

void check_k(std::size_t n, int k) {
  if (k < 1 || static_cast<std::size_t>(k) > n) {
    throw Error(ErrorCode::kInvalidArgument,
                "segment count must lie in [1, T], got K=" + std::to_string(k) +
                    " with T=" + std::to_string(n));
  }
}

Partition run_dp(const SegmentCostTable& table, int K, bool upto) {
  const std::size_t n = table.size();
  check_k(n, K);
  // best[k][t]: cost of splitting points [0, t] into k+1 blocks.
  std::vector<std::vector<double>> best(K, std::vector<double>(n, kBig));
  std::vector<std::vector<std::size_t>> from(K, std::vector<std::size_t>(n, 0));
  for (std::size_t t = 0; t < n; ++t) best[0][t] = table.cost(0, t);
  for (int k = 1; k < K; ++k) {
    for (std::size_t t = static_cast<std::size_t>(k); t < n; ++t) {
      for (std::size_t s = static_cast<std::size_t>(k); s <= t; ++s) {
        const double v = best[k - 1][s - 1] + table.cost(s, t);
        if (v < best[k][t]) {
          best[k][t] = v;
          from[k][t] = s;
        }
      }
    }
  }
  int k = K - 1;
  if (upto) {
    // Fewer blocks win ties.
    for (int c = 0; c < K; ++c) {
      if (best[c][n - 1] < best[k][n - 1] || (c < k && best[c][n - 1] == best[k][n - 1])) k = c;
    }
  }
  Partition out;
  out.cost = best[k][n - 1];
  out.ends.resize(k + 1);
  std::size_t t = n - 1;
  for (int c = k; c >= 0; --c) {
    out.ends[c] = t;
    if (c > 0) t = from[c][t] - 1;
  }
  return out;
}

}  // namespace

LineFit segment_cost_l2(std::span<const double> xs, std::span<const double> ys) {
  check_window(xs, ys);
  const double n = static_cast<double>(xs.size());
  if (xs.size() == 1) return {0.0, 0.0, ys[0]};
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  LineFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - (f.slope * xs[i] + f.intercept);
    f.cost += r * r;
  }
  return f;
}

LineFit segment_cost_l1(std::span<const double> xs, std::span<const double> ys) {
  check_window(xs, ys);
  if (xs.size() == 1) return {0.0, 0.0, ys[0]};
  LineFit best{kBig, 0.0, 0.0};
  for (std::size_t a = 0; a < xs.size(); ++a) {
    for (std::size_t b = a + 1; b < xs.size(); ++b) {
      const double m = (ys[b] - ys[a]) / (xs[b] - xs[a]);
      const double c = ys[a] - m * xs[a];
      double cost = 0.0;
      for (std::size_t i = 0; i < xs.size(); ++i) cost += std::abs(ys[i] - (m * xs[i] + c));
      if (cost < best.cost) best = {cost, m, c};
    }
  }
  return best;
}

LineFit segment_cost(std::span<const double> xs, std::span<const double> ys, Loss loss) {
  return loss == Loss::kL1 ? segment_cost_l1(xs, ys) : segment_cost_l2(xs, ys);
}

SegmentCostTable::SegmentCostTable(std::span<const double> xs, std::span<const double> ys,
                                   Loss loss)
    : n_(xs.size()), cells_(n_ * n_) {
  check_window(xs, ys);
  for (std::size_t a = 0; a < n_; ++a) {
    for (std::size_t b = a; b < n_; ++b) {
      cells_[a * n_ + b] = segment_cost(xs.subspan(a, b - a + 1), ys.subspan(a, b - a + 1), loss);
    }
  }
}

SegmentCostTable& SegmentCostTable::add_costs(const SegmentCostTable& other) {
  if (other.n_ != n_) throw Error(ErrorCode::kInvalidArgument, "cost tables differ in size");
  for (std::size_t i = 0; i < cells_.size(); ++i) cells_[i].cost += other.cells_[i].cost;
  return *this;
}

Partition dp_partition(const SegmentCostTable& table, int segments) {
  return run_dp(table, segments, false);
}

Partition dp_partition_upto(const SegmentCostTable& table, int segments) {
  return run_dp(table, segments, true);
}

PwlFit partition_fit(const TimeSeries& series, const Partition& partition, Loss loss) {
  const std::size_t n = series.size();
  PwlFit fit;
  fit.assignment.assign(n, 0);
  fit.breakpoints.push_back(series.x(0));
  std::size_t first = 0;
  for (std::size_t j = 0; j < partition.ends.size(); ++j) {
    const std::size_t last = partition.ends[j];
    const LineFit f =
        segment_cost(series.xs(first, last), series.ys(first, last), loss);
    fit.slopes.push_back(f.slope);
    fit.intercepts.push_back(f.intercept);
    for (std::size_t t = first; t <= last; ++t) fit.assignment[t] = static_cast<int>(j);
    if (j + 1 < partition.ends.size()) {
      fit.breakpoints.push_back(0.5 * (series.x(last) + series.x(last + 1)));
    }
    first = last + 1;
  }
  fit.breakpoints.push_back(series.x(n - 1));
  fit.fitted.resize(n);
  for (std::size_t t = 0; t < n; ++t) {
    const int j = fit.assignment[t];
    fit.fitted[t] = fit.slopes[j] * series.x(t) + fit.intercepts[j];
  }
  fit.objective = fitting_error(series.ys(), fit.fitted, loss);
  return fit;
}

PwlFit dp_optimal_partition(const TimeSeries& series, int segments, Loss loss) {
  const SegmentCostTable table(series.xs(), series.ys(), loss);
  return partition_fit(series, dp_partition(table, segments), loss);
}

PwlFit dp_optimal_partition_upto(const TimeSeries& series, int segments, Loss loss) {
  const SegmentCostTable table(series.xs(), series.ys(), loss);
  return partition_fit(series, dp_partition_upto(table, segments), loss);
}

void for_each_partition(std::size_t points, int segments,
                        const std::function<void(std::span<const std::size_t>)>& visit) {
  check_k(points, segments);
  const std::size_t K = static_cast<std::size_t>(segments);
  std::vector<std::size_t> ends(K);
  // ends[K-1] is fixed at points-1; the first K-1 ends are a strictly
  // increasing combination drawn from [0, points-2].
  for (std::size_t j = 0; j + 1 < K; ++j) ends[j] = j;
  ends[K - 1] = points - 1;
  while (true) {
    visit(ends);
    if (K == 1) return;
    std::size_t i = K - 1;
    while (i > 0) {
      --i;
      const std::size_t cap = points - 1 - (K - 1 - i);
      if (ends[i] < cap) {
        ++ends[i];
        for (std::size_t k = i + 1; k + 1 < K; ++k) ends[k] = ends[k - 1] + 1;
        break;
      }
      if (i == 0) return;
    }
  }
}

std::vector<std::vector<std::size_t>> enumerate_partitions(std::size_t points, int segments) {
  std::vector<std::vector<std::size_t>> out;
  for_each_partition(points, segments,
                     [&](std::span<const std::size_t> e) { out.emplace_back(e.begin(), e.end()); });
  return out;
}

}  // namespace cpfit
