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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "cpfit/dp_oracle.hpp"
#include "cpfit/error.hpp"

namespace cpfit {
namespace {

TEST(DpOracle, LineCosts) {
  const std::vector<double> x{1, 2, 3}, y{0, 1, 0};
  const LineFit l2 = segment_cost_l2(x, y);
  EXPECT_NEAR(l2.cost, 2.0 / 3.0, 1e-12);
  EXPECT_NEAR(l2.slope, 0.0, 1e-12);
  EXPECT_NEAR(l2.intercept, 1.0 / 3.0, 1e-12);
  EXPECT_NEAR(segment_cost_l1(x, y).cost, 1.0, 1e-12);
  const std::vector<double> one{2}, oy{7};
  EXPECT_EQ(segment_cost_l2(one, oy).cost, 0.0);
  EXPECT_DOUBLE_EQ(segment_cost_l2(one, oy).intercept, 7.0);
  const std::vector<double> two{1, 3}, ty{1, 5};
  EXPECT_NEAR(segment_cost_l1(two, ty).cost, 0.0, 1e-12);
  EXPECT_NEAR(segment_cost_l1(two, ty).slope, 2.0, 1e-12);
}

TEST(DpOracle, PartitionCounts) {
  // compositions of T into K positive parts: C(T-1, K-1)
  EXPECT_EQ(enumerate_partitions(6, 1).size(), 1u);
  EXPECT_EQ(enumerate_partitions(6, 3).size(), 10u);
  EXPECT_EQ(enumerate_partitions(12, 4).size(), 165u);
  EXPECT_THROW(enumerate_partitions(3, 4), Error);
}

TEST(DpOracle, NoiseFreeTwoLinesCostZero) {
  std::vector<double> xs, ys;
  for (int t = 1; t <= 10; ++t) {
    xs.push_back(t);
    ys.push_back(t <= 4 ? 2.0 * t : 20.0 - t);
  }
  const TimeSeries s(xs, ys);
  for (Loss q : {Loss::kL1, Loss::kL2}) {
    const PwlFit f = dp_optimal_partition(s, 2, q);
    EXPECT_NEAR(f.objective, 0.0, 1e-9);
    EXPECT_EQ(f.segment_sizes(), (std::vector<int>{4, 6}));
    EXPECT_NEAR(f.breakpoints[1], 4.5, 1e-12);
    EXPECT_NEAR(f.evaluate(2.0), 4.0, 1e-9);
    EXPECT_NEAR(f.evaluate(8.0), 12.0, 1e-9);
  }
}

TEST(DpOracle, MatchesEnumeration) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g;
  for (int rep = 0; rep < 20; ++rep) {
    const int T = 4 + rep % 7;
    std::vector<double> xs, ys;
    for (int t = 0; t < T; ++t) {
      xs.push_back(t + 1);
      ys.push_back(g(rng));
    }
    const TimeSeries s(xs, ys);
    for (Loss q : {Loss::kL1, Loss::kL2}) {
      for (int K = 1; K <= 3; ++K) {
        double best = INFINITY;
        for_each_partition(T, K, [&](std::span<const std::size_t> ends) {
          double c = 0;
          std::size_t start = 0;
          for (std::size_t e : ends) {
            c += segment_cost(std::span(xs).subspan(start, e - start + 1),
                              std::span(ys).subspan(start, e - start + 1), q)
                     .cost;
            start = e + 1;
          }
          best = std::min(best, c);
        });
        EXPECT_NEAR(dp_optimal_partition(s, K, q).objective, best, 1e-9) << T << " " << K;
      }
    }
  }
}

TEST(DpOracle, UptoPrefersFewerBlocksOnTies) {
  const TimeSeries s({1, 2, 3, 4, 5}, {1, 2, 3, 4, 5});
  const PwlFit f = dp_optimal_partition_upto(s, 3, Loss::kL1);
  EXPECT_EQ(f.active_segments(), 1);
  EXPECT_NEAR(f.objective, 0.0, 1e-12);
}

TEST(DpOracle, CostTableSums) {
  const std::vector<double> x{1, 2, 3, 4}, a{0, 1, 0, 1}, b{3, 1, 4, 1};
  SegmentCostTable ta(x, a, Loss::kL2);
  const SegmentCostTable tb(x, b, Loss::kL2);
  const double before = ta.cost(0, 3);
  ta.add_costs(tb);
  EXPECT_NEAR(ta.cost(0, 3), before + tb.cost(0, 3), 1e-12);
}

}  // namespace
}  // namespace cpfit
