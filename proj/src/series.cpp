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

#include "cpfit/series.hpp"

#include <cmath>
#include <string>

#include "cpfit/error.hpp"

namespace cpfit {
namespace {

void check_domain(std::span<const double> xs) {
  if (xs.size() < 2) {
    throw Error(ErrorCode::kInvalidSeries,
                "series needs at least 2 observations, got " + std::to_string(xs.size()));
  }
  for (std::size_t t = 0; t < xs.size(); ++t) {
    if (!std::isfinite(xs[t])) {
      throw Error(ErrorCode::kInvalidSeries, "non-finite x at index " + std::to_string(t + 1));
    }
    if (t > 0 && !(xs[t - 1] < xs[t])) {
      throw Error(ErrorCode::kInvalidSeries,
                  "x must be strictly increasing (violated at index " + std::to_string(t + 1) +
                      ")");
    }
  }
}

void check_response(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) {
    throw Error(ErrorCode::kInvalidSeries, "x and y lengths differ (" +
                                               std::to_string(xs.size()) + " vs " +
                                               std::to_string(ys.size()) + ")");
  }
  for (std::size_t t = 0; t < ys.size(); ++t) {
    if (!std::isfinite(ys[t])) {
      throw Error(ErrorCode::kInvalidSeries, "non-finite y at index " + std::to_string(t + 1));
    }
  }
}

}  // namespace

TimeSeries::TimeSeries(std::vector<double> xs, std::vector<double> ys)
    : xs_(std::move(xs)), ys_(std::move(ys)) {
  check_response(xs_, ys_);
  check_domain(xs_);
}

TimeSeries TimeSeries::indexed(std::vector<double> ys) {
  std::vector<double> xs(ys.size());
  for (std::size_t t = 0; t < xs.size(); ++t) xs[t] = static_cast<double>(t + 1);
  return TimeSeries(std::move(xs), std::move(ys));
}

MultiSeries::MultiSeries(std::vector<double> xs, std::vector<std::vector<double>> ys)
    : xs_(std::move(xs)), ys_(std::move(ys)) {
  if (ys_.empty()) throw Error(ErrorCode::kInvalidSeries, "multi-series needs D >= 1");
  for (const auto& y : ys_) check_response(xs_, y);
  check_domain(xs_);
}

MultiSeries MultiSeries::from(const TimeSeries& series) {
  return MultiSeries({series.xs().begin(), series.xs().end()},
                     {{series.ys().begin(), series.ys().end()}});
}

DedupResult deduplicate_x(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) {
    throw Error(ErrorCode::kInvalidSeries, "x and y lengths differ");
  }
  DedupResult out;
  std::size_t t = 0;
  while (t < xs.size()) {
    if (t > 0 && xs[t] < xs[t - 1]) {
      throw Error(ErrorCode::kInvalidSeries,
                  "x is not monotone at index " + std::to_string(t + 1));
    }
    std::size_t end = t;
    double sum = 0.0;
    while (end < xs.size() && xs[end] == xs[t]) sum += ys[end++];
    out.xs.push_back(xs[t]);
    out.ys.push_back(sum / static_cast<double>(end - t));
    out.merged += end - t - 1;
    t = end;
  }
  return out;
}

}  // namespace cpfit
