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

#include "cpfit/param_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cpfit {
namespace {

double round_up(double v) { return std::nextafter(v, std::numeric_limits<double>::infinity()); }
double round_down(double v) {
  return std::nextafter(v, -std::numeric_limits<double>::infinity());
}

}  // namespace

std::pair<double, double> slope_bounds(const TimeSeries& series) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  const std::size_t n = series.size();
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      const double q = (series.y(b) - series.y(a)) / (series.x(b) - series.x(a));
      lo = std::min(lo, q);
      hi = std::max(hi, q);
    }
  }
  // A zero quotient is exact (equal ys), so it is kept as is.
  return {lo == 0.0 ? lo : round_down(lo), hi == 0.0 ? hi : round_up(hi)};
}

std::pair<double, double> intercept_bounds(const TimeSeries& series, double slope_lo,
                                           double slope_hi) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t t = 0; t < series.size(); ++t) {
    for (double m : {slope_lo, slope_hi}) {
      const double c = series.y(t) - m * series.x(t);
      lo = std::min(lo, c);
      hi = std::max(hi, c);
    }
  }
  return {round_down(lo), round_up(hi)};
}

ParameterSpace parameter_space(const TimeSeries& series) {
  ParameterSpace space;
  std::tie(space.slope_lo, space.slope_hi) = slope_bounds(series);
  std::tie(space.icept_lo, space.icept_hi) =
      intercept_bounds(series, space.slope_lo, space.slope_hi);
  space.domain_lo = series.x(0);
  space.domain_hi = series.x(series.size() - 1);
  return space;
}

BigMTable big_m_values(const TimeSeries& series, const ParameterSpace& space) {
  const std::size_t n = series.size();
  BigMTable table;
  table.m1.resize(n);
  table.m2.resize(n);
  table.m3.resize(n);
  table.m4.resize(n);
  const double slope_range = space.slope_hi - space.slope_lo;
  const double icept_range = space.icept_hi - space.icept_lo;
  for (std::size_t t = 0; t < n; ++t) {
    const double x = series.x(t);
    double m1 = 0.0;
    for (double m : {space.slope_lo, space.slope_hi}) {
      for (double c : {space.icept_lo, space.icept_hi}) {
        m1 = std::max(m1, std::abs(m * x) + std::abs(c));
      }
    }
    table.m1[t] = round_up(m1);
    table.m2[t] = x - space.domain_lo;
    table.m3[t] = space.domain_hi - x;
    table.m4[t] = round_up(std::abs(x) * slope_range + icept_range);
  }
  return table;
}

}  // namespace cpfit
