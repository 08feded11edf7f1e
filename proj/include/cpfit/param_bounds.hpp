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

// Data-driven parameter space and big-M constants for the segment models.
//
// Slopes are bounded by the extreme pairwise difference quotients of the data,
// intercepts by the values y_t - m x_t at those extreme slopes. The big-M
// constants follow directly:
//
//   value assignment      M1_t = max |m x_t| + |c| over the box corners
//   right localization    M2_t = x_t - x_1
//   left localization     M3_t = x_T - x_t
//   linear continuity     M4_t = |x_t| (U^m - L^m) + (U^c - L^c)
//
// Minimum-derived values are rounded one ulp down and maximum-derived values
// one ulp up, so every constant stays valid under floating-point evaluation.

#pragma once

#include <utility>
#include <vector>

#include "cpfit/series.hpp"

namespace cpfit {

struct ParameterSpace {
  double slope_lo = 0.0;
  double slope_hi = 0.0;
  double icept_lo = 0.0;
  double icept_hi = 0.0;
  double domain_lo = 0.0;
  double domain_hi = 0.0;
};

struct BigMTable {
  std::vector<double> m1;  // value assignment
  std::vector<double> m2;  // breakpoint localization, right side
  std::vector<double> m3;  // breakpoint localization, left side
  std::vector<double> m4;  // linearized continuity
};

std::pair<double, double> slope_bounds(const TimeSeries& series);
std::pair<double, double> intercept_bounds(const TimeSeries& series, double slope_lo,
                                           double slope_hi);
ParameterSpace parameter_space(const TimeSeries& series);
BigMTable big_m_values(const TimeSeries& series, const ParameterSpace& space);

}  // namespace cpfit
