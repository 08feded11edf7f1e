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

#include <limits>
#include <string>
#include <string_view>
#include <vector>

namespace cpfit {

enum class SolveStatus {
  kOptimal,
  kFeasibleLimit,  // stopped at a limit with an incumbent
  kNoSolution,     // stopped at a limit without an incumbent
  kInfeasible,
  kUnbounded,
  kError,
};

std::string_view to_string(SolveStatus status);

inline bool has_values(SolveStatus s) {
  return s == SolveStatus::kOptimal || s == SolveStatus::kFeasibleLimit;
}

struct Solution {
  SolveStatus status = SolveStatus::kError;
  double objective = std::numeric_limits<double>::quiet_NaN();
  double best_bound = std::numeric_limits<double>::quiet_NaN();
  double gap = std::numeric_limits<double>::infinity();
  std::vector<double> values;  // indexed by VarId
  double wall_seconds = 0.0;
  double gap_tolerance = 0.0;  // tolerance the backend was asked to use
  std::string backend;
  std::string message;
};

}  // namespace cpfit
