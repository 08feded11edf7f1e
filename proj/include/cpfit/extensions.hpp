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

// Model variants built on the segment blocks:
//   - D response series sharing one assignment (and breakpoints);
//   - a two-segment shared model where at most S dimensions may change;
//   - a penalty on the number of segments actually used.

#pragma once

#include <span>
#include <vector>

#include "cpfit/formulations.hpp"
#include "cpfit/series.hpp"

namespace cpfit {

std::vector<ParameterSpace> parameter_spaces(const MultiSeries& multi);
std::vector<BigMTable> big_m_tables(const MultiSeries& multi,
                                    std::span<const ParameterSpace> spaces);

/// Continuity must be none; Error{kIncompatibleSpec} otherwise.
BuiltModel build_multidim_model(const MultiSeries& multi, const FitSpec& spec,
                                std::span<const ParameterSpace> spaces,
                                std::span<const BigMTable> bigms);
BuiltModel build_multidim_model(const MultiSeries& multi, const FitSpec& spec);

struct SparseSpec {
  int budget = 0;
  std::vector<double> slope_change_bigm;  // U^m_d - L^m_d
  std::vector<double> icept_change_bigm;  // U^c_d - L^c_d
};

SparseSpec make_sparse_spec(int budget, std::span<const ParameterSpace> spaces);

/// Two segments, shared boundary, binary eta_d allowing dimension d to
/// change; sum eta <= S. Error{kInvalidArgument} when S < 0 or S > D.
BuiltModel build_sparse_model(const MultiSeries& multi, const SparseSpec& sparse,
                              Assignment assignment, Loss loss);

struct L0Spec {
  double lambda = 0.0;
  double usage_bigm = 0.0;  // <= 0 selects T
  /// Emit the usage rows with the orientation sum_t delta <= M (1 - u_j),
  /// under which the penalty never binds. Off by default.
  bool strict_rows = false;
};

/// Adds one usage binary per segment, the usage rows and lambda * sum u_j to
/// the objective. Error{kIncompatibleSpec} for alternate assignment, whose
/// rows already force every segment to be used.
std::vector<std::string> block_l0_regularization(MipModel& model, VarIndex& index,
                                                 const FitSpec& spec, const L0Spec& l0);

BuiltModel build_l0_model(const TimeSeries& series, const FitSpec& spec, const L0Spec& l0);

struct MultiPwlFit {
  std::vector<int> assignment;
  std::vector<double> breakpoints;
  std::vector<std::vector<double>> slopes;      // [d][j]
  std::vector<std::vector<double>> intercepts;  // [d][j]
  std::vector<std::vector<double>> fitted;      // [d][t]
  std::vector<double> dim_objective;
  double objective = 0.0;
  std::vector<int> eta;  // sparse models only

  int active_segments() const;
};

MultiPwlFit extract_multi_fit(std::span<const double> values, const VarIndex& index,
                              const MultiSeries& multi, Loss loss);

}  // namespace cpfit
