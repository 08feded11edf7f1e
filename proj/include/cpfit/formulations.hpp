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

// Mixed-integer formulations for K-segment piecewise-linear fitting.
//
// A model is assembled from interchangeable blocks:
//
//   assignment   basic     sum_j delta[j][t] = 1
//                alternate basic rows + contiguity/first/last monotone rows
//                extended  delta derived from nested nonincreasing X[j][t]
//   value        big-M rows tying yhat[t] to segment j's line when assigned
//   localization big-M rows bounding assigned x_t by breakpoints r[j-1], r[j]
//   continuity   basic     bilinear m_j r_j + c_j = m_{j+1} r_j + c_{j+1}
//                alternate big-M linearization activated by delta and gamma
//   objective    sum |y_t - yhat_t| (residual split) or sum (y_t - yhat_t)^2
//
// All indices in the public API are 0-based: segment j in [0, K), point t in
// [0, T). Variable names in emitted LP files use 1-based indices.

#pragma once

#include <span>
#include <string>
#include <vector>

#include "cpfit/model_ir.hpp"
#include "cpfit/param_bounds.hpp"
#include "cpfit/series.hpp"
#include "cpfit/solution.hpp"

namespace cpfit {

enum class Loss { kL1 = 1, kL2 = 2 };
enum class Continuity { kNone, kBasicBilinear, kAlternateLinear };
enum class Assignment { kBasic, kAlternate, kExtended };

std::string_view to_string(Loss loss);
std::string_view to_string(Continuity continuity);
std::string_view to_string(Assignment assignment);

struct FitSpec {
  int segments = 2;
  Loss loss = Loss::kL1;
  Continuity continuity = Continuity::kNone;
  Assignment assignment = Assignment::kBasic;
  /// Adds the redundant bound |yhat_t| <= M1_t. Off by default.
  bool bound_fitted_values = false;
};

/// "Basic", "Alternate", "Extended", "Extended Basic" or "Extended Alternate".
std::string formulation_name(const FitSpec& spec);

/// Formulations that apply to one continuity mode, in reporting order.
std::vector<FitSpec> formulations_for(int segments, Loss loss, Continuity continuity);

/// Symbol tables from model symbols to variable ids. Per-dimension entries are
/// indexed [d][...]; univariate models have a single dimension.
struct VarIndex {
  int segments = 0;
  int points = 0;
  int dims = 1;

  std::vector<std::vector<VarId>> delta;    // [j][t]
  std::vector<std::vector<VarId>> nested;   // [j][t], j < K-1, extended only
  std::vector<std::vector<VarId>> slope;    // [d][j]
  std::vector<std::vector<VarId>> icept;    // [d][j]
  std::vector<VarId> brk;                   // [0..K], empty without breakpoints
  std::vector<std::vector<VarId>> yhat;     // [d][t]
  std::vector<std::vector<VarId>> resid;    // [d][t]
  std::vector<VarId> gamma;                 // [j], j < K-1
  std::vector<std::vector<VarId>> act_pos;  // [j][t], j < K-1, t < T-1
  std::vector<std::vector<VarId>> act_neg;  // [j][t]
  std::vector<VarId> eta;                   // [d], sparse models only
  std::vector<VarId> seg_used;              // [j], l0 models only

  bool has_breakpoints() const { return !brk.empty(); }
};

struct BuiltModel {
  MipModel model;
  VarIndex index;
};

// Blocks. Each appends rows to the model and returns their labels.

std::vector<std::string> block_basic_assignment(MipModel& model, const VarIndex& index);
std::vector<std::string> block_alternate_assignment(MipModel& model, const VarIndex& index);
std::vector<std::string> block_extended_assignment(MipModel& model, const VarIndex& index);

/// One value-assignment table per dimension: m1[d][t].
std::vector<std::string> block_value_assignment(MipModel& model, const VarIndex& index,
                                                std::span<const double> xs,
                                                std::span<const std::vector<double>> m1);
std::vector<std::string> block_breakpoint_localization(MipModel& model, const VarIndex& index,
                                                       std::span<const double> xs,
                                                       const BigMTable& bigm);
std::vector<std::string> block_basic_continuity(MipModel& model, const VarIndex& index);
std::vector<std::string> block_alternate_continuity(MipModel& model, const VarIndex& index,
                                                    std::span<const double> xs,
                                                    const BigMTable& bigm);
/// Residual rows and the objective; ys[d][t].
std::vector<std::string> objective_block(MipModel& model, const VarIndex& index,
                                         std::span<const std::vector<double>> ys, Loss loss);

/// Throws Error{kIncompatibleSpec} for alternate assignment with bilinear
/// continuity and Error{kInvalidArgument} for K < 1 or K > T.
BuiltModel build_model(const TimeSeries& series, const FitSpec& spec,
                       const ParameterSpace& space, const BigMTable& bigm);

/// Convenience overload computing the parameter space and big-M table.
BuiltModel build_model(const TimeSeries& series, const FitSpec& spec);

struct PwlFit {
  std::vector<double> slopes;
  std::vector<double> intercepts;
  std::vector<double> breakpoints;  // r_0..r_K
  std::vector<int> assignment;      // segment per point
  std::vector<double> fitted;       // line value of the assigned segment
  double objective = 0.0;           // recomputed fitting error

  int segments() const { return static_cast<int>(slopes.size()); }
  /// Number of points per segment; unused segments report zero.
  std::vector<int> segment_sizes() const;
  int active_segments() const;
  /// f(x) with the half-open convention (r_{j-1}, r_j], ties to the left and
  /// the first segment closed at r_0.
  double evaluate(double x) const;
};

double fitting_error(std::span<const double> ys, std::span<const double> fitted, Loss loss);

/// Builds a fit from a solution. Throws Error{kFractionalAssignment} when any
/// delta lies in (1e-6, 1 - 1e-6) and Error{kNonContiguousAssignment} when the
/// rounded assignment is not nondecreasing in t.
PwlFit extract_fit(std::span<const double> values, const VarIndex& index,
                   const TimeSeries& series, const FitSpec& spec);
PwlFit extract_fit(const Solution& solution, const VarIndex& index, const TimeSeries& series,
                   const FitSpec& spec);

/// Rounds delta to a per-point segment assignment (shared by the extractors).
std::vector<int> rounded_assignment(std::span<const double> values, const VarIndex& index);

inline constexpr double kAssignmentTolerance = 1e-6;

// Internal builder shared with the multidimensional models.
namespace detail {
BuiltModel build_segment_model(std::span<const double> xs,
                               std::span<const std::vector<double>> ys, const FitSpec& spec,
                               std::span<const ParameterSpace> spaces,
                               std::span<const BigMTable> bigms);
}  // namespace detail

}  // namespace cpfit
