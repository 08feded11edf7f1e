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

#include "cpfit/extensions.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cpfit/error.hpp"

namespace cpfit {
namespace {

std::vector<std::vector<double>> response_rows(const MultiSeries& multi) {
  std::vector<std::vector<double>> ys;
  for (std::size_t d = 0; d < multi.dims(); ++d) {
    auto y = multi.ys(d);
    ys.emplace_back(y.begin(), y.end());
  }
  return ys;
}

std::string one_based(std::size_t i) { return std::to_string(i + 1); }

}  // namespace

std::vector<ParameterSpace> parameter_spaces(const MultiSeries& multi) {
  std::vector<ParameterSpace> out;
  for (std::size_t d = 0; d < multi.dims(); ++d) out.push_back(parameter_space(multi.dimension(d)));
  return out;
}

std::vector<BigMTable> big_m_tables(const MultiSeries& multi,
                                    std::span<const ParameterSpace> spaces) {
  std::vector<BigMTable> out;
  for (std::size_t d = 0; d < multi.dims(); ++d) {
    out.push_back(big_m_values(multi.dimension(d), spaces[d]));
  }
  return out;
}

BuiltModel build_multidim_model(const MultiSeries& multi, const FitSpec& spec,
                                std::span<const ParameterSpace> spaces,
                                std::span<const BigMTable> bigms) {
  if (spec.continuity != Continuity::kNone) {
    throw Error(ErrorCode::kIncompatibleSpec,
                "multi-dimensional models do not support continuity");
  }
  const auto ys = response_rows(multi);
  return detail::build_segment_model(multi.xs(), ys, spec, spaces, bigms);
}

BuiltModel build_multidim_model(const MultiSeries& multi, const FitSpec& spec) {
  const auto spaces = parameter_spaces(multi);
  const auto bigms = big_m_tables(multi, spaces);
  return build_multidim_model(multi, spec, spaces, bigms);
}

SparseSpec make_sparse_spec(int budget, std::span<const ParameterSpace> spaces) {
  SparseSpec s;
  s.budget = budget;
  for (const auto& sp : spaces) {
    s.slope_change_bigm.push_back(sp.slope_hi - sp.slope_lo);
    s.icept_change_bigm.push_back(sp.icept_hi - sp.icept_lo);
  }
  return s;
}

BuiltModel build_sparse_model(const MultiSeries& multi, const SparseSpec& sparse,
                              Assignment assignment, Loss loss) {
  const int D = static_cast<int>(multi.dims());
  if (sparse.budget < 0 || sparse.budget > D) {
    throw Error(ErrorCode::kInvalidArgument, "change budget S=" + std::to_string(sparse.budget) +
                                                 " must lie in [0, " + std::to_string(D) + "]");
  }
  if (sparse.slope_change_bigm.size() != multi.dims() ||
      sparse.icept_change_bigm.size() != multi.dims()) {
    throw Error(ErrorCode::kInvalidArgument, "sparse big-M tables do not match D");
  }
  FitSpec spec;
  spec.segments = 2;
  spec.loss = loss;
  spec.assignment = assignment;
  BuiltModel built = build_multidim_model(multi, spec);
  MipModel& model = built.model;
  VarIndex& ix = built.index;
  ix.eta.resize(D);
  for (int d = 0; d < D; ++d) {
    ix.eta[d] = model.add_variable(VariableDef::Binary("eta_" + one_based(d)));
  }
  for (int d = 0; d < D; ++d) {
    const std::string sfx = one_based(d);
    const auto change_rows = [&](const char* stem, const std::vector<VarId>& v, double M) {
      ConstraintDef up;
      up.label = std::string(stem) + "_up_" + sfx;
      up.lhs.add(v[1], 1.0).add(v[0], -1.0).add(ix.eta[d], -M);
      up.sense = Sense::kLessEqual;
      model.add_constraint(std::move(up));
      ConstraintDef lo;
      lo.label = std::string(stem) + "_lo_" + sfx;
      lo.lhs.add(v[1], 1.0).add(v[0], -1.0).add(ix.eta[d], M);
      lo.sense = Sense::kGreaterEqual;
      model.add_constraint(std::move(lo));
    };
    change_rows("dslope", ix.slope[d], sparse.slope_change_bigm[d]);
    change_rows("dicept", ix.icept[d], sparse.icept_change_bigm[d]);
  }
  ConstraintDef card;
  card.label = "budget";
  for (VarId e : ix.eta) card.lhs.add(e, 1.0);
  card.sense = Sense::kLessEqual;
  card.rhs = sparse.budget;
  model.add_constraint(std::move(card));
  model.metadata()["sparse.budget"] = std::to_string(sparse.budget);
  return built;
}

std::vector<std::string> block_l0_regularization(MipModel& model, VarIndex& index,
                                                 const FitSpec& spec, const L0Spec& l0) {
  if (spec.assignment == Assignment::kAlternate) {
    throw Error(ErrorCode::kIncompatibleSpec,
                "segment-count penalty needs basic or extended assignment");
  }
  if (!(l0.lambda >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "penalty must be nonnegative");
  }
  const int K = index.segments;
  const double M = l0.usage_bigm > 0.0 ? l0.usage_bigm : static_cast<double>(index.points);
  std::vector<std::string> labels;
  index.seg_used.resize(K);
  for (int j = 0; j < K; ++j) {
    index.seg_used[j] = model.add_variable(
        VariableDef::Binary((l0.strict_rows ? "unused_" : "used_") + one_based(j)));
  }
  for (int j = 0; j < K; ++j) {
    ConstraintDef c;
    c.label = "usage_" + one_based(j);
    for (int t = 0; t < index.points; ++t) c.lhs.add(index.delta[j][t], 1.0);
    c.sense = Sense::kLessEqual;
    if (l0.strict_rows) {
      c.lhs.add(index.seg_used[j], M);
      c.rhs = M;
    } else {
      c.lhs.add(index.seg_used[j], -M);
      c.rhs = 0.0;
    }
    labels.push_back(model.add_constraint(std::move(c)));
    if (l0.lambda != 0.0) model.objective().linear.add(index.seg_used[j], l0.lambda);
  }
  model.metadata()["l0.lambda"] = format_number(l0.lambda);
  model.metadata()["l0.rows"] = l0.strict_rows ? "strict" : "intent";
  return labels;
}

BuiltModel build_l0_model(const TimeSeries& series, const FitSpec& spec, const L0Spec& l0) {
  BuiltModel built = build_model(series, spec);
  block_l0_regularization(built.model, built.index, spec, l0);
  return built;
}

int MultiPwlFit::active_segments() const {
  std::vector<int> seen;
  for (int a : assignment)
    if (std::find(seen.begin(), seen.end(), a) == seen.end()) seen.push_back(a);
  return static_cast<int>(seen.size());
}

MultiPwlFit extract_multi_fit(std::span<const double> values, const VarIndex& index,
                              const MultiSeries& multi, Loss loss) {
  MultiPwlFit fit;
  fit.assignment = rounded_assignment(values, index);
  const int K = index.segments;
  const int T = index.points;
  const int D = index.dims;
  const auto xs = multi.xs();
  fit.slopes.assign(D, std::vector<double>(K));
  fit.intercepts.assign(D, std::vector<double>(K));
  fit.fitted.assign(D, std::vector<double>(T));
  for (int d = 0; d < D; ++d) {
    for (int j = 0; j < K; ++j) {
      fit.slopes[d][j] = values[index.slope[d][j].index()];
      fit.intercepts[d][j] = values[index.icept[d][j].index()];
    }
    for (int t = 0; t < T; ++t) {
      const int j = fit.assignment[t];
      fit.fitted[d][t] = fit.slopes[d][j] * xs[t] + fit.intercepts[d][j];
    }
    fit.dim_objective.push_back(fitting_error(multi.ys(d), fit.fitted[d], loss));
    fit.objective += fit.dim_objective.back();
  }
  fit.breakpoints.assign(K + 1, 0.0);
  if (index.has_breakpoints()) {
    for (int j = 0; j <= K; ++j) fit.breakpoints[j] = values[index.brk[j].index()];
  } else {
    fit.breakpoints[0] = xs.front();
    fit.breakpoints[K] = xs.back();
    for (int j = 1; j < K; ++j) {
      int a = -1, b = T;
      for (int t = 0; t < T; ++t) {
        if (fit.assignment[t] < j) a = t;
        if (fit.assignment[t] >= j && b == T) b = t;
      }
      fit.breakpoints[j] = a < 0 ? xs.front() : b == T ? xs.back() : 0.5 * (xs[a] + xs[b]);
    }
  }
  for (VarId e : index.eta) fit.eta.push_back(values[e.index()] > 0.5 ? 1 : 0);
  return fit;
}

}  // namespace cpfit
