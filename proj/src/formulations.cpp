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

#include "cpfit/formulations.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cpfit/error.hpp"

namespace cpfit {
namespace {

std::string idx(int i) { return std::to_string(i + 1); }

std::string name2(const char* stem, int a, int b) {
  return std::string(stem) + "_" + idx(a) + "_" + idx(b);
}

// Per-dimension names only carry the dimension suffix when D > 1, so a
// one-dimensional multi-series model matches the univariate one exactly.
std::string dim_name(const char* stem, int dims, int d, int i) {
  std::string s(stem);
  if (dims > 1) s += "_" + idx(d);
  return s + "_" + idx(i);
}

std::string row(const std::string& family, int a, int b) { return name2(family.c_str(), a, b); }

const std::string& push(MipModel& model, std::vector<std::string>& labels, std::string label,
                        AffineExpr lhs, Sense sense, double rhs) {
  ConstraintDef c;
  c.label = std::move(label);
  c.lhs = std::move(lhs);
  c.sense = sense;
  c.rhs = rhs;
  labels.push_back(model.add_constraint(std::move(c)));
  return labels.back();
}

bool needs_breakpoints(const FitSpec& spec) {
  return spec.assignment != Assignment::kAlternate ||
         spec.continuity == Continuity::kBasicBilinear;
}

void check_shape(const VarIndex& index) {
  if (index.segments < 1 || index.points < 1 ||
      index.delta.size() != static_cast<std::size_t>(index.segments)) {
    throw Error(ErrorCode::kInvalidArgument, "variable index has no assignment variables");
  }
}

}  // namespace

std::string_view to_string(Loss loss) { return loss == Loss::kL1 ? "l1" : "l2"; }

std::string_view to_string(Continuity c) {
  switch (c) {
    case Continuity::kNone: return "none";
    case Continuity::kBasicBilinear: return "basic";
    case Continuity::kAlternateLinear: return "alternate";
  }
  return "?";
}

std::string_view to_string(Assignment a) {
  switch (a) {
    case Assignment::kBasic: return "basic";
    case Assignment::kAlternate: return "alternate";
    case Assignment::kExtended: return "extended";
  }
  return "?";
}

std::string formulation_name(const FitSpec& spec) {
  switch (spec.assignment) {
    case Assignment::kBasic: return "Basic";
    case Assignment::kAlternate: return "Alternate";
    case Assignment::kExtended:
      if (spec.continuity == Continuity::kBasicBilinear) return "Extended Basic";
      if (spec.continuity == Continuity::kAlternateLinear) return "Extended Alternate";
      return "Extended";
  }
  return "?";
}

std::vector<FitSpec> formulations_for(int segments, Loss loss, Continuity continuity) {
  auto make = [&](Assignment a) {
    FitSpec s;
    s.segments = segments;
    s.loss = loss;
    s.continuity = continuity;
    s.assignment = a;
    return s;
  };
  switch (continuity) {
    case Continuity::kNone:
      return {make(Assignment::kBasic), make(Assignment::kAlternate),
              make(Assignment::kExtended)};
    case Continuity::kBasicBilinear:
      return {make(Assignment::kBasic), make(Assignment::kExtended)};
    case Continuity::kAlternateLinear:
      return {make(Assignment::kAlternate), make(Assignment::kExtended)};
  }
  return {};
}

std::vector<std::string> block_basic_assignment(MipModel& model, const VarIndex& index) {
  check_shape(index);
  std::vector<std::string> labels;
  for (int t = 0; t < index.points; ++t) {
    AffineExpr e;
    for (int j = 0; j < index.segments; ++j) e.add(index.delta[j][t], 1.0);
    push(model, labels, "assign_" + idx(t), std::move(e), Sense::kEqual, 1.0);
  }
  return labels;
}

std::vector<std::string> block_alternate_assignment(MipModel& model, const VarIndex& index) {
  auto labels = block_basic_assignment(model, index);
  const int K = index.segments;
  const int T = index.points;
  if (K < 2) return labels;
  const auto& d = index.delta;
  for (int j = 0; j + 1 < K; ++j) {
    for (int t = 0; t + 1 < T; ++t) {
      AffineExpr e;
      e.add(d[j + 1][t + 1], 1.0).add(d[j][t], -1.0).add(d[j + 1][t], -1.0);
      push(model, labels, row("contig", j, t), std::move(e), Sense::kLessEqual, 0.0);
    }
  }
  for (int t = 0; t + 1 < T; ++t) {
    AffineExpr first;
    first.add(d[0][t + 1], 1.0).add(d[0][t], -1.0);
    push(model, labels, "first_" + idx(t), std::move(first), Sense::kLessEqual, 0.0);
    AffineExpr last;
    last.add(d[K - 1][t + 1], 1.0).add(d[K - 1][t], -1.0);
    push(model, labels, "last_" + idx(t), std::move(last), Sense::kGreaterEqual, 0.0);
  }
  return labels;
}

std::vector<std::string> block_extended_assignment(MipModel& model, const VarIndex& index) {
  check_shape(index);
  const int K = index.segments;
  const int T = index.points;
  const auto& d = index.delta;
  const auto& X = index.nested;
  std::vector<std::string> labels;
  if (K == 1) {
    for (int t = 0; t < T; ++t) {
      AffineExpr e;
      e.add(d[0][t], 1.0);
      push(model, labels, "link_1_" + idx(t), std::move(e), Sense::kEqual, 1.0);
    }
    return labels;
  }
  if (X.size() != static_cast<std::size_t>(K - 1)) {
    throw Error(ErrorCode::kInvalidArgument, "extended assignment needs K-1 nested rows");
  }
  for (int t = 0; t < T; ++t) {
    for (int j = 0; j < K; ++j) {
      AffineExpr e;
      e.add(d[j][t], 1.0);
      double rhs = 0.0;
      if (j < K - 1) e.add(X[j][t], -1.0);
      if (j > 0) e.add(X[j - 1][t], 1.0);
      if (j == K - 1) rhs = 1.0;
      push(model, labels, row("link", j, t), std::move(e), Sense::kEqual, rhs);
    }
  }
  for (int j = 0; j < K - 1; ++j) {
    for (int t = 0; t + 1 < T; ++t) {
      AffineExpr e;
      e.add(X[j][t], 1.0).add(X[j][t + 1], -1.0);
      push(model, labels, row("mono", j, t), std::move(e), Sense::kGreaterEqual, 0.0);
    }
  }
  for (int j = 0; j + 2 < K; ++j) {
    for (int t = 0; t < T; ++t) {
      AffineExpr e;
      e.add(X[j + 1][t], 1.0).add(X[j][t], -1.0);
      push(model, labels, row("nest", j, t), std::move(e), Sense::kGreaterEqual, 0.0);
    }
  }
  return labels;
}

std::vector<std::string> block_value_assignment(MipModel& model, const VarIndex& index,
                                                std::span<const double> xs,
                                                std::span<const std::vector<double>> m1) {
  check_shape(index);
  std::vector<std::string> labels;
  const int D = index.dims;
  for (int dd = 0; dd < D; ++dd) {
    const std::string up = D > 1 ? "val_up_" + idx(dd) : "val_up";
    const std::string lo = D > 1 ? "val_lo_" + idx(dd) : "val_lo";
    for (int j = 0; j < index.segments; ++j) {
      for (int t = 0; t < index.points; ++t) {
        const double M = m1[dd][t];
        // m_j x_t + c_j - yhat_t <= M (1 - delta)
        AffineExpr a;
        a.add(index.slope[dd][j], xs[t])
            .add(index.icept[dd][j], 1.0)
            .add(index.yhat[dd][t], -1.0)
            .add(index.delta[j][t], M);
        push(model, labels, row(up, j, t), std::move(a), Sense::kLessEqual, M);
        AffineExpr b;
        b.add(index.slope[dd][j], xs[t])
            .add(index.icept[dd][j], 1.0)
            .add(index.yhat[dd][t], -1.0)
            .add(index.delta[j][t], -M);
        push(model, labels, row(lo, j, t), std::move(b), Sense::kGreaterEqual, -M);
      }
    }
  }
  return labels;
}

std::vector<std::string> block_breakpoint_localization(MipModel& model, const VarIndex& index,
                                                       std::span<const double> xs,
                                                       const BigMTable& bigm) {
  check_shape(index);
  const int K = index.segments;
  const int T = index.points;
  if (index.brk.size() != static_cast<std::size_t>(K + 1)) {
    throw Error(ErrorCode::kInvalidArgument, "breakpoint localization needs K+1 breakpoints");
  }
  std::vector<std::string> labels;
  for (int j = 0; j < K; ++j) {
    for (int t = 0; t < T; ++t) {
      // x_t <= r_{j+1} + M2 (1 - delta)
      AffineExpr right;
      right.add(index.brk[j + 1], -1.0).add(index.delta[j][t], bigm.m2[t]);
      push(model, labels, row("loc_r", j, t), std::move(right), Sense::kLessEqual,
           bigm.m2[t] - xs[t]);
      // x_t >= r_j - M3 (1 - delta)
      AffineExpr left;
      left.add(index.brk[j], 1.0).add(index.delta[j][t], bigm.m3[t]);
      push(model, labels, row("loc_l", j, t), std::move(left), Sense::kLessEqual,
           bigm.m3[t] + xs[t]);
    }
  }
  AffineExpr first;
  first.add(index.brk[0], 1.0);
  push(model, labels, "brk_first", std::move(first), Sense::kEqual, xs[0]);
  AffineExpr last;
  last.add(index.brk[K], 1.0);
  push(model, labels, "brk_last", std::move(last), Sense::kEqual, xs[T - 1]);
  for (int j = 0; j < K; ++j) {
    AffineExpr e;
    e.add(index.brk[j], 1.0).add(index.brk[j + 1], -1.0);
    push(model, labels, "brk_order_" + idx(j), std::move(e), Sense::kLessEqual, 0.0);
  }
  return labels;
}

std::vector<std::string> block_basic_continuity(MipModel& model, const VarIndex& index) {
  check_shape(index);
  if (index.dims != 1) {
    throw Error(ErrorCode::kIncompatibleSpec, "continuity is only defined for one dimension");
  }
  if (!index.has_breakpoints()) {
    throw Error(ErrorCode::kInvalidArgument, "bilinear continuity needs breakpoint variables");
  }
  std::vector<std::string> labels;
  model.allow_bilinear();
  for (int j = 0; j + 1 < index.segments; ++j) {
    ConstraintDef c;
    c.label = "cont_" + idx(j);
    c.lhs.add(index.icept[0][j], 1.0).add(index.icept[0][j + 1], -1.0);
    c.bilinear.push_back({index.slope[0][j], index.brk[j + 1], 1.0});
    c.bilinear.push_back({index.slope[0][j + 1], index.brk[j + 1], -1.0});
    c.sense = Sense::kEqual;
    c.rhs = 0.0;
    labels.push_back(model.add_constraint(std::move(c)));
  }
  return labels;
}

std::vector<std::string> block_alternate_continuity(MipModel& model, const VarIndex& index,
                                                    std::span<const double> xs,
                                                    const BigMTable& bigm) {
  check_shape(index);
  if (index.dims != 1) {
    throw Error(ErrorCode::kIncompatibleSpec, "continuity is only defined for one dimension");
  }
  const int K = index.segments;
  const int T = index.points;
  std::vector<std::string> labels;
  const auto& m = index.slope[0];
  const auto& c = index.icept[0];
  // d(x) = (c_{j+1} - c_j) - x (m_j - m_{j+1}); the crossing lies in
  // [x_t, x_{t+1}] exactly when d changes sign over the interval.
  auto diff = [&](int j, double x) {
    AffineExpr e;
    e.add(c[j + 1], 1.0).add(c[j], -1.0).add(m[j], -x).add(m[j + 1], x);
    return e;
  };
  for (int j = 0; j + 1 < K; ++j) {
    for (int t = 0; t + 1 < T; ++t) {
      const VarId pos = index.act_pos[j][t];
      const VarId neg = index.act_neg[j][t];
      const double Ma = bigm.m4[t];
      const double Mb = bigm.m4[t + 1];
      push(model, labels, row("lc_pos_a", j, t), diff(j, xs[t]).add(pos, -Ma),
           Sense::kGreaterEqual, -Ma);
      push(model, labels, row("lc_pos_b", j, t), diff(j, xs[t + 1]).add(pos, Mb),
           Sense::kLessEqual, Mb);
      push(model, labels, row("lc_neg_a", j, t), diff(j, xs[t]).add(neg, Ma), Sense::kLessEqual,
           Ma);
      push(model, labels, row("lc_neg_b", j, t), diff(j, xs[t + 1]).add(neg, -Mb),
           Sense::kGreaterEqual, -Mb);
      AffineExpr on_pos;
      on_pos.add(index.delta[j][t], 1.0)
          .add(index.delta[j + 1][t + 1], 1.0)
          .add(index.gamma[j], 1.0)
          .add(pos, -1.0);
      push(model, labels, row("lc_act_pos", j, t), std::move(on_pos), Sense::kLessEqual, 2.0);
      AffineExpr on_neg;
      on_neg.add(index.delta[j][t], 1.0)
          .add(index.delta[j + 1][t + 1], 1.0)
          .add(index.gamma[j], -1.0)
          .add(neg, -1.0);
      push(model, labels, row("lc_act_neg", j, t), std::move(on_neg), Sense::kLessEqual, 1.0);
    }
  }
  return labels;
}

std::vector<std::string> objective_block(MipModel& model, const VarIndex& index,
                                         std::span<const std::vector<double>> ys, Loss loss) {
  check_shape(index);
  std::vector<std::string> labels;
  auto& obj = model.objective();
  const int D = index.dims;
  for (int dd = 0; dd < D; ++dd) {
    const std::string sfx = D > 1 ? idx(dd) + "_" : "";
    for (int t = 0; t < index.points; ++t) {
      const VarId r = index.resid[dd][t];
      const VarId yh = index.yhat[dd][t];
      const double y = ys[dd][t];
      if (loss == Loss::kL1) {
        AffineExpr above;
        above.add(r, 1.0).add(yh, 1.0);
        push(model, labels, "res_a_" + sfx + idx(t), std::move(above), Sense::kGreaterEqual, y);
        AffineExpr below;
        below.add(r, 1.0).add(yh, -1.0);
        push(model, labels, "res_b_" + sfx + idx(t), std::move(below), Sense::kGreaterEqual,
             -y);
        obj.linear.add(r, 1.0);
      } else {
        AffineExpr e;
        e.add(r, 1.0).add(yh, 1.0);
        push(model, labels, "res_" + sfx + idx(t), std::move(e), Sense::kEqual, y);
        obj.quadratic.push_back({r, r, 1.0});
      }
    }
  }
  if (loss == Loss::kL2) model.allow_quadratic_objective();
  return labels;
}

namespace detail {

BuiltModel build_segment_model(std::span<const double> xs,
                               std::span<const std::vector<double>> ys, const FitSpec& spec,
                               std::span<const ParameterSpace> spaces,
                               std::span<const BigMTable> bigms) {
  const int K = spec.segments;
  const int T = static_cast<int>(xs.size());
  const int D = static_cast<int>(ys.size());
  if (D < 1 || spaces.size() != ys.size() || bigms.size() != ys.size()) {
    throw Error(ErrorCode::kInvalidArgument, "per-dimension inputs disagree in length");
  }
  if (K < 1 || K > T) {
    throw Error(ErrorCode::kInvalidArgument, "segment count must lie in [1, T], got K=" +
                                                 std::to_string(K) + " with T=" +
                                                 std::to_string(T));
  }
  if (spec.assignment == Assignment::kAlternate &&
      spec.continuity == Continuity::kBasicBilinear) {
    throw Error(ErrorCode::kIncompatibleSpec,
                "alternate assignment has no breakpoint variables for bilinear continuity");
  }
  if (D > 1 && spec.continuity != Continuity::kNone) {
    throw Error(ErrorCode::kIncompatibleSpec, "continuity is only defined for one dimension");
  }

  BuiltModel out{MipModel(formulation_name(spec)), {}};
  MipModel& model = out.model;
  VarIndex& ix = out.index;
  ix.segments = K;
  ix.points = T;
  ix.dims = D;

  ix.delta.assign(K, std::vector<VarId>(T));
  for (int j = 0; j < K; ++j)
    for (int t = 0; t < T; ++t)
      ix.delta[j][t] = model.add_variable(VariableDef::Binary(name2("delta", j, t)));
  if (spec.assignment == Assignment::kExtended && K > 1) {
    ix.nested.assign(K - 1, std::vector<VarId>(T));
    for (int j = 0; j < K - 1; ++j)
      for (int t = 0; t < T; ++t)
        ix.nested[j][t] = model.add_variable(VariableDef::Binary(name2("X", j, t)));
  }
  ix.slope.assign(D, std::vector<VarId>(K));
  ix.icept.assign(D, std::vector<VarId>(K));
  for (int d = 0; d < D; ++d) {
    for (int j = 0; j < K; ++j) {
      ix.slope[d][j] = model.add_variable(VariableDef::Continuous(
          dim_name("m", D, d, j), spaces[d].slope_lo, spaces[d].slope_hi));
    }
    for (int j = 0; j < K; ++j) {
      ix.icept[d][j] = model.add_variable(VariableDef::Continuous(
          dim_name("c", D, d, j), spaces[d].icept_lo, spaces[d].icept_hi));
    }
  }
  if (needs_breakpoints(spec)) {
    ix.brk.resize(K + 1);
    for (int j = 0; j <= K; ++j) {
      ix.brk[j] = model.add_variable(
          VariableDef::Continuous("r_" + std::to_string(j), xs.front(), xs.back()));
    }
  }
  if (spec.continuity == Continuity::kAlternateLinear && K > 1) {
    ix.gamma.resize(K - 1);
    for (int j = 0; j < K - 1; ++j)
      ix.gamma[j] = model.add_variable(VariableDef::Binary("gamma_" + idx(j)));
    ix.act_pos.assign(K - 1, std::vector<VarId>(T - 1));
    ix.act_neg.assign(K - 1, std::vector<VarId>(T - 1));
    for (int j = 0; j < K - 1; ++j) {
      for (int t = 0; t + 1 < T; ++t) {
        ix.act_pos[j][t] =
            model.add_variable(VariableDef::Continuous(name2("dpos", j, t), 0.0, 1.0));
        ix.act_neg[j][t] =
            model.add_variable(VariableDef::Continuous(name2("dneg", j, t), 0.0, 1.0));
      }
    }
  }
  ix.yhat.assign(D, std::vector<VarId>(T));
  ix.resid.assign(D, std::vector<VarId>(T));
  for (int d = 0; d < D; ++d) {
    for (int t = 0; t < T; ++t) {
      VariableDef v = VariableDef::Free(dim_name("yhat", D, d, t));
      if (spec.bound_fitted_values) {
        v.lower = -bigms[d].m1[t];
        v.upper = bigms[d].m1[t];
      }
      ix.yhat[d][t] = model.add_variable(std::move(v));
    }
    for (int t = 0; t < T; ++t) {
      ix.resid[d][t] = model.add_variable(spec.loss == Loss::kL1
                                              ? VariableDef::Continuous(
                                                    dim_name("eps", D, d, t), 0.0, kInf)
                                              : VariableDef::Free(dim_name("e", D, d, t)));
    }
  }

  switch (spec.assignment) {
    case Assignment::kBasic: block_basic_assignment(model, ix); break;
    case Assignment::kAlternate: block_alternate_assignment(model, ix); break;
    case Assignment::kExtended: block_extended_assignment(model, ix); break;
  }
  std::vector<std::vector<double>> m1(D);
  for (int d = 0; d < D; ++d) m1[d] = bigms[d].m1;
  block_value_assignment(model, ix, xs, m1);
  if (ix.has_breakpoints()) block_breakpoint_localization(model, ix, xs, bigms[0]);
  if (spec.continuity == Continuity::kBasicBilinear) block_basic_continuity(model, ix);
  if (spec.continuity == Continuity::kAlternateLinear)
    block_alternate_continuity(model, ix, xs, bigms[0]);
  objective_block(model, ix, ys, spec.loss);

  auto& meta = model.metadata();
  meta["formulation"] = formulation_name(spec);
  meta["segments"] = std::to_string(K);
  meta["points"] = std::to_string(T);
  meta["dims"] = std::to_string(D);
  meta["loss"] = std::string(to_string(spec.loss));
  meta["continuity"] = std::string(to_string(spec.continuity));
  if (spec.assignment == Assignment::kExtended) {
    // delta could be continuous here; keeping the binaries makes the solver
    // see the same integer variables as the other formulations plus X.
    meta["extended.delta"] = "binary, tied to X by equalities";
  }
  return out;
}

}  // namespace detail

BuiltModel build_model(const TimeSeries& series, const FitSpec& spec,
                       const ParameterSpace& space, const BigMTable& bigm) {
  const std::vector<std::vector<double>> ys{{series.ys().begin(), series.ys().end()}};
  return detail::build_segment_model(series.xs(), ys, spec, std::span(&space, 1),
                                     std::span(&bigm, 1));
}

BuiltModel build_model(const TimeSeries& series, const FitSpec& spec) {
  const ParameterSpace space = parameter_space(series);
  return build_model(series, spec, space, big_m_values(series, space));
}

std::vector<int> PwlFit::segment_sizes() const {
  std::vector<int> sizes(slopes.size(), 0);
  for (int a : assignment) ++sizes[a];
  return sizes;
}

int PwlFit::active_segments() const {
  const auto sizes = segment_sizes();
  return static_cast<int>(std::count_if(sizes.begin(), sizes.end(), [](int s) { return s > 0; }));
}

double PwlFit::evaluate(double x) const {
  const auto sizes = segment_sizes();
  int chosen = -1;
  for (int j = 0; j < segments(); ++j) {
    if (sizes[j] == 0) continue;
    chosen = j;
    if (x <= breakpoints[j + 1]) break;
  }
  if (chosen < 0) chosen = 0;
  return slopes[chosen] * x + intercepts[chosen];
}

double fitting_error(std::span<const double> ys, std::span<const double> fitted, Loss loss) {
  double total = 0.0;
  for (std::size_t t = 0; t < ys.size(); ++t) {
    const double r = ys[t] - fitted[t];
    total += loss == Loss::kL1 ? std::abs(r) : r * r;
  }
  return total;
}

std::vector<int> rounded_assignment(std::span<const double> values, const VarIndex& index) {
  check_shape(index);
  std::vector<int> out(index.points, -1);
  for (int t = 0; t < index.points; ++t) {
    int ones = 0;
    for (int j = 0; j < index.segments; ++j) {
      const double v = values[index.delta[j][t].index()];
      if (v >= 1.0 - kAssignmentTolerance) {
        ++ones;
        out[t] = j;
      } else if (v > kAssignmentTolerance) {
        throw Error(ErrorCode::kFractionalAssignment,
                    "delta_" + idx(j) + "_" + idx(t) + " = " + format_number(v));
      }
    }
    if (ones != 1) {
      throw Error(ErrorCode::kFractionalAssignment,
                  "point " + idx(t) + " is assigned to " + std::to_string(ones) + " segments");
    }
    if (t > 0 && out[t] < out[t - 1]) {
      throw Error(ErrorCode::kNonContiguousAssignment,
                  "assignment decreases at point " + idx(t));
    }
  }
  return out;
}

PwlFit extract_fit(std::span<const double> values, const VarIndex& index,
                   const TimeSeries& series, const FitSpec& spec) {
  if (index.dims != 1) {
    throw Error(ErrorCode::kInvalidArgument, "extract_fit expects a univariate model");
  }
  PwlFit fit;
  fit.assignment = rounded_assignment(values, index);
  const int K = index.segments;
  const int T = index.points;
  for (int j = 0; j < K; ++j) {
    fit.slopes.push_back(values[index.slope[0][j].index()]);
    fit.intercepts.push_back(values[index.icept[0][j].index()]);
  }
  fit.breakpoints.assign(K + 1, 0.0);
  if (index.has_breakpoints()) {
    for (int j = 0; j <= K; ++j) fit.breakpoints[j] = values[index.brk[j].index()];
  } else {
    fit.breakpoints[0] = series.x(0);
    fit.breakpoints[K] = series.x(T - 1);
    for (int j = 1; j < K; ++j) {
      // Gap between the last point before segment j and the first point of it.
      int a = -1, b = T;
      for (int t = 0; t < T; ++t) {
        if (fit.assignment[t] < j) a = t;
        if (fit.assignment[t] >= j && b == T) b = t;
      }
      if (a < 0) {
        fit.breakpoints[j] = series.x(0);
        continue;
      }
      if (b == T) {
        fit.breakpoints[j] = series.x(T - 1);
        continue;
      }
      const double lo = series.x(a);
      const double hi = series.x(b);
      double r = 0.5 * (lo + hi);
      const int left = fit.assignment[a];
      const int right = fit.assignment[b];
      if (spec.continuity != Continuity::kNone && right == left + 1 &&
          fit.slopes[left] != fit.slopes[right]) {
        r = (fit.intercepts[right] - fit.intercepts[left]) /
            (fit.slopes[left] - fit.slopes[right]);
        r = std::clamp(r, lo, hi);
      }
      fit.breakpoints[j] = r;
    }
  }
  fit.fitted.resize(T);
  for (int t = 0; t < T; ++t) {
    const int j = fit.assignment[t];
    fit.fitted[t] = fit.slopes[j] * series.x(t) + fit.intercepts[j];
  }
  fit.objective = fitting_error(series.ys(), fit.fitted, spec.loss);
  return fit;
}

PwlFit extract_fit(const Solution& solution, const VarIndex& index, const TimeSeries& series,
                   const FitSpec& spec) {
  if (!has_values(solution.status)) {
    throw Error(ErrorCode::kInvalidArgument,
                "solution has no values (status " + std::string(to_string(solution.status)) +
                    ")");
  }
  return extract_fit(solution.values, index, series, spec);
}

}  // namespace cpfit
