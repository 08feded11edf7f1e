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

#include "cpfit/dp_oracle.hpp"
#include "cpfit/error.hpp"
#include "cpfit/extensions.hpp"

namespace cpfit {
namespace {

MultiSeries two_dims() {
  return MultiSeries({1, 2, 3, 4, 5, 6}, {{0, 1, 2, 5, 4, 3}, {1, 1, 1, 3, 3, 3}});
}

bool has_row(const MipModel& m, const std::string& label) {
  for (const auto& r : m.constraints())
    if (r.label == label) return true;
  return false;
}

TEST(Extensions, OneDimensionMatchesUnivariate) {
  const TimeSeries s({1, 2, 3, 4, 5}, {1, 3, 2, 5, 4});
  FitSpec spec;
  spec.segments = 2;
  for (Assignment a : {Assignment::kBasic, Assignment::kAlternate, Assignment::kExtended}) {
    spec.assignment = a;
    const BuiltModel uni = build_model(s, spec);
    const BuiltModel one = build_multidim_model(MultiSeries::from(s), spec);
    EXPECT_EQ(uni.model.num_variables(), one.model.num_variables());
    EXPECT_EQ(uni.model.num_constraints(), one.model.num_constraints());
    EXPECT_EQ(emit_lp_text(uni.model), emit_lp_text(one.model));
  }
}

TEST(Extensions, SharedAssignment) {
  FitSpec spec;
  spec.segments = 2;
  const BuiltModel b = build_multidim_model(two_dims(), spec);
  EXPECT_EQ(b.index.dims, 2);
  EXPECT_EQ(b.index.delta.size(), 2u);
  EXPECT_EQ(b.index.slope.size(), 2u);
  EXPECT_TRUE(b.model.find_variable("m_2_1").valid());
  spec.continuity = Continuity::kAlternateLinear;
  spec.assignment = Assignment::kAlternate;
  EXPECT_THROW(build_multidim_model(two_dims(), spec), Error);
}

TEST(Extensions, PerDimensionBounds) {
  const auto spaces = parameter_spaces(two_dims());
  ASSERT_EQ(spaces.size(), 2u);
  EXPECT_DOUBLE_EQ(spaces[1].slope_lo, 0.0);
  const SparseSpec sp = make_sparse_spec(1, spaces);
  EXPECT_DOUBLE_EQ(sp.slope_change_bigm[0], spaces[0].slope_hi - spaces[0].slope_lo);
}

TEST(Extensions, SparseModel) {
  const MultiSeries ms = two_dims();
  const SparseSpec sp = make_sparse_spec(1, parameter_spaces(ms));
  const BuiltModel b = build_sparse_model(ms, sp, Assignment::kBasic, Loss::kL1);
  EXPECT_EQ(b.index.segments, 2);
  EXPECT_EQ(b.index.eta.size(), 2u);
  EXPECT_TRUE(has_row(b.model, "budget"));
  EXPECT_TRUE(has_row(b.model, "dslope_up_1"));
  SparseSpec too_big = sp;
  too_big.budget = 3;
  EXPECT_THROW(build_sparse_model(ms, too_big, Assignment::kBasic, Loss::kL1), Error);
  too_big.budget = -1;
  EXPECT_THROW(build_sparse_model(ms, too_big, Assignment::kBasic, Loss::kL1), Error);
}

TEST(Extensions, L0Rows) {
  const TimeSeries s({1, 2, 3, 4, 5}, {1, 3, 2, 5, 4});
  FitSpec spec;
  spec.segments = 3;
  L0Spec l0;
  l0.lambda = 2.0;
  const BuiltModel b = build_l0_model(s, spec, l0);
  ASSERT_EQ(b.index.seg_used.size(), 3u);
  EXPECT_TRUE(has_row(b.model, "usage_1"));
  // Intent rows: sum_t delta_jt - T u_j <= 0
  for (const auto& r : b.model.constraints()) {
    if (r.label != "usage_2") continue;
    EXPECT_EQ(r.sense, Sense::kLessEqual);
    EXPECT_EQ(r.rhs, 0.0);
  }
  spec.assignment = Assignment::kAlternate;
  EXPECT_THROW(build_l0_model(s, spec, l0), Error);
  spec.assignment = Assignment::kBasic;
  l0.strict_rows = true;
  const BuiltModel strict = build_l0_model(s, spec, l0);
  EXPECT_TRUE(strict.model.find_variable("unused_1").valid());
}

TEST(Extensions, ExtractMultiFit) {
  const MultiSeries ms = two_dims();
  FitSpec spec;
  spec.segments = 2;
  const BuiltModel b = build_multidim_model(ms, spec);
  std::vector<double> v(b.model.num_variables(), 0.0);
  for (int t = 0; t < 6; ++t) v[b.index.delta[t < 3 ? 0 : 1][t].index()] = 1.0;
  // dim 1: y = x - 1 then y = 9 - x; dim 2: 1 then 3
  v[b.index.slope[0][0].index()] = 1;
  v[b.index.icept[0][0].index()] = -1;
  v[b.index.slope[0][1].index()] = -1;
  v[b.index.icept[0][1].index()] = 9;
  v[b.index.icept[1][0].index()] = 1;
  v[b.index.icept[1][1].index()] = 3;
  const MultiPwlFit f = extract_multi_fit(v, b.index, ms, Loss::kL1);
  EXPECT_EQ(f.assignment, (std::vector<int>{0, 0, 0, 1, 1, 1}));
  EXPECT_NEAR(f.objective, 0.0, 1e-12);
  EXPECT_EQ(f.active_segments(), 2);
  EXPECT_NEAR(f.fitted[1][4], 3.0, 1e-12);
}

}  // namespace
}  // namespace cpfit
