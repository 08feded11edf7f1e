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

#include "cpfit/error.hpp"
#include "cpfit/formulations.hpp"

namespace cpfit {
namespace {

TimeSeries three_points() { return TimeSeries({1, 2, 3}, {1, 3, 2}); }

FitSpec spec_of(int K, Assignment a, Continuity c = Continuity::kNone, Loss q = Loss::kL1) {
  FitSpec s;
  s.segments = K;
  s.assignment = a;
  s.continuity = c;
  s.loss = q;
  return s;
}

bool has_row(const MipModel& m, const std::string& label) {
  for (const auto& r : m.constraints())
    if (r.label == label) return true;
  return false;
}

TEST(Formulations, VariableCounts) {
  // delta 6, m/c 4, r_0..r_2 3, yhat 3, eps 3
  const BuiltModel b = build_model(three_points(), spec_of(2, Assignment::kBasic));
  EXPECT_EQ(b.model.num_variables(), 19u);
  EXPECT_EQ(b.model.num_binaries(), 6u);
  // plus one nested row of X
  const BuiltModel e = build_model(three_points(), spec_of(2, Assignment::kExtended));
  EXPECT_EQ(e.model.num_variables(), 22u);
  EXPECT_EQ(e.model.num_binaries(), 9u);
  EXPECT_TRUE(validate(b.model).empty());
  EXPECT_TRUE(validate(e.model).empty());
}

TEST(Formulations, RowFamilies) {
  const BuiltModel b = build_model(three_points(), spec_of(2, Assignment::kBasic));
  EXPECT_TRUE(has_row(b.model, "assign_1"));
  EXPECT_TRUE(has_row(b.model, "val_up_1_1"));
  EXPECT_TRUE(has_row(b.model, "loc_r_1_1") || has_row(b.model, "loc_r_1"));
  const BuiltModel a = build_model(three_points(), spec_of(2, Assignment::kAlternate));
  EXPECT_TRUE(has_row(a.model, "first_1"));
  EXPECT_TRUE(has_row(a.model, "contig_1_1") || has_row(a.model, "contig_1_2"));
  const BuiltModel e = build_model(three_points(), spec_of(2, Assignment::kExtended));
  EXPECT_TRUE(has_row(e.model, "link_1_1"));
  EXPECT_TRUE(has_row(e.model, "mono_1_1"));
  EXPECT_EQ(e.model.metadata().at("formulation"), "Extended");
}

TEST(Formulations, ContinuityVariants) {
  std::vector<double> xs, ys;
  for (int t = 0; t < 6; ++t) {
    xs.push_back(t);
    ys.push_back(t % 3);
  }
  const TimeSeries s(xs, ys);
  const BuiltModel bb = build_model(s, spec_of(2, Assignment::kBasic, Continuity::kBasicBilinear));
  EXPECT_TRUE(bb.model.has_bilinear());
  EXPECT_TRUE(has_row(bb.model, "cont_1"));
  const BuiltModel al =
      build_model(s, spec_of(2, Assignment::kAlternate, Continuity::kAlternateLinear));
  EXPECT_FALSE(al.model.has_bilinear());
  EXPECT_EQ(al.index.gamma.size(), 1u);
  EXPECT_EQ(formulation_name(spec_of(2, Assignment::kExtended, Continuity::kAlternateLinear)),
            "Extended Alternate");
  EXPECT_THROW(build_model(s, spec_of(2, Assignment::kAlternate, Continuity::kBasicBilinear)),
               Error);
}

TEST(Formulations, ApplicableSets) {
  EXPECT_EQ(formulations_for(3, Loss::kL1, Continuity::kNone).size(), 3u);
  const auto alt = formulations_for(3, Loss::kL1, Continuity::kAlternateLinear);
  ASSERT_EQ(alt.size(), 2u);
  EXPECT_EQ(formulation_name(alt[0]), "Alternate");
  EXPECT_EQ(formulation_name(alt[1]), "Extended Alternate");
  const auto bas = formulations_for(3, Loss::kL2, Continuity::kBasicBilinear);
  ASSERT_EQ(bas.size(), 2u);
  EXPECT_EQ(formulation_name(bas[1]), "Extended Basic");
}

TEST(Formulations, RejectsBadSegmentCounts) {
  EXPECT_THROW(build_model(three_points(), spec_of(0, Assignment::kBasic)), Error);
  EXPECT_THROW(build_model(three_points(), spec_of(4, Assignment::kBasic)), Error);
}

TEST(Formulations, QuadraticObjective) {
  const BuiltModel b = build_model(three_points(), spec_of(2, Assignment::kBasic,
                                                             Continuity::kNone, Loss::kL2));
  EXPECT_TRUE(b.model.has_quadratic_objective());
  EXPECT_EQ(b.model.objective().quadratic.size(), 3u);
}

std::vector<double> values_for(const BuiltModel& b, const std::vector<int>& seg,
                               const std::vector<double>& m, const std::vector<double>& c) {
  std::vector<double> v(b.model.num_variables(), 0.0);
  for (std::size_t t = 0; t < seg.size(); ++t) v[b.index.delta[seg[t]][t].index()] = 1.0;
  for (std::size_t j = 0; j < m.size(); ++j) {
    v[b.index.slope[0][j].index()] = m[j];
    v[b.index.icept[0][j].index()] = c[j];
  }
  return v;
}

TEST(Formulations, ExtractFit) {
  const TimeSeries s({1, 2, 3, 4}, {1, 2, 5, 4});
  const FitSpec spec = spec_of(2, Assignment::kAlternate);
  const BuiltModel b = build_model(s, spec);
  const auto v = values_for(b, {0, 0, 1, 1}, {1, -1}, {0, 8});
  const PwlFit f = extract_fit(v, b.index, s, spec);
  EXPECT_EQ(f.assignment, (std::vector<int>{0, 0, 1, 1}));
  EXPECT_NEAR(f.objective, 0.0, 1e-12);
  EXPECT_NEAR(f.breakpoints[1], 2.5, 1e-12);
  EXPECT_NEAR(f.evaluate(3.5), 4.5, 1e-12);
}

TEST(Formulations, ExtractRejectsFractionalAndGaps) {
  const TimeSeries s({1, 2, 3, 4}, {1, 2, 5, 4});
  const FitSpec spec = spec_of(2, Assignment::kBasic);
  const BuiltModel b = build_model(s, spec);
  auto v = values_for(b, {0, 0, 1, 1}, {1, -1}, {0, 8});
  v[b.index.delta[0][1].index()] = 0.5;
  v[b.index.delta[1][1].index()] = 0.5;
  try {
    extract_fit(v, b.index, s, spec);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kFractionalAssignment);
  }
  const auto w = values_for(b, {0, 1, 0, 1}, {1, -1}, {0, 8});
  try {
    extract_fit(w, b.index, s, spec);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNonContiguousAssignment);
  }
}

TEST(Formulations, FittingError) {
  const std::vector<double> y{1, 2, 3}, f{1, 1, 5};
  EXPECT_DOUBLE_EQ(fitting_error(y, f, Loss::kL1), 3.0);
  EXPECT_DOUBLE_EQ(fitting_error(y, f, Loss::kL2), 5.0);
}

}  // namespace
}  // namespace cpfit
