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

#include <algorithm>
#include <cmath>
#include <set>

#include "cpfit/error.hpp"
#include "cpfit/polyhedral_lab.hpp"

namespace cpfit {
namespace {

int binomial(int n, int k) {
  long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return static_cast<int>(r);
}

// All points with exactly one segment per point, filtered by the rows.
int brute_force_b1(int K, int T) {
  const PolyhedronSpec p = build_b1_polyhedron(K, T);
  int count = 0;
  std::vector<int> seg(T, 0);
  while (true) {
    std::vector<Rational> x(p.dim(), 0);
    for (int t = 0; t < T; ++t) x[seg[t] * T + t] = 1;
    count += violated_rows(p, x).empty();
    int t = 0;
    while (t < T && ++seg[t] == K) seg[t++] = 0;
    if (t == T) break;
  }
  return count;
}

TEST(PolyhedralLab, TotalVariation) {
  const std::vector<double> a{0, 1, 1, 0}, b{1, 1, 0, 0};
  EXPECT_DOUBLE_EQ(total_variation(a), 2.0);
  EXPECT_TRUE(check_tv_difference_bound(a, b));
  const std::vector<double> c{1, 0};
  EXPECT_THROW(check_tv_difference_bound(a, c), Error);
}

TEST(PolyhedralLab, B1IntegralPointsMatchBruteForce) {
  const auto pts = enumerate_binary_points(build_b1_polyhedron(4, 6));
  EXPECT_EQ(static_cast<int>(pts.size()), brute_force_b1(4, 6));
  EXPECT_EQ(pts.size(), 49u);
  EXPECT_EQ(enumerate_binary_points(build_b1_polyhedron(3, 5)).size(), 17u);
  EXPECT_EQ(brute_force_b1(3, 5), 17);
}

TEST(PolyhedralLab, C1IntegralPointsAreNestedPaths) {
  // Nested nonincreasing 0/1 rows X_1 <= ... <= X_{K-1}: C(T+K-1, K-1).
  EXPECT_EQ(static_cast<int>(enumerate_binary_points(build_c1_polyhedron(4, 6)).size()),
            binomial(9, 3));
  EXPECT_EQ(static_cast<int>(enumerate_binary_points(build_c1_polyhedron(3, 5)).size()),
            binomial(7, 2));
  for (const auto& p : enumerate_binary_points(build_c1_polyhedron(3, 4))) {
    for (int t = 0; t < 4; ++t) EXPECT_EQ(p[t] + p[4 + t] + p[8 + t], 1);
  }
}

TEST(PolyhedralLab, C1Shape) {
  const PolyhedronSpec p = build_c1_polyhedron(4, 6);
  EXPECT_EQ(p.dim(), 4u * 6 + 3 * 6);
  std::map<std::string, int> fam;
  for (const auto& r : p.rows) ++fam[r.family];
  EXPECT_EQ(fam["link"], 24);
  EXPECT_EQ(fam["mono"], 3 * 5);
  EXPECT_EQ(fam["nest"], 2 * 6);
  EXPECT_EQ(p.column("X_1_1"), 24);
}

TEST(PolyhedralLab, HalfIntegralVertex) {
  const PolyhedronSpec p = build_b1_polyhedron(4, 6);
  const VertexReport v = verify_vertex(p, delta_point(p, half_integral_b1_point()));
  EXPECT_TRUE(v.feasible);
  EXPECT_EQ(v.rank, 24u);
  EXPECT_TRUE(v.is_vertex);
  EXPECT_GE(v.tight.size(), 24u);
}

TEST(PolyhedralLab, NonVertexPoint) {
  // Uniform assignment is in the relative interior of many rows.
  const PolyhedronSpec p = unit_cube(3);
  const std::vector<Rational> mid(3, Rational(1, 2));
  const VertexReport v = verify_vertex(p, mid);
  EXPECT_TRUE(v.feasible);
  EXPECT_FALSE(v.is_vertex);
  EXPECT_EQ(v.rank, 0u);
}

TEST(PolyhedralLab, RationalRank) {
  std::vector<std::vector<Rational>> rows{{1, 2, 3}, {2, 4, 6}, {0, 1, Rational(1, 3)}};
  EXPECT_EQ(rational_rank(rows), 2u);
}

TEST(PolyhedralLab, Determinants) {
  EXPECT_EQ(integer_determinant({{1, 1}, {1, -1}}), -2);
  EXPECT_EQ(integer_determinant({{2, 0, 1}, {1, 3, 2}, {1, 1, 2}}), 6);
  EXPECT_EQ(integer_determinant({{2, 0, 1}, {1, 3, 2}, {1, 1, 1}}), 0);
  EXPECT_EQ(integer_determinant({{0, 1}, {1, 0}}), -1);
}

TEST(PolyhedralLab, TuChecks) {
  const IntMatrix bad{{1, 1}, {1, -1}};
  const TuReport r = check_tu_small(bad, 2);
  EXPECT_FALSE(r.minors_ok);
  EXPECT_EQ(std::abs(r.bad_determinant), 2);
  IntMatrix eye(4, std::vector<std::int64_t>(4, 0));
  for (int i = 0; i < 4; ++i) eye[i][i] = 1;
  EXPECT_TRUE(check_tu_small(eye, 4).ok());
  // interval matrix: consecutive ones in each row
  const IntMatrix interval{{1, 1, 0, 0}, {0, 1, 1, 1}, {1, 1, 1, 0}, {0, 0, 1, 1}};
  EXPECT_TRUE(check_tu_small(interval, 4).ok());
  const IntMatrix odd_cycle{{1, 1, 0}, {0, 1, 1}, {1, 0, 1}};
  EXPECT_FALSE(check_tu_small(odd_cycle, 3).ok());
  const int cols[] = {0, 1};
  EXPECT_FALSE(check_tu_small(IntMatrix{{1, 1}}, 1, cols).structural_ok);
}

TEST(PolyhedralLab, SmallC1IsTu) {
  const PolyhedronSpec p = build_c1_polyhedron(3, 4);
  std::vector<int> xcols;
  for (int c = 12; c < static_cast<int>(p.dim()); ++c) xcols.push_back(c);
  const TuReport r = check_tu_small(int_matrix(p, true), 4, xcols);
  EXPECT_TRUE(r.ok());
  EXPECT_GT(r.submatrices_checked, 0u);
}

TEST(PolyhedralLab, SkippedSegmentPattern) {
  const PatternCheck pc = check_assignment_pattern(skipped_segment_pattern());
  EXPECT_TRUE(pc.c1_accepts);
  EXPECT_FALSE(pc.b1_accepts);
  EXPECT_EQ(pc.b1_violations, std::vector<std::string>{"contig_3_5"});
}

TEST(PolyhedralLab, ProjectionPattern) {
  const auto d = projection_pattern();
  ASSERT_EQ(d.size(), 4u);
  EXPECT_NEAR(total_variation(d[1]), 2.1, 1e-12);
  for (int t = 0; t < 8; ++t) EXPECT_NEAR(d[0][t] + d[1][t] + d[2][t] + d[3][t], 1.0, 1e-12);
  // Rejected by the nested system once delta is fixed.
  const PolyhedronSpec fixed = fix_delta(build_c1_polyhedron(4, 8), d);
  EXPECT_TRUE(enumerate_binary_points(fixed).empty());
}

TEST(PolyhedralLab, UnitCubeSamplesAreIntegral) {
  const Backend be = resolve_backend("", BackendKind::kHighs);
  SolveOptions opt;
  const VertexSampleReport r = sample_vertex_integrality(unit_cube(5), 10, 3, be, opt);
  EXPECT_EQ(r.trials, 10);
  EXPECT_EQ(r.integral, 10);
}

}  // namespace
}  // namespace cpfit
