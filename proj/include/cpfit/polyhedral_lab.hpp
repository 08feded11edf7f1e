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

// Checks on the relaxed assignment polyhedra.
//
//   B1  delta in [0,1]^{K x T}: one segment per point, contiguity rows and
//       monotone first/last segment rows.
//   C1  (delta, X): delta defined from nested, nonincreasing rows of X.
//
// Exact claims (vertex certificates, determinants) use rational or integer
// arithmetic; sampling experiments go through an LP backend.

#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cpfit/model_ir.hpp"
#include "cpfit/series.hpp"
#include "cpfit/solver_backend.hpp"

namespace cpfit {

using Rational = boost::multiprecision::cpp_rational;

struct PolyRow {
  std::string label;
  std::string family;
  std::vector<std::pair<int, Rational>> coeffs;  // (column, coefficient)
  Sense sense = Sense::kEqual;
  Rational rhs;
};

struct PolyhedronSpec {
  std::vector<std::string> names;
  std::vector<PolyRow> rows;
  std::vector<Rational> lower;
  std::vector<Rational> upper;

  std::size_t dim() const { return names.size(); }
  int column(const std::string& name) const;  // -1 when absent
};

double total_variation(std::span<const double> seq);
/// TV(f - g) <= TV(f) + TV(g) + 1e-12. Error{kInvalidArgument} for unequal
/// lengths.
bool check_tv_difference_bound(std::span<const double> f, std::span<const double> g);

/// Columns delta_j_t (1-based names, j-major). Families: assign, contig,
/// first, last.
PolyhedronSpec build_b1_polyhedron(int segments, int points);
/// Columns delta_j_t then X_j_t. Families: link, mono, nest.
PolyhedronSpec build_c1_polyhedron(int segments, int points);
/// [0,1]^n with no rows.
PolyhedronSpec unit_cube(int n);

/// Same point as a dense delta matrix [j][t] written into the delta columns.
std::vector<Rational> delta_point(const PolyhedronSpec& poly,
                                  const std::vector<std::vector<Rational>>& delta);

/// Fixes every delta_j_t column to the given values through its bounds.
PolyhedronSpec fix_delta(const PolyhedronSpec& poly, const std::vector<std::vector<double>>& delta);

/// Continuous LP model over the polyhedron with the given objective.
MipModel to_lp_model(const PolyhedronSpec& poly, std::span<const double> objective = {});

/// Labels of rows (and "bound:<name>") violated at an exact point.
std::vector<std::string> violated_rows(const PolyhedronSpec& poly, std::span<const Rational> x);

/// All 0/1 points of the polyhedron, by depth-first search with activity
/// bound pruning. Coefficients must be integers.
std::vector<std::vector<int>> enumerate_binary_points(const PolyhedronSpec& poly);

struct VertexReport {
  bool feasible = false;
  std::vector<std::string> violated;
  std::vector<std::string> tight;             // labels, bounds as "lb:"/"ub:" name
  std::map<std::string, int> tight_families;  // family -> count ("bound" for bounds)
  std::size_t rank = 0;
  std::size_t dim = 0;
  bool is_vertex = false;
};

VertexReport verify_vertex(const PolyhedronSpec& poly, std::span<const Rational> point);

/// Exact rank over the rationals.
std::size_t rational_rank(std::vector<std::vector<Rational>> rows);

struct VertexSampleReport {
  int trials = 0;
  int integral = 0;
  int fractional = 0;
  double max_distance = 0.0;  // worst distance to the nearest integer
  std::vector<double> first_fractional;
  double seconds = 0.0;
};

/// Random objectives with independent uniform(-1, 1) coefficients; each LP
/// optimum must be optimal or the call throws Error{kSolverProcess}.
VertexSampleReport sample_vertex_integrality(const PolyhedronSpec& poly, int trials,
                                             std::uint64_t seed, const Backend& backend,
                                             const SolveOptions& options,
                                             double tolerance = 1e-7);

using IntMatrix = std::vector<std::vector<std::int64_t>>;

/// Integer constraint matrix with bound rows appended as unit rows when
/// include_bounds is set. Error{kInvalidArgument} for non-integral entries.
IntMatrix int_matrix(const PolyhedronSpec& poly, bool include_bounds = false);

struct TuReport {
  bool structural_ok = true;
  std::string structural_violation;
  int max_order = 0;
  std::uint64_t submatrices_checked = 0;
  std::uint64_t connected_sets = 0;
  std::size_t reduced_rows = 0;  // rows left after removing single-entry lines
  std::size_t reduced_cols = 0;
  bool minors_ok = true;
  std::int64_t bad_determinant = 0;
  std::vector<int> bad_rows;
  std::vector<int> bad_cols;

  bool ok() const { return structural_ok && minors_ok; }
};

/// (i) Structural test on the listed columns: each row has at most two
/// nonzeros there, in {-1, 1}, of opposite signs when there are two.
/// (ii) Every square submatrix of order <= max_order has determinant in
/// {-1, 0, 1}. Lines with at most one nonzero are peeled off first (their
/// entries are checked as 1x1 minors; a minor through such a line is that
/// entry times a smaller minor), and block-diagonal submatrices factor, so
/// only connected submatrices of the remaining core are expanded.
TuReport check_tu_small(const IntMatrix& matrix, int max_order,
                        std::span<const int> structural_columns = {});

std::int64_t integer_determinant(const IntMatrix& square);

struct ProjectionReport {
  std::vector<std::vector<double>> delta;
  std::vector<double> tv;  // per segment row
  std::string basic_lp_status;
  bool basic_feasible = false;
  std::vector<std::string> witness_violations;  // full model incl. bilinear rows
  bool witness_ok = false;
  std::string extended_lp_status;
  bool extended_feasible = true;

  bool confirmed() const;
};

/// The fractional pattern for T = 8, K = 4: delta_1 = 1/2, delta_2 and
/// delta_3 alternate 0.4/0.1 out of phase, delta_4 = 0.
std::vector<std::vector<double>> projection_pattern();

/// Needs an 8-point series and an LP-capable backend.
ProjectionReport verify_projection_counterexample(const TimeSeries& series,
                                                  const Backend& backend,
                                                  const SolveOptions& options);

/// Fractional B1 point for K = 4, T = 6 with entries in {0, 1/2}.
std::vector<std::vector<Rational>> half_integral_b1_point();

/// Five segments over nine points with the middle segment skipped.
std::vector<std::vector<int>> skipped_segment_pattern();

struct PatternCheck {
  bool b1_accepts = false;
  std::vector<std::string> b1_violations;
  bool c1_accepts = false;
  std::vector<int> c1_witness;  // full (delta, X) point when accepted
};

PatternCheck check_assignment_pattern(const std::vector<std::vector<int>>& delta);

}  // namespace cpfit
