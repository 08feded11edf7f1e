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

#include "cpfit/polyhedral_lab.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <random>

#include "cpfit/error.hpp"
#include "cpfit/formulations.hpp"

namespace cpfit {
namespace {

std::string one(int i) { return std::to_string(i + 1); }
std::string lab(const char* stem, int j, int t) {
  return std::string(stem) + "_" + one(j) + "_" + one(t);
}

void add_row(PolyhedronSpec& p, std::string label, std::string family,
             std::vector<std::pair<int, Rational>> coeffs, Sense sense, Rational rhs) {
  p.rows.push_back({std::move(label), std::move(family), std::move(coeffs), sense, std::move(rhs)});
}

int add_col(PolyhedronSpec& p, std::string name) {
  p.names.push_back(std::move(name));
  p.lower.emplace_back(0);
  p.upper.emplace_back(1);
  return static_cast<int>(p.names.size()) - 1;
}

void check_km(int K, int T) {
  if (K < 1 || T < 1) throw Error(ErrorCode::kInvalidArgument, "need K >= 1 and T >= 1");
}

Rational activity(const PolyRow& row, std::span<const Rational> x) {
  Rational a = 0;
  for (const auto& [c, v] : row.coeffs) a += v * x[c];
  return a;
}

double to_d(const Rational& r) { return r.convert_to<double>(); }

std::int64_t to_int(const Rational& r, const std::string& what) {
  if (denominator(r) != 1) {
    throw Error(ErrorCode::kInvalidArgument, what + " is not an integer");
  }
  return numerator(r).convert_to<std::int64_t>();
}

}  // namespace

int PolyhedronSpec::column(const std::string& name) const {
  const auto it = std::find(names.begin(), names.end(), name);
  return it == names.end() ? -1 : static_cast<int>(it - names.begin());
}

double total_variation(std::span<const double> seq) {
  double tv = 0.0;
  for (std::size_t t = 1; t < seq.size(); ++t) tv += std::abs(seq[t] - seq[t - 1]);
  return tv;
}

bool check_tv_difference_bound(std::span<const double> f, std::span<const double> g) {
  if (f.size() != g.size()) {
    throw Error(ErrorCode::kInvalidArgument, "sequences differ in length");
  }
  std::vector<double> h(f.size());
  for (std::size_t t = 0; t < f.size(); ++t) h[t] = f[t] - g[t];
  return total_variation(h) <= total_variation(f) + total_variation(g) + 1e-12;
}

PolyhedronSpec build_b1_polyhedron(int K, int T) {
  check_km(K, T);
  PolyhedronSpec p;
  for (int j = 0; j < K; ++j)
    for (int t = 0; t < T; ++t) add_col(p, lab("delta", j, t));
  auto d = [T](int j, int t) { return j * T + t; };
  for (int t = 0; t < T; ++t) {
    std::vector<std::pair<int, Rational>> c;
    for (int j = 0; j < K; ++j) c.emplace_back(d(j, t), 1);
    add_row(p, "assign_" + one(t), "assign", std::move(c), Sense::kEqual, 1);
  }
  if (K < 2) return p;
  for (int j = 0; j + 1 < K; ++j) {
    for (int t = 0; t + 1 < T; ++t) {
      add_row(p, lab("contig", j, t), "contig",
              {{d(j + 1, t + 1), 1}, {d(j, t), -1}, {d(j + 1, t), -1}}, Sense::kLessEqual, 0);
    }
  }
  for (int t = 0; t + 1 < T; ++t) {
    add_row(p, "first_" + one(t), "boundary", {{d(0, t + 1), 1}, {d(0, t), -1}},
            Sense::kLessEqual, 0);
    add_row(p, "last_" + one(t), "boundary", {{d(K - 1, t + 1), 1}, {d(K - 1, t), -1}},
            Sense::kGreaterEqual, 0);
  }
  return p;
}

PolyhedronSpec build_c1_polyhedron(int K, int T) {
  check_km(K, T);
  PolyhedronSpec p;
  for (int j = 0; j < K; ++j)
    for (int t = 0; t < T; ++t) add_col(p, lab("delta", j, t));
  for (int j = 0; j + 1 < K; ++j)
    for (int t = 0; t < T; ++t) add_col(p, lab("X", j, t));
  auto d = [T](int j, int t) { return j * T + t; };
  auto x = [K, T](int j, int t) { return K * T + j * T + t; };
  for (int t = 0; t < T; ++t) {
    for (int j = 0; j < K; ++j) {
      std::vector<std::pair<int, Rational>> c{{d(j, t), 1}};
      if (j < K - 1) c.emplace_back(x(j, t), -1);
      if (j > 0) c.emplace_back(x(j - 1, t), 1);
      add_row(p, lab("link", j, t), "link", std::move(c), Sense::kEqual, j == K - 1 ? 1 : 0);
    }
  }
  for (int j = 0; j + 1 < K; ++j) {
    for (int t = 0; t + 1 < T; ++t) {
      add_row(p, lab("mono", j, t), "mono", {{x(j, t), 1}, {x(j, t + 1), -1}},
              Sense::kGreaterEqual, 0);
    }
  }
  for (int j = 0; j + 2 < K; ++j) {
    for (int t = 0; t < T; ++t) {
      add_row(p, lab("nest", j, t), "nest", {{x(j + 1, t), 1}, {x(j, t), -1}},
              Sense::kGreaterEqual, 0);
    }
  }
  return p;
}

PolyhedronSpec unit_cube(int n) {
  PolyhedronSpec p;
  for (int i = 0; i < n; ++i) add_col(p, "u_" + one(i));
  return p;
}

std::vector<Rational> delta_point(const PolyhedronSpec& poly,
                                  const std::vector<std::vector<Rational>>& delta) {
  std::vector<Rational> x(poly.dim(), Rational(0));
  for (std::size_t j = 0; j < delta.size(); ++j) {
    for (std::size_t t = 0; t < delta[j].size(); ++t) {
      const int c = poly.column(lab("delta", static_cast<int>(j), static_cast<int>(t)));
      if (c < 0) throw Error(ErrorCode::kInvalidArgument, "pattern does not fit the polyhedron");
      x[c] = delta[j][t];
    }
  }
  return x;
}

PolyhedronSpec fix_delta(const PolyhedronSpec& poly,
                         const std::vector<std::vector<double>>& delta) {
  PolyhedronSpec p = poly;
  for (std::size_t j = 0; j < delta.size(); ++j) {
    for (std::size_t t = 0; t < delta[j].size(); ++t) {
      const int c = p.column(lab("delta", static_cast<int>(j), static_cast<int>(t)));
      if (c < 0) throw Error(ErrorCode::kInvalidArgument, "pattern does not fit the polyhedron");
      p.lower[c] = p.upper[c] = Rational(delta[j][t]);
    }
  }
  return p;
}

MipModel to_lp_model(const PolyhedronSpec& poly, std::span<const double> objective) {
  MipModel m("polyhedron");
  std::vector<VarId> ids;
  for (std::size_t i = 0; i < poly.dim(); ++i) {
    ids.push_back(m.add_variable(
        VariableDef::Continuous(poly.names[i], to_d(poly.lower[i]), to_d(poly.upper[i]))));
  }
  for (const PolyRow& r : poly.rows) {
    ConstraintDef c;
    c.label = r.label;
    for (const auto& [col, v] : r.coeffs) c.lhs.add(ids[col], to_d(v));
    c.sense = r.sense;
    c.rhs = to_d(r.rhs);
    m.add_constraint(std::move(c));
  }
  for (std::size_t i = 0; i < objective.size() && i < ids.size(); ++i) {
    if (objective[i] != 0.0) m.objective().linear.add(ids[i], objective[i]);
  }
  return m;
}

std::vector<std::string> violated_rows(const PolyhedronSpec& poly, std::span<const Rational> x) {
  if (x.size() != poly.dim()) {
    throw Error(ErrorCode::kInvalidArgument, "point dimension " + std::to_string(x.size()) +
                                                 " does not match " +
                                                 std::to_string(poly.dim()));
  }
  std::vector<std::string> out;
  for (const PolyRow& r : poly.rows) {
    const Rational a = activity(r, x);
    const bool ok = r.sense == Sense::kEqual       ? a == r.rhs
                    : r.sense == Sense::kLessEqual ? a <= r.rhs
                                                   : a >= r.rhs;
    if (!ok) out.push_back(r.label);
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] < poly.lower[i] || x[i] > poly.upper[i]) out.push_back("bound:" + poly.names[i]);
  }
  return out;
}

std::vector<std::vector<int>> enumerate_binary_points(const PolyhedronSpec& poly) {
  const std::size_t n = poly.dim();
  struct IRow {
    std::vector<std::pair<int, std::int64_t>> c;
    Sense sense;
    std::int64_t rhs;
  };
  std::vector<IRow> rows;
  std::vector<std::vector<std::pair<int, std::int64_t>>> by_col(n);  // (row, coef)
  for (const PolyRow& r : poly.rows) {
    IRow ir{{}, r.sense, to_int(r.rhs, "rhs of " + r.label)};
    for (const auto& [c, v] : r.coeffs) {
      const std::int64_t iv = to_int(v, "coefficient in " + r.label);
      ir.c.emplace_back(c, iv);
      by_col[c].emplace_back(static_cast<int>(rows.size()), iv);
    }
    rows.push_back(std::move(ir));
  }
  std::vector<int> lo(n), hi(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Rational l = poly.lower[i] < 0 ? Rational(0) : poly.lower[i];
    const Rational h = poly.upper[i] > 1 ? Rational(1) : poly.upper[i];
    lo[i] = l > 0 ? 1 : 0;
    hi[i] = h >= 1 ? 1 : 0;
  }
  std::vector<std::int64_t> min_act(rows.size(), 0), max_act(rows.size(), 0);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (const auto& [c, v] : rows[r].c) {
      min_act[r] += std::min(v * lo[c], v * hi[c]);
      max_act[r] += std::max(v * lo[c], v * hi[c]);
    }
  }
  auto row_ok = [&](std::size_t r) {
    switch (rows[r].sense) {
      case Sense::kLessEqual: return min_act[r] <= rows[r].rhs;
      case Sense::kGreaterEqual: return max_act[r] >= rows[r].rhs;
      case Sense::kEqual: return min_act[r] <= rows[r].rhs && max_act[r] >= rows[r].rhs;
    }
    return false;
  };
  for (std::size_t r = 0; r < rows.size(); ++r)
    if (!row_ok(r)) return {};

  // Branch next on a column of the row with the fewest unfixed columns, so
  // rows are completed (and checked exactly) as early as possible.
  std::vector<int> order;
  {
    std::vector<int> free_count(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) free_count[r] = static_cast<int>(rows[r].c.size());
    std::vector<bool> taken(n, false);
    for (std::size_t k = 0; k < n; ++k) {
      int best = -1, best_score = std::numeric_limits<int>::max();
      for (std::size_t c = 0; c < n; ++c) {
        if (taken[c]) continue;
        int score = std::numeric_limits<int>::max() - 1;
        for (const auto& [r, v] : by_col[c]) score = std::min(score, free_count[r]);
        if (score < best_score) {
          best_score = score;
          best = static_cast<int>(c);
        }
      }
      taken[best] = true;
      order.push_back(best);
      for (const auto& [r, v] : by_col[best]) --free_count[r];
    }
  }

  std::vector<std::vector<int>> out;
  std::vector<int> x(n, 0);
  std::function<void(std::size_t)> dfs = [&](std::size_t k) {
    if (k == n) {
      out.push_back(x);
      return;
    }
    const int i = order[k];
    for (int v = lo[i]; v <= hi[i]; ++v) {
      bool ok = true;
      for (const auto& [r, c] : by_col[i]) {
        min_act[r] += c * v - std::min(c * lo[i], c * hi[i]);
        max_act[r] += c * v - std::max(c * lo[i], c * hi[i]);
      }
      for (const auto& [r, c] : by_col[i]) {
        if (!row_ok(r)) {
          ok = false;
          break;
        }
      }
      if (ok) {
        x[i] = v;
        dfs(k + 1);
      }
      for (const auto& [r, c] : by_col[i]) {
        min_act[r] -= c * v - std::min(c * lo[i], c * hi[i]);
        max_act[r] -= c * v - std::max(c * lo[i], c * hi[i]);
      }
    }
    x[i] = 0;
  };
  dfs(0);
  return out;
}

std::size_t rational_rank(std::vector<std::vector<Rational>> m) {
  if (m.empty()) return 0;
  const std::size_t cols = m[0].size();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t piv = rank;
    while (piv < m.size() && m[piv][c] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[rank]);
    for (std::size_t r = rank + 1; r < m.size(); ++r) {
      if (m[r][c] == 0) continue;
      const Rational f = m[r][c] / m[rank][c];
      for (std::size_t k = c; k < cols; ++k) m[r][k] -= f * m[rank][k];
    }
    ++rank;
  }
  return rank;
}

VertexReport verify_vertex(const PolyhedronSpec& poly, std::span<const Rational> point) {
  VertexReport rep;
  rep.dim = poly.dim();
  rep.violated = violated_rows(poly, point);
  rep.feasible = rep.violated.empty();
  std::vector<std::vector<Rational>> system;
  for (const PolyRow& r : poly.rows) {
    if (activity(r, point) != r.rhs) continue;
    rep.tight.push_back(r.label);
    ++rep.tight_families[r.family];
    std::vector<Rational> dense(poly.dim(), Rational(0));
    for (const auto& [c, v] : r.coeffs) dense[c] += v;
    system.push_back(std::move(dense));
  }
  for (std::size_t i = 0; i < poly.dim(); ++i) {
    const bool at_lo = point[i] == poly.lower[i];
    const bool at_hi = point[i] == poly.upper[i];
    if (!at_lo && !at_hi) continue;
    rep.tight.push_back((at_lo ? "lb:" : "ub:") + poly.names[i]);
    ++rep.tight_families["bound"];
    std::vector<Rational> unit(poly.dim(), Rational(0));
    unit[i] = 1;
    system.push_back(std::move(unit));
  }
  rep.rank = rational_rank(std::move(system));
  rep.is_vertex = rep.feasible && rep.rank == rep.dim;
  return rep;
}

VertexSampleReport sample_vertex_integrality(const PolyhedronSpec& poly, int trials,
                                             std::uint64_t seed, const Backend& backend,
                                             const SolveOptions& options, double tolerance) {
  VertexSampleReport rep;
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  for (int k = 0; k < trials; ++k) {
    std::vector<double> obj(poly.dim());
    for (double& c : obj) c = coef(rng);
    const MipModel model = to_lp_model(poly, obj);
    SolveOptions o = options;
    o.seed = seed + static_cast<std::uint64_t>(k);
    const Solution sol = solve(model, o, backend);
    if (sol.status != SolveStatus::kOptimal) {
      throw Error(ErrorCode::kSolverProcess, "trial " + std::to_string(k) + ": LP status " +
                                                 std::string(to_string(sol.status)));
    }
    double worst = 0.0;
    for (double v : sol.values) worst = std::max(worst, std::abs(v - std::round(v)));
    rep.max_distance = std::max(rep.max_distance, worst);
    ++rep.trials;
    if (worst <= tolerance) {
      ++rep.integral;
    } else {
      ++rep.fractional;
      if (rep.first_fractional.empty()) rep.first_fractional = sol.values;
    }
  }
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

IntMatrix int_matrix(const PolyhedronSpec& poly, bool include_bounds) {
  IntMatrix m;
  for (const PolyRow& r : poly.rows) {
    std::vector<std::int64_t> row(poly.dim(), 0);
    for (const auto& [c, v] : r.coeffs) row[c] += to_int(v, "coefficient in " + r.label);
    m.push_back(std::move(row));
  }
  if (include_bounds) {
    for (std::size_t i = 0; i < poly.dim(); ++i) {
      std::vector<std::int64_t> row(poly.dim(), 0);
      row[i] = 1;
      m.push_back(std::move(row));
    }
  }
  return m;
}

std::int64_t integer_determinant(const IntMatrix& square) {
  const std::size_t n = square.size();
  if (n == 0) return 1;
  // Fraction-free (Bareiss) elimination keeps every intermediate a minor.
  std::vector<std::vector<__int128>> a(n, std::vector<__int128>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = square[i][j];
  int sign = 1;
  __int128 prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && a[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(a[p], a[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
      }
    }
    prev = a[k][k];
  }
  return static_cast<std::int64_t>(sign * a[n - 1][n - 1]);
}

TuReport check_tu_small(const IntMatrix& matrix, int max_order,
                        std::span<const int> structural_columns) {
  TuReport rep;
  rep.max_order = max_order;
  const std::size_t R = matrix.size();
  const std::size_t C = R ? matrix[0].size() : 0;

  for (std::size_t r = 0; r < R && rep.structural_ok; ++r) {
    int count = 0, sum = 0;
    for (int c : structural_columns) {
      const std::int64_t v = matrix[r][c];
      if (v == 0) continue;
      ++count;
      sum += static_cast<int>(v);
      if (v != 1 && v != -1) {
        rep.structural_ok = false;
        rep.structural_violation = "row " + std::to_string(r) + " has entry " + std::to_string(v);
      }
    }
    if (rep.structural_ok && (count > 2 || (count == 2 && sum != 0))) {
      rep.structural_ok = false;
      rep.structural_violation = "row " + std::to_string(r) + " has " + std::to_string(count) +
                                 " nonzeros (sum " + std::to_string(sum) + ")";
    }
  }

  auto fail = [&](std::int64_t det, std::vector<int> rows, std::vector<int> cols) {
    rep.minors_ok = false;
    rep.bad_determinant = det;
    rep.bad_rows = std::move(rows);
    rep.bad_cols = std::move(cols);
  };
  if (max_order < 1) return rep;
  for (std::size_t r = 0; r < R && rep.minors_ok; ++r) {
    for (std::size_t c = 0; c < C; ++c) {
      const std::int64_t v = matrix[r][c];
      if (v > 1 || v < -1) {
        fail(v, {static_cast<int>(r)}, {static_cast<int>(c)});
        break;
      }
    }
    ++rep.submatrices_checked;
  }
  if (!rep.minors_ok) return rep;

  // Peel lines with at most one nonzero until none are left.
  std::vector<bool> row_on(R, true), col_on(C, true);
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t r = 0; r < R; ++r) {
      if (!row_on[r]) continue;
      int nz = 0;
      for (std::size_t c = 0; c < C; ++c) nz += col_on[c] && matrix[r][c] != 0;
      if (nz <= 1) row_on[r] = false, changed = true;
    }
    for (std::size_t c = 0; c < C; ++c) {
      if (!col_on[c]) continue;
      int nz = 0;
      for (std::size_t r = 0; r < R; ++r) nz += row_on[r] && matrix[r][c] != 0;
      if (nz <= 1) col_on[c] = false, changed = true;
    }
  }
  std::vector<int> rows, cols;
  for (std::size_t r = 0; r < R; ++r)
    if (row_on[r]) rows.push_back(static_cast<int>(r));
  for (std::size_t c = 0; c < C; ++c)
    if (col_on[c]) cols.push_back(static_cast<int>(c));
  rep.reduced_rows = rows.size();
  rep.reduced_cols = cols.size();

  // Bipartite support graph of the core: nodes [0, nr) rows, [nr, nr+nc) cols.
  const int nr = static_cast<int>(rows.size());
  const int nn = nr + static_cast<int>(cols.size());
  std::vector<std::vector<int>> adj(nn);
  for (int i = 0; i < nr; ++i) {
    for (int k = 0; k < static_cast<int>(cols.size()); ++k) {
      if (matrix[rows[i]][cols[k]] != 0) {
        adj[i].push_back(nr + k);
        adj[nr + k].push_back(i);
      }
    }
  }

  // Connected vertex sets with at most max_order rows and columns, each
  // produced once (ESU enumeration).
  std::vector<int> sub;
  std::vector<int> near(nn, 0);  // in sub or adjacent to sub, counted
  int sub_rows = 0, sub_cols = 0;
  IntMatrix sq;
  std::function<void(std::vector<int>, int)> extend = [&](std::vector<int> ext, int root) {
    if (!rep.minors_ok) return;
    ++rep.connected_sets;
    if (sub_rows == sub_cols && sub_rows >= 2) {
      std::vector<int> rs, cs;
      for (int v : sub) (v < nr ? rs : cs).push_back(v < nr ? rows[v] : cols[v - nr]);
      std::sort(rs.begin(), rs.end());
      std::sort(cs.begin(), cs.end());
      sq.assign(rs.size(), std::vector<std::int64_t>(cs.size()));
      for (std::size_t i = 0; i < rs.size(); ++i)
        for (std::size_t k = 0; k < cs.size(); ++k) sq[i][k] = matrix[rs[i]][cs[k]];
      ++rep.submatrices_checked;
      const std::int64_t det = integer_determinant(sq);
      if (det > 1 || det < -1) {
        fail(det, rs, cs);
        return;
      }
    }
    while (!ext.empty()) {
      const int w = ext.back();
      ext.pop_back();
      const bool is_row = w < nr;
      if ((is_row && sub_rows >= max_order) || (!is_row && sub_cols >= max_order)) continue;
      std::vector<int> next = ext;
      std::vector<int> touched;
      for (int u : adj[w]) {
        if (u > root && near[u] == 0) next.push_back(u);
      }
      // Mark w's closed neighbourhood.
      ++near[w];
      touched.push_back(w);
      for (int u : adj[w]) {
        ++near[u];
        touched.push_back(u);
      }
      sub.push_back(w);
      (is_row ? sub_rows : sub_cols)++;
      extend(std::move(next), root);
      (is_row ? sub_rows : sub_cols)--;
      sub.pop_back();
      for (int u : touched) --near[u];
      if (!rep.minors_ok) return;
    }
  };
  for (int v = 0; v < nn && rep.minors_ok; ++v) {
    const bool is_row = v < nr;
    sub = {v};
    sub_rows = is_row;
    sub_cols = !is_row;
    ++near[v];
    for (int u : adj[v]) ++near[u];
    std::vector<int> ext;
    for (int u : adj[v])
      if (u > v) ext.push_back(u);
    extend(std::move(ext), v);
    --near[v];
    for (int u : adj[v]) --near[u];
  }
  return rep;
}

bool ProjectionReport::confirmed() const {
  return basic_feasible && witness_ok && !extended_feasible && tv.size() > 1 && tv[1] > 2.0;
}

std::vector<std::vector<double>> projection_pattern() {
  std::vector<std::vector<double>> d(4, std::vector<double>(8, 0.0));
  for (int t = 0; t < 8; ++t) {
    d[0][t] = 0.5;
    d[1][t] = t % 2 == 0 ? 0.4 : 0.1;
    d[2][t] = t % 2 == 0 ? 0.1 : 0.4;
  }
  return d;
}

ProjectionReport verify_projection_counterexample(const TimeSeries& series,
                                                  const Backend& backend,
                                                  const SolveOptions& options) {
  if (series.size() != 8) {
    throw Error(ErrorCode::kInvalidArgument, "the pattern needs exactly 8 points");
  }
  ProjectionReport rep;
  rep.delta = projection_pattern();
  for (const auto& row : rep.delta) rep.tv.push_back(total_variation(row));
  const int K = 4, T = 8;

  FitSpec spec;
  spec.segments = K;
  spec.loss = Loss::kL1;
  spec.assignment = Assignment::kBasic;
  // (i) linear part of the relaxed model with delta fixed, solved as an LP.
  {
    BuiltModel built = build_model(series, spec);
    std::vector<std::pair<VarId, double>> fixes;
    for (int j = 0; j < K; ++j)
      for (int t = 0; t < T; ++t) fixes.emplace_back(built.index.delta[j][t], rep.delta[j][t]);
    const MipModel lp = fix_variables(relax_integrality(built.model), fixes);
    const Solution sol = solve(lp, options, backend);
    rep.basic_lp_status = std::string(to_string(sol.status));
    rep.basic_feasible = sol.status == SolveStatus::kOptimal;
  }
  // (ii) the full model with bilinear continuity, checked at an explicit
  // point: one common line, inner breakpoints at the midpoint of the domain.
  {
    FitSpec full = spec;
    full.continuity = Continuity::kBasicBilinear;
    const ParameterSpace space = parameter_space(series);
    BuiltModel built = build_model(series, full, space, big_m_values(series, space));
    const MipModel relaxed = relax_integrality(built.model);
    const VarIndex& ix = built.index;
    std::vector<double> x(relaxed.num_variables(), 0.0);
    const double m = 0.5 * (space.slope_lo + space.slope_hi);
    const double c = 0.5 * (space.icept_lo + space.icept_hi);
    for (int j = 0; j < K; ++j) {
      x[ix.slope[0][j].index()] = m;
      x[ix.icept[0][j].index()] = c;
      for (int t = 0; t < T; ++t) x[ix.delta[j][t].index()] = rep.delta[j][t];
    }
    const double mid = 0.5 * (series.x(0) + series.x(T - 1));
    x[ix.brk[0].index()] = series.x(0);
    for (int j = 1; j < K; ++j) x[ix.brk[j].index()] = mid;
    x[ix.brk[K].index()] = series.x(T - 1);
    for (int t = 0; t < T; ++t) {
      const double yh = m * series.x(t) + c;
      x[ix.yhat[0][t].index()] = yh;
      x[ix.resid[0][t].index()] = std::abs(series.y(t) - yh);
    }
    rep.witness_violations = violated_rows(relaxed, x, 1e-9);
    rep.witness_ok = rep.witness_violations.empty();
  }
  // (iii) the nested system with the same delta.
  {
    const PolyhedronSpec c1 = fix_delta(build_c1_polyhedron(K, T), rep.delta);
    const Solution sol = solve(to_lp_model(c1), options, backend);
    rep.extended_lp_status = std::string(to_string(sol.status));
    rep.extended_feasible = sol.status != SolveStatus::kInfeasible;
  }
  return rep;
}

std::vector<std::vector<Rational>> half_integral_b1_point() {
  const Rational h(1, 2);
  const Rational z(0);
  return {
      {h, h, h, z, z, z},
      {z, h, z, h, h, h},
      {h, z, h, z, z, z},
      {z, z, z, h, h, h},
  };
}

std::vector<std::vector<int>> skipped_segment_pattern() {
  return {
      {1, 1, 0, 0, 0, 0, 0, 0, 0},
      {0, 0, 1, 1, 1, 0, 0, 0, 0},
      {0, 0, 0, 0, 0, 0, 0, 0, 0},
      {0, 0, 0, 0, 0, 1, 1, 0, 0},
      {0, 0, 0, 0, 0, 0, 0, 1, 1},
  };
}

PatternCheck check_assignment_pattern(const std::vector<std::vector<int>>& delta) {
  if (delta.empty() || delta[0].empty()) {
    throw Error(ErrorCode::kInvalidArgument, "empty assignment pattern");
  }
  const int K = static_cast<int>(delta.size());
  const int T = static_cast<int>(delta[0].size());
  PatternCheck out;
  const PolyhedronSpec b1 = build_b1_polyhedron(K, T);
  std::vector<std::vector<Rational>> dr(K, std::vector<Rational>(T));
  std::vector<std::vector<double>> dd(K, std::vector<double>(T));
  for (int j = 0; j < K; ++j) {
    for (int t = 0; t < T; ++t) {
      dr[j][t] = delta[j][t];
      dd[j][t] = delta[j][t];
    }
  }
  out.b1_violations = violated_rows(b1, delta_point(b1, dr));
  out.b1_accepts = out.b1_violations.empty();
  const auto points = enumerate_binary_points(fix_delta(build_c1_polyhedron(K, T), dd));
  out.c1_accepts = !points.empty();
  if (out.c1_accepts) out.c1_witness = points.front();
  return out;
}

}  // namespace cpfit
