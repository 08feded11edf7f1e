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

// Commands behind the cpfit executable: data ingestion, synthetic series,
// single fits, formulation comparison, the benchmark grid and the polyhedral
// scenarios. Output formats are described in docs/output-formats.md.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cpfit/error.hpp"
#include "cpfit/extensions.hpp"
#include "cpfit/formulations.hpp"
#include "cpfit/series.hpp"
#include "cpfit/solver_backend.hpp"

namespace cpfit {

inline constexpr int kResultSchemaVersion = 1;
inline constexpr int kPlotSchemaVersion = 1;

// ---- ingestion --------------------------------------------------------------

struct CsvOptions {
  std::string x_col;               // empty: implicit index 1..T
  std::vector<std::string> y_cols;  // empty: every column except x
  bool dedup = false;              // average ys over repeated x instead of failing
};

struct Dataset {
  std::string x_name;
  std::vector<std::string> y_names;
  MultiSeries series;
  std::size_t merged = 0;  // rows folded by dedup

  /// Error{kInvalidArgument} unless there is exactly one response column.
  TimeSeries univariate() const;
  Dataset head(std::size_t points) const;
};

/// Errors carry "line N" context: missing header, ragged or non-numeric rows,
/// unknown columns, x not strictly increasing, fewer than 2 rows.
Dataset parse_csv(std::string_view text, const CsvOptions& options);
Dataset ingest_csv(const std::string& path, const CsvOptions& options);

// ---- synthetic data ----------------------------------------------------------

struct SyntheticSpec {
  int segments = 2;
  int points = 20;
  int dims = 1;
  double noise_sigma = 0.0;
  Loss noise = Loss::kL2;  // l2: Gaussian noise, l1: Laplace noise
  std::uint64_t seed = 1;
  double jump = 2.0;         // level shift at each boundary
  double slope_scale = 1.0;  // slopes drawn from [-scale, scale]
  bool continuous = false;   // lines meet between the boundary points
  std::vector<int> change_dims;  // 0-based; empty means every dimension changes
};

struct SyntheticData {
  SyntheticSpec spec;
  Dataset data;
  std::vector<std::size_t> starts;              // first index of segments 2..K
  std::vector<std::vector<double>> slopes;      // [d][j]
  std::vector<std::vector<double>> intercepts;  // [d][j]
};

/// Error{kInvalidArgument} when K > T / 2 or a change dimension is out of range.
SyntheticData generate_synthetic(const SyntheticSpec& spec);
std::string synthetic_csv(const SyntheticData& data);
std::string synthetic_truth_json(const SyntheticData& data);

// ---- single runs -------------------------------------------------------------

struct RunConfig {
  SolveOptions solve;
  std::string backend_path;  // empty: $CPFIT_SOLVER, PATH, bundled adapters
};

struct FitOutcome {
  std::string formulation;
  FitSpec spec;
  Solution solution;
  std::optional<MultiPwlFit> fit;
  std::size_t variables = 0;
  std::size_t constraints = 0;
  std::size_t binaries = 0;
  std::optional<int> sparse_budget;
  std::optional<L0Spec> l0;
};

/// Builds, solves and extracts. D > 1 uses the shared-assignment model and
/// a sparse budget selects the two-segment sparse model.
FitOutcome cmd_fit(const MultiSeries& data, const FitSpec& spec, const RunConfig& config,
                   std::optional<int> sparse_budget = std::nullopt,
                   std::optional<L0Spec> l0 = std::nullopt);

/// Same model as cmd_fit, written as an LP file.
std::string cmd_export(const MultiSeries& data, const FitSpec& spec, const std::string& path,
                       std::optional<int> sparse_budget = std::nullopt,
                       std::optional<L0Spec> l0 = std::nullopt);

struct CompareRow {
  std::string formulation;
  FitSpec spec;
  Solution solution;
  std::optional<double> root_bound;
  std::string root_status;
  std::string error;  // capability or process error; empty when solved
};

struct CompareOutcome {
  int segments = 0;
  Loss loss = Loss::kL1;
  Continuity continuity = Continuity::kNone;
  std::vector<CompareRow> rows;
  std::optional<double> oracle;  // exact optimum when there is no continuity
  bool agree = false;
  double max_rel_diff = 0.0;
  std::string diff_report;
};

/// |a - b| <= tol * max(1, |a|, |b|).
bool objectives_agree(double a, double b, double tol = 1e-6);

CompareOutcome cmd_compare(const TimeSeries& series, int segments, Loss loss,
                           Continuity continuity, const RunConfig& config,
                           bool root_bounds = true);

/// Root relaxation bound of one formulation (LP, or QP/QCP for l2 and
/// bilinear models).
Solution root_relaxation(const TimeSeries& series, const FitSpec& spec, const RunConfig& config);

// ---- benchmark ---------------------------------------------------------------

struct BenchSource {
  std::string name;
  std::optional<Dataset> data;             // first T points are used
  std::optional<SyntheticSpec> synthetic;  // regenerated per T with its seed
};

struct BenchConfig {
  std::vector<BenchSource> sources;
  std::vector<int> points;
  std::vector<int> segments;
  std::vector<Loss> losses;
  std::vector<Continuity> continuities;
  std::vector<Assignment> assignments;  // empty: every applicable formulation
  RunConfig run;
  int repetitions = 1;
  int workers = 1;
};

struct BenchRecord {
  std::string instance;
  std::string source;
  int points = 0;
  int segments = 0;
  Loss loss = Loss::kL1;
  Continuity continuity = Continuity::kNone;
  std::string formulation;
  bool supported = true;
  SolveStatus status = SolveStatus::kError;
  double objective = 0.0;
  double bound = 0.0;
  double gap = 0.0;
  double wall_seconds = 0.0;  // median over repetitions
  std::vector<double> run_seconds;
  bool winner = false;
  bool co_winner = false;
  bool decided_by_gap = false;
  std::string note;
};

/// Marks the winner among the records of one instance: least wall time over
/// optimal runs; when none is optimal, least final gap (ties: less time,
/// then listing order). Optimal runs within 5% of the winner's time become
/// co-winners. Unsupported records never win. Returns false when no record
/// can win.
bool assign_winners(std::vector<BenchRecord*>& instance);

struct SliceSummary {
  std::string slice;  // e.g. "q=1 continuity=none K=2" or "q=1 continuity=none"
  int instances = 0;
  int decided_by_gap = 0;
  std::map<std::string, int> wins;
  std::map<std::string, int> co_wins;
  std::map<std::string, double> total_seconds;
  std::map<std::string, int> runs;
};

std::vector<SliceSummary> summarize(const std::vector<BenchRecord>& records);

struct BenchOutcome {
  std::vector<BenchRecord> records;
  std::vector<SliceSummary> slices;
};

double median(std::vector<double> v);

BenchOutcome cmd_bench(const BenchConfig& config);

// ---- polyhedral scenarios ------------------------------------------------------

struct AnalyzeOptions {
  RunConfig run;
  int segments = 0;  // 0: scenario default
  int points = 0;
  int trials = 0;
  int max_order = 0;
  std::uint64_t seed = 7;
  std::optional<TimeSeries> series;  // prop1 input; default synthetic
};

struct AnalyzeOutcome {
  std::string scenario;
  bool confirmed = false;
  std::string summary;
  std::string report_json;
};

/// Scenarios: prop1, prop2, prop3, tu, tv, skipped-segment.
AnalyzeOutcome cmd_analyze_lp(const std::string& scenario, const AnalyzeOptions& options);

// ---- output files --------------------------------------------------------------

std::string fit_result_json(const FitOutcome& outcome, const Dataset& data,
                            const std::string& source);
std::string plot_data_tsv(const FitOutcome& outcome, const Dataset& data);
std::string compare_result_json(const CompareOutcome& outcome, const std::string& source);
std::string bench_records_csv(const std::vector<BenchRecord>& records);
std::string bench_summary_json(const BenchOutcome& outcome);
std::string winners_table_tsv(const std::vector<SliceSummary>& slices);
std::string runtime_table_tsv(const std::vector<SliceSummary>& slices);

void write_text_file(const std::string& path, std::string_view text);

/// Exit code for an error: 2 for configuration, capability and environment
/// problems.
int exit_code_for(const Error& error);

}  // namespace cpfit
