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

// cpfit command line. Exit codes: 0 success, 1 claim or agreement failure,
// 2 configuration, capability or environment error.

#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cpfit/cli_bench.hpp"

namespace {

using namespace cpfit;

const std::map<std::string, Loss> kLosses{{"l1", Loss::kL1}, {"l2", Loss::kL2}};
const std::map<std::string, Continuity> kContinuities{{"none", Continuity::kNone},
                                                      {"basic", Continuity::kBasicBilinear},
                                                      {"alternate", Continuity::kAlternateLinear}};
const std::vector<std::string> kFormulations{"basic", "alternate", "extended", "extended-basic",
                                             "extended-alternate", "all"};

struct Common {
  std::string data;
  std::string x_col;
  std::vector<std::string> y_cols;
  bool dedup = false;
  int segments = 2;
  std::string loss = "l1";
  std::string continuity = "none";
  std::string formulation = "all";
  double time_limit = 2000.0;
  int threads = 1;
  std::uint64_t seed = 0;
  std::string backend_path;
  std::string out = "cpfit-out";
  bool keep_files = false;
};

void add_data_flags(CLI::App* app, Common& c) {
  app->add_option("--data", c.data, "CSV file with a header row")->check(CLI::ExistingFile);
  app->add_option("--x-col", c.x_col, "x column (default: x or t if present, else 1..T)");
  app->add_option("--y-cols", c.y_cols, "response columns (default: all but x)")->delimiter(',');
  app->add_flag("--dedup", c.dedup, "average responses over repeated x values");
}

void add_model_flags(CLI::App* app, Common& c) {
  app->add_option("--segments,-K", c.segments, "number of segments")->check(CLI::PositiveNumber);
  app->add_option("--loss", c.loss)->check(CLI::IsMember({"l1", "l2"}));
  app->add_option("--continuity", c.continuity)->check(CLI::IsMember({"none", "basic", "alternate"}));
}

void add_solver_flags(CLI::App* app, Common& c) {
  app->add_option("--time-limit", c.time_limit, "seconds per solve")->check(CLI::PositiveNumber);
  app->add_option("--threads", c.threads)->check(CLI::PositiveNumber);
  app->add_option("--seed", c.seed);
  app->add_option("--backend-path", c.backend_path, "solver executable (env CPFIT_SOLVER)");
  app->add_flag("--keep-files", c.keep_files, "keep solver working directories");
}

RunConfig run_config(const Common& c) {
  RunConfig r;
  r.solve.time_limit_seconds = c.time_limit;
  r.solve.threads = c.threads;
  r.solve.seed = c.seed;
  r.solve.keep_files = c.keep_files;
  r.backend_path = c.backend_path;
  return r;
}

Dataset load(const Common& c) {
  if (c.data.empty()) throw Error(ErrorCode::kInvalidArgument, "--data is required");
  Dataset d = ingest_csv(c.data, CsvOptions{c.x_col, c.y_cols, c.dedup});
  if (d.merged > 0) {
    std::cerr << "warning: averaged " << d.merged << " rows with repeated x values\n";
  }
  return d;
}

// Formulations selected by --formulation under the given continuity.
std::vector<FitSpec> selected(const Common& c) {
  const Loss q = kLosses.at(c.loss);
  const Continuity cont = kContinuities.at(c.continuity);
  const std::string& f = c.formulation;
  if (f == "all") return formulations_for(c.segments, q, cont);
  FitSpec s{c.segments, q, cont, Assignment::kBasic, false};
  if (f == "alternate") {
    s.assignment = Assignment::kAlternate;
  } else if (f.rfind("extended", 0) == 0) {
    s.assignment = Assignment::kExtended;
    const Continuity implied = f == "extended-basic"       ? Continuity::kBasicBilinear
                               : f == "extended-alternate" ? Continuity::kAlternateLinear
                                                           : cont;
    if (f != "extended" && cont != Continuity::kNone && cont != implied) {
      throw Error(ErrorCode::kIncompatibleSpec,
                  "--formulation " + f + " conflicts with --continuity " + c.continuity);
    }
    s.continuity = implied;
  }
  if (s.assignment == Assignment::kAlternate && s.continuity == Continuity::kBasicBilinear) {
    throw Error(ErrorCode::kIncompatibleSpec,
                "the alternate assignment has no bilinear continuity variant");
  }
  return {s};
}

std::string slug(std::string name) {
  for (char& ch : name) ch = ch == ' ' ? '-' : static_cast<char>(std::tolower(ch));
  return name;
}

BenchRecord record_of(const FitOutcome& o, const std::string& source, int points) {
  BenchRecord r;
  r.instance = source;
  r.source = source;
  r.points = points;
  r.segments = o.spec.segments;
  r.loss = o.spec.loss;
  r.continuity = o.spec.continuity;
  r.formulation = o.formulation;
  r.status = o.solution.status;
  r.objective = o.solution.objective;
  r.bound = o.solution.best_bound;
  r.gap = o.solution.gap;
  r.wall_seconds = o.solution.wall_seconds;
  r.run_seconds = {o.solution.wall_seconds};
  r.note = o.solution.message;
  return r;
}

std::vector<int> parse_ints(const std::vector<std::string>& items) {
  std::vector<int> out;
  for (const auto& s : items) out.push_back(std::stoi(s));
  return out;
}

int run_fit(const Common& c, std::optional<int> sparse, std::optional<double> lambda,
            bool strict_l0) {
  const Dataset data = load(c);
  std::optional<L0Spec> l0;
  if (lambda) {
    L0Spec s;
    s.lambda = *lambda;
    s.strict_rows = strict_l0;
    l0 = s;
  }
  std::vector<FitSpec> specs = selected(c);
  if (sparse || l0 || data.series.dims() > 1) {
    if (c.formulation == "all") specs = {specs.front()};
  }
  std::vector<BenchRecord> records;
  for (const FitSpec& spec : specs) {
    const FitOutcome o = cmd_fit(data.series, spec, run_config(c), sparse, l0);
    const std::string stem = specs.size() == 1 ? "" : "-" + slug(o.formulation);
    write_text_file(c.out + "/result" + stem + ".json", fit_result_json(o, data, c.data));
    write_text_file(c.out + "/plot" + stem + ".tsv", plot_data_tsv(o, data));
    records.push_back(record_of(o, c.data, static_cast<int>(data.series.size())));
    std::cout << o.formulation << ": " << to_string(o.solution.status) << " objective "
              << format_number(o.solution.objective) << " gap " << format_number(o.solution.gap)
              << " (" << o.solution.backend << ", " << format_number(o.solution.wall_seconds)
              << " s)\n";
  }
  write_text_file(c.out + "/records.csv", bench_records_csv(records));
  return 0;
}

int run_compare(const Common& c, bool root) {
  const Dataset data = load(c);
  const CompareOutcome o = cmd_compare(data.univariate(), c.segments, kLosses.at(c.loss),
                                       kContinuities.at(c.continuity), run_config(c), root);
  write_text_file(c.out + "/compare.json", compare_result_json(o, c.data));
  std::vector<BenchRecord> records;
  for (const auto& row : o.rows) {
    BenchRecord r;
    r.instance = r.source = c.data;
    r.points = static_cast<int>(data.series.size());
    r.segments = o.segments;
    r.loss = o.loss;
    r.continuity = o.continuity;
    r.formulation = row.formulation;
    r.supported = row.error.empty();
    r.status = row.solution.status;
    r.objective = row.solution.objective;
    r.bound = row.solution.best_bound;
    r.gap = row.solution.gap;
    r.wall_seconds = row.solution.wall_seconds;
    r.run_seconds = {r.wall_seconds};
    r.note = row.error;
    records.push_back(r);
    std::cout << row.formulation << ": "
              << (row.error.empty() ? std::string(to_string(row.solution.status)) : row.error)
              << " objective " << format_number(row.solution.objective) << " root "
              << (row.root_bound ? format_number(*row.root_bound) : std::string("-")) << " ("
              << format_number(row.solution.wall_seconds) << " s)\n";
  }
  write_text_file(c.out + "/records.csv", bench_records_csv(records));
  if (o.oracle) std::cout << "oracle: " << format_number(*o.oracle) << "\n";
  if (!o.agree) {
    std::cerr << "objectives disagree:\n" << o.diff_report;
    return 1;
  }
  std::cout << "objectives agree (max relative difference " << format_number(o.max_rel_diff)
            << ")\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cpfit: change-point detection by piecewise-linear MIP fitting"};
  app.require_subcommand(1);
  Common c;

  auto* fit = app.add_subcommand("fit", "fit one or all formulations and write results");
  add_data_flags(fit, c);
  add_model_flags(fit, c);
  add_solver_flags(fit, c);
  fit->add_option("--formulation", c.formulation)->check(CLI::IsMember(kFormulations));
  std::optional<int> sparse;
  std::optional<double> lambda;
  bool strict_l0 = false;
  fit->add_option("--sparse-budget", sparse, "two segments, at most S changed dimensions");
  fit->add_option("--l0-lambda", lambda, "penalty per used segment (K is then an upper bound)");
  fit->add_flag("--l0-strict", strict_l0, "unused-segment indicator rows without a penalty reward");
  fit->add_option("--out", c.out, "output directory");

  bool no_root = false;
  auto* compare = app.add_subcommand("compare", "solve every applicable formulation and check agreement");
  add_data_flags(compare, c);
  add_model_flags(compare, c);
  add_solver_flags(compare, c);
  compare->add_flag("--no-root", no_root, "skip root relaxation bounds");
  compare->add_option("--out", c.out, "output directory");

  std::vector<std::string> bench_data, bench_points{"15", "25"}, bench_segments{"2", "3"},
      bench_losses{"l1", "l2"}, bench_conts{"none"};
  int synthetic_sources = 0, repetitions = 1, workers = 1;
  double noise = 0.5;
  auto* bench = app.add_subcommand("bench", "run the benchmark grid");
  bench->add_option("--data", bench_data, "CSV sources (first column pair by default)")
      ->check(CLI::ExistingFile);
  bench->add_option("--x-col", c.x_col);
  bench->add_option("--y-cols", c.y_cols)->delimiter(',');
  bench->add_flag("--dedup", c.dedup);
  bench->add_option("--synthetic", synthetic_sources, "number of synthetic sources");
  bench->add_option("--noise", noise, "noise level of synthetic sources");
  bench->add_option("--points,-T", bench_points)->delimiter(',');
  bench->add_option("--segments,-K", bench_segments)->delimiter(',');
  bench->add_option("--loss", bench_losses)->delimiter(',')->check(CLI::IsMember({"l1", "l2"}));
  bench->add_option("--continuity", bench_conts)
      ->delimiter(',')
      ->check(CLI::IsMember({"none", "basic", "alternate"}));
  bench->add_option("--formulation", c.formulation)->check(CLI::IsMember(kFormulations));
  bench->add_option("--repetitions", repetitions)->check(CLI::PositiveNumber);
  bench->add_option("--workers", workers, "instances solved in parallel")->check(CLI::PositiveNumber);
  add_solver_flags(bench, c);
  bench->add_option("--out", c.out, "output directory");

  std::string scenario;
  AnalyzeOptions aopt;
  auto* analyze = app.add_subcommand("analyze-lp", "verify a polyhedral claim");
  analyze->add_option("scenario", scenario, "prop1, prop2, prop3, tu, tv, skipped-segment")->required();
  add_data_flags(analyze, c);
  analyze->add_option("--segments,-K", aopt.segments);
  analyze->add_option("--points,-T", aopt.points);
  analyze->add_option("--trials", aopt.trials);
  analyze->add_option("--max-order", aopt.max_order);
  analyze->add_option("--sample-seed", aopt.seed);
  add_solver_flags(analyze, c);
  analyze->add_option("--out", c.out, "output directory");

  std::string export_path = "model.lp";
  auto* exp = app.add_subcommand("export", "write the model as an LP file without solving");
  add_data_flags(exp, c);
  add_model_flags(exp, c);
  exp->add_option("--formulation", c.formulation)->check(CLI::IsMember(kFormulations));
  exp->add_option("--sparse-budget", sparse);
  exp->add_option("--l0-lambda", lambda);
  exp->add_flag("--l0-strict", strict_l0);
  exp->add_option("--out", c.out, "output directory");

  SyntheticSpec syn;
  std::string noise_loss = "l2";
  std::vector<int> change_dims;
  auto* synth = app.add_subcommand("synth", "generate a synthetic series with known truth");
  synth->add_option("--segments,-K", syn.segments);
  synth->add_option("--points,-T", syn.points);
  synth->add_option("--dims", syn.dims);
  synth->add_option("--noise", syn.noise_sigma);
  synth->add_option("--noise-loss", noise_loss, "l2: Gaussian, l1: Laplace")
      ->check(CLI::IsMember({"l1", "l2"}));
  synth->add_option("--seed", syn.seed);
  synth->add_option("--jump", syn.jump);
  synth->add_option("--slope-scale", syn.slope_scale);
  synth->add_flag("--continuous", syn.continuous);
  synth->add_option("--change-dims", change_dims, "1-based dimensions that change")->delimiter(',');
  synth->add_option("--out", c.out, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*fit) {
      if (sparse && lambda) {
        throw Error(ErrorCode::kInvalidArgument, "--sparse-budget and --l0-lambda are exclusive");
      }
      return run_fit(c, sparse, lambda, strict_l0);
    }
    if (*compare) return run_compare(c, !no_root);
    if (*bench) {
      BenchConfig cfg;
      for (const auto& path : bench_data) {
        cfg.sources.push_back({std::filesystem::path(path).stem().string(),
                               ingest_csv(path, CsvOptions{c.x_col, c.y_cols, c.dedup}),
                               std::nullopt});
      }
      if (bench_data.empty() && synthetic_sources == 0) synthetic_sources = 2;
      for (int k = 0; k < synthetic_sources; ++k) {
        SyntheticSpec s;
        s.segments = 3;
        s.noise_sigma = noise;
        s.seed = c.seed + 1 + k;
        cfg.sources.push_back({"synthetic" + std::to_string(k + 1), std::nullopt, s});
      }
      cfg.points = parse_ints(bench_points);
      cfg.segments = parse_ints(bench_segments);
      for (const auto& q : bench_losses) cfg.losses.push_back(kLosses.at(q));
      for (const auto& k : bench_conts) cfg.continuities.push_back(kContinuities.at(k));
      if (c.formulation != "all") {
        for (const FitSpec& s : selected(c)) cfg.assignments.push_back(s.assignment);
      }
      cfg.run = run_config(c);
      cfg.repetitions = repetitions;
      cfg.workers = workers;
      const BenchOutcome o = cmd_bench(cfg);
      write_text_file(c.out + "/records.csv", bench_records_csv(o.records));
      write_text_file(c.out + "/summary.json", bench_summary_json(o));
      write_text_file(c.out + "/winners.tsv", winners_table_tsv(o.slices));
      write_text_file(c.out + "/runtime.tsv", runtime_table_tsv(o.slices));
      std::cout << winners_table_tsv(o.slices) << "\n" << runtime_table_tsv(o.slices);
      return 0;
    }
    if (*analyze) {
      aopt.run = run_config(c);
      if (!c.data.empty()) aopt.series = load(c).univariate();
      const AnalyzeOutcome o = cmd_analyze_lp(scenario, aopt);
      write_text_file(c.out + "/analyze-" + scenario + ".json", o.report_json);
      std::cout << scenario << ": " << (o.confirmed ? "confirmed" : "NOT confirmed") << "\n"
                << o.summary << "\n";
      if (!o.confirmed) {
        std::cerr << o.report_json;
        return 1;
      }
      return 0;
    }
    if (*exp) {
      const Dataset data = load(c);
      std::optional<L0Spec> l0;
      if (lambda) l0 = L0Spec{*lambda, 0.0, strict_l0};
      for (const FitSpec& spec : selected(c)) {
        const std::string path = c.out + "/" + slug(formulation_name(spec)) + ".lp";
        std::filesystem::create_directories(c.out);
        std::cout << cmd_export(data.series, spec, path, sparse, l0) << "\n";
      }
      return 0;
    }
    if (*synth) {
      syn.noise = kLosses.at(noise_loss);
      for (int d : change_dims) syn.change_dims.push_back(d - 1);
      const SyntheticData s = generate_synthetic(syn);
      write_text_file(c.out + "/data.csv", synthetic_csv(s));
      write_text_file(c.out + "/truth.json", synthetic_truth_json(s));
      std::cout << c.out << "/data.csv\n";
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
