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

// External LP/MIP solvers driven through LP files and subprocesses.
//
// Two executable conventions are understood, chosen by the executable's
// basename (or forced with BackendKind):
//
//   highs  --model_file m.lp --solution_file s.sol --options_file o.txt ...
//          raw solution style ("Model status", "# Columns N", name value)
//   scip   -c "set ... read m.lp optimize write solution s.sol ... quit"
//          "solution status:", "objective value:", name value (obj:c)
//
// Best bounds are taken from the captured solver log.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cpfit/model_ir.hpp"
#include "cpfit/solution.hpp"

namespace cpfit {

struct SolverCapabilities {
  bool solves_lp = false;
  bool solves_milp = false;
  bool solves_convex_miqp = false;
  bool solves_bilinear = false;
};

enum class BackendKind { kHighs, kScip };

std::string_view to_string(BackendKind kind);
SolverCapabilities capabilities_of(BackendKind kind);

struct Backend {
  BackendKind kind = BackendKind::kHighs;
  std::string executable;
  SolverCapabilities caps;
  std::vector<std::string> extra_args;

  std::string name() const { return std::string(to_string(kind)); }
};

struct SolveOptions {
  double time_limit_seconds = 2000.0;
  double rel_gap_tol = 1e-6;
  int threads = 1;
  std::uint64_t seed = 0;
  /// Primal feasibility and integrality tolerance.
  double feasibility_tol = 1e-9;
  /// Parent of the per-solve scratch directories; empty selects the system
  /// temp directory.
  std::string work_dir;
  bool keep_files = false;
};

/// Infers the convention from the basename; Error{kBackendUnavailable} when
/// the file is missing or not executable, or the name is not recognized and
/// no kind is forced.
Backend make_backend(const std::string& executable,
                     std::optional<BackendKind> kind = std::nullopt);

/// Resolution order: explicit path, $CPFIT_SOLVER, PATH lookup of the
/// preferred name, then the adapters bundled with the build. The preferred
/// name is used for the last two steps.
Backend resolve_backend(const std::string& explicit_path, BackendKind preferred);

/// Picks highs for LP/MILP models and scip for anything quadratic, unless an
/// explicit path or $CPFIT_SOLVER is set.
Backend resolve_backend_for(const MipModel& model, const std::string& explicit_path);

/// Error{kCapabilityMismatch} naming the missing capability.
void check_capabilities(const MipModel& model, const Backend& backend);

/// Never starts a process for a model the backend cannot handle.
Solution solve(const MipModel& model, const SolveOptions& options, const Backend& backend);

/// Writes emit_lp_text(model). Error{kIo} on failure.
std::string export_model(const MipModel& model, const std::string& path);

/// Status, objective and values from a solution file. Variables are matched
/// by name; names the model does not know are ignored. Throws Error{kParse}
/// with line context, naming any model variable absent from a file that
/// reports values.
Solution parse_solution_file(std::string_view text, const MipModel& model, BackendKind dialect);

struct LogBounds {
  std::optional<double> primal;
  std::optional<double> dual;
};
LogBounds parse_log_bounds(std::string_view log, BackendKind dialect);

/// (objective - bound) / max(|objective|, 1e-9), clipped at zero.
double relative_gap(double objective, double bound);

}  // namespace cpfit
