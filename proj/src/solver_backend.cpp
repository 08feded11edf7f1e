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

#include "cpfit/solver_backend.hpp"

#include <fcntl.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>
#include <thread>

#include "cpfit/error.hpp"

#ifndef CPFIT_BUNDLED_SOLVER_DIR
#define CPFIT_BUNDLED_SOLVER_DIR ""
#endif

namespace cpfit {
namespace fs = std::filesystem;
namespace {

using Clock = std::chrono::steady_clock;

struct ProcessResult {
  int exit_code = -1;
  bool timed_out = false;
  double seconds = 0.0;
};

ProcessResult run_process(const std::vector<std::string>& argv, const fs::path& log_path,
                          double timeout_seconds) {
  std::vector<char*> args;
  for (const auto& a : argv) args.push_back(const_cast<char*>(a.c_str()));
  args.push_back(nullptr);

  const auto start = Clock::now();
  const pid_t pid = fork();
  if (pid < 0) throw Error(ErrorCode::kSolverProcess, std::string("fork: ") + strerror(errno));
  if (pid == 0) {
    setpgid(0, 0);
    const int fd = open(log_path.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
    if (fd >= 0) {
      dup2(fd, STDOUT_FILENO);
      dup2(fd, STDERR_FILENO);
      close(fd);
    }
    const int null_in = open("/dev/null", O_RDONLY);
    if (null_in >= 0) dup2(null_in, STDIN_FILENO);
    execv(args[0], args.data());
    _exit(127);
  }
  ProcessResult res;
  int status = 0;
  auto nap = std::chrono::milliseconds(2);
  while (true) {
    const pid_t r = waitpid(pid, &status, WNOHANG);
    if (r == pid) break;
    if (r < 0 && errno != EINTR) break;
    const double elapsed = std::chrono::duration<double>(Clock::now() - start).count();
    if (elapsed > timeout_seconds) {
      kill(-pid, SIGKILL);
      kill(pid, SIGKILL);
      waitpid(pid, &status, 0);
      res.timed_out = true;
      break;
    }
    std::this_thread::sleep_for(nap);
    nap = std::min(nap * 2, std::chrono::milliseconds(50));
  }
  res.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  if (WIFEXITED(status)) res.exit_code = WEXITSTATUS(status);
  return res;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string tail(const std::string& s, std::size_t n) {
  return s.size() <= n ? s : "..." + s.substr(s.size() - n);
}

bool is_executable(const fs::path& p) {
  std::error_code ec;
  return fs::is_regular_file(p, ec) && access(p.c_str(), X_OK) == 0;
}

std::optional<fs::path> search_path(const std::string& name) {
  const char* path = std::getenv("PATH");
  if (path == nullptr) return std::nullopt;
  std::stringstream ss(path);
  std::string dir;
  while (std::getline(ss, dir, ':')) {
    if (dir.empty()) continue;
    const fs::path p = fs::path(dir) / name;
    if (is_executable(p)) return p;
  }
  return std::nullopt;
}

std::vector<std::string_view> lines_of(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    out.push_back(line);
    if (end == text.size()) break;
    pos = end + 1;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double to_double(std::string_view tok, std::size_t line_no) {
  const std::string s(tok);
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0') {
    throw Error(ErrorCode::kParse,
                "line " + std::to_string(line_no) + ": expected a number, got '" + s + "'");
  }
  return v;
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

SolveStatus status_from_text(const std::string& text, bool values) {
  const std::string s = lower(text);
  if (s == "optimal" || s.find("optimal solution found") != std::string::npos ||
      s.find("gap limit") != std::string::npos) {
    return SolveStatus::kOptimal;
  }
  if (s.find("infeasible") != std::string::npos) return SolveStatus::kInfeasible;
  if (s.find("unbounded") != std::string::npos) return SolveStatus::kUnbounded;
  if (s.find("limit") != std::string::npos || s.find("interrupt") != std::string::npos) {
    return values ? SolveStatus::kFeasibleLimit : SolveStatus::kNoSolution;
  }
  return SolveStatus::kError;
}

void require_all_values(const MipModel& model, const std::vector<bool>& seen) {
  for (std::size_t i = 0; i < seen.size(); ++i) {
    if (!seen[i]) {
      throw Error(ErrorCode::kParse,
                  "solution file has no value for variable '" + model.variables()[i].name + "'");
    }
  }
}

Solution parse_highs(std::string_view text, const MipModel& model) {
  const auto lines = lines_of(text);
  Solution sol;
  std::string status_text;
  bool values = false;
  std::vector<bool> seen(model.num_variables(), false);
  sol.values.assign(model.num_variables(), 0.0);
  std::size_t i = 0;
  auto next_nonblank = [&](std::size_t from) {
    while (from < lines.size() && trim(lines[from]).empty()) ++from;
    return from;
  };
  for (; i < lines.size(); ++i) {
    if (trim(lines[i]) == "Model status") {
      const std::size_t k = next_nonblank(i + 1);
      if (k >= lines.size()) throw Error(ErrorCode::kParse, "line " + std::to_string(i + 1) + ": missing model status");
      status_text = std::string(trim(lines[k]));
      i = k;
      break;
    }
  }
  if (status_text.empty()) throw Error(ErrorCode::kParse, "line 1: no 'Model status' header");
  for (++i; i < lines.size(); ++i) {
    if (trim(lines[i]) != "# Primal solution values") continue;
    const std::size_t k = next_nonblank(i + 1);
    if (k >= lines.size()) break;
    const std::string_view kind = trim(lines[k]);
    if (kind == "None") break;
    values = true;
    i = k + 1;
    for (; i < lines.size(); ++i) {
      const std::string_view l = trim(lines[i]);
      if (l.rfind("Objective", 0) == 0) {
        sol.objective = to_double(trim(l.substr(9)), i + 1);
      } else if (l.rfind("# Columns", 0) == 0) {
        const long n = static_cast<long>(to_double(trim(l.substr(9)), i + 1));
        for (long c = 0; c < n; ++c) {
          ++i;
          if (i >= lines.size()) {
            throw Error(ErrorCode::kParse, "line " + std::to_string(i + 1) +
                                               ": column section ends early");
          }
          const std::string_view cl = trim(lines[i]);
          const auto sp = cl.find_last_of(" \t");
          if (sp == std::string_view::npos) {
            throw Error(ErrorCode::kParse, "line " + std::to_string(i + 1) + ": expected 'name value'");
          }
          const std::string name(trim(cl.substr(0, sp)));
          const double v = to_double(cl.substr(sp + 1), i + 1);
          const VarId id = model.find_variable(name);
          if (id.valid()) {
            sol.values[id.index()] = v;
            seen[id.index()] = true;
          }
        }
        break;
      }
    }
    break;
  }
  sol.status = status_from_text(status_text, values);
  if (values && has_values(sol.status)) {
    require_all_values(model, seen);
  } else {
    sol.values.clear();
  }
  if (sol.status == SolveStatus::kError) sol.message = "solver status: " + status_text;
  return sol;
}

Solution parse_scip(std::string_view text, const MipModel& model) {
  const auto lines = lines_of(text);
  Solution sol;
  std::string status_text;
  bool values = false;
  bool no_solution = false;
  std::vector<bool> seen(model.num_variables(), false);
  sol.values.assign(model.num_variables(), 0.0);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string_view l = trim(lines[i]);
    if (l.empty()) continue;
    if (l.rfind("solution status:", 0) == 0) {
      status_text = std::string(trim(l.substr(16)));
    } else if (l.rfind("objective value:", 0) == 0) {
      sol.objective = to_double(trim(l.substr(16)), i + 1);
      values = true;
    } else if (l == "no solution available") {
      no_solution = true;
    } else {
      if (status_text.empty()) {
        throw Error(ErrorCode::kParse,
                    "line " + std::to_string(i + 1) + ": expected 'solution status:'");
      }
      // name value (obj:c)
      std::string_view body = l;
      if (const auto p = body.find("(obj:"); p != std::string_view::npos) body = trim(body.substr(0, p));
      const auto sp = body.find_last_of(" \t");
      if (sp == std::string_view::npos) {
        throw Error(ErrorCode::kParse, "line " + std::to_string(i + 1) + ": expected 'name value'");
      }
      const std::string name(trim(body.substr(0, sp)));
      const double v = to_double(body.substr(sp + 1), i + 1);
      const VarId id = model.find_variable(name);
      if (id.valid()) {
        sol.values[id.index()] = v;
        seen[id.index()] = true;
      }
    }
  }
  if (status_text.empty() && !no_solution) {
    throw Error(ErrorCode::kParse, "line 1: no 'solution status:' header");
  }
  if (no_solution) values = false;
  sol.status = status_text.empty() ? SolveStatus::kNoSolution : status_from_text(status_text, values);
  if (sol.status == SolveStatus::kOptimal && !values) {
    throw Error(ErrorCode::kParse, "optimal status without an objective value line");
  }
  if (values && has_values(sol.status)) {
    // solve() turns printzeros on, so every variable must be listed.
    require_all_values(model, seen);
  } else {
    sol.values.clear();
  }
  if (sol.status == SolveStatus::kError) sol.message = "solver status: " + status_text;
  return sol;
}

std::string opt_number(double v) {
  std::ostringstream ss;
  ss.precision(17);
  ss << v;
  return ss.str();
}

}  // namespace

std::string_view to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal: return "optimal";
    case SolveStatus::kFeasibleLimit: return "feasible_limit";
    case SolveStatus::kNoSolution: return "no_solution";
    case SolveStatus::kInfeasible: return "infeasible";
    case SolveStatus::kUnbounded: return "unbounded";
    case SolveStatus::kError: return "error";
  }
  return "error";
}

std::string_view to_string(BackendKind kind) {
  return kind == BackendKind::kHighs ? "highs" : "scip";
}

SolverCapabilities capabilities_of(BackendKind kind) {
  if (kind == BackendKind::kHighs) return {true, true, false, false};
  return {true, true, true, true};
}

Backend make_backend(const std::string& executable, std::optional<BackendKind> kind) {
  const fs::path p(executable);
  if (!is_executable(p)) {
    throw Error(ErrorCode::kBackendUnavailable,
                "solver executable '" + executable + "' does not exist or is not executable");
  }
  Backend b;
  b.executable = fs::absolute(p).string();
  if (kind) {
    b.kind = *kind;
  } else {
    const std::string base = lower(p.filename().string());
    if (base.find("highs") != std::string::npos) {
      b.kind = BackendKind::kHighs;
    } else if (base.find("scip") != std::string::npos) {
      b.kind = BackendKind::kScip;
    } else {
      throw Error(ErrorCode::kBackendUnavailable,
                  "cannot tell the solver convention of '" + executable +
                      "'; its name must contain 'highs' or 'scip'");
    }
  }
  b.caps = capabilities_of(b.kind);
  return b;
}

Backend resolve_backend(const std::string& explicit_path, BackendKind preferred) {
  if (!explicit_path.empty()) return make_backend(explicit_path);
  if (const char* env = std::getenv("CPFIT_SOLVER"); env != nullptr && *env != '\0') {
    return make_backend(env);
  }
  const std::string name(to_string(preferred));
  if (auto p = search_path(name)) return make_backend(p->string(), preferred);
  const fs::path bundled = fs::path(CPFIT_BUNDLED_SOLVER_DIR) / name;
  if (!std::string_view(CPFIT_BUNDLED_SOLVER_DIR).empty() && is_executable(bundled)) {
    return make_backend(bundled.string(), preferred);
  }
  throw Error(ErrorCode::kBackendUnavailable,
              "no '" + name + "' solver found; pass --backend-path or set CPFIT_SOLVER");
}

Backend resolve_backend_for(const MipModel& model, const std::string& explicit_path) {
  const bool quadratic = model.has_bilinear() || model.has_quadratic_objective();
  return resolve_backend(explicit_path, quadratic ? BackendKind::kScip : BackendKind::kHighs);
}

void check_capabilities(const MipModel& model, const Backend& backend) {
  const auto& c = backend.caps;
  auto fail = [&](const std::string& what) {
    throw Error(ErrorCode::kCapabilityMismatch,
                "backend '" + backend.name() + "' lacks " + what + " needed by model '" +
                    model.name() + "'; use 'cpfit export' to write the LP file for a capable solver");
  };
  if (model.has_bilinear() && !c.solves_bilinear) fail("solves_bilinear");
  if (model.has_quadratic_objective() && !c.solves_convex_miqp) fail("solves_convex_miqp");
  if (model.num_binaries() > 0 && !c.solves_milp) fail("solves_milp");
  if (!c.solves_lp) fail("solves_lp");
}

double relative_gap(double objective, double bound) {
  if (!std::isfinite(objective) || !std::isfinite(bound)) {
    return std::numeric_limits<double>::infinity();
  }
  const double diff = std::max(0.0, objective - bound);
  return diff / std::max(std::abs(objective), 1e-9);
}

Solution parse_solution_file(std::string_view text, const MipModel& model, BackendKind dialect) {
  return dialect == BackendKind::kHighs ? parse_highs(text, model) : parse_scip(text, model);
}

LogBounds parse_log_bounds(std::string_view log, BackendKind dialect) {
  LogBounds out;
  static const std::regex highs_dual(R"(^\s*Dual bound\s*:?\s*(\S+))");
  static const std::regex highs_primal(R"(^\s*Primal bound\s*:?\s*(\S+))");
  static const std::regex scip_dual(R"(^\s*Dual Bound\s*:\s*(\S+))");
  static const std::regex scip_primal(R"(^\s*Primal Bound\s*:\s*(\S+))");
  const std::regex& dual = dialect == BackendKind::kHighs ? highs_dual : scip_dual;
  const std::regex& primal = dialect == BackendKind::kHighs ? highs_primal : scip_primal;
  for (std::string_view line : lines_of(log)) {
    const std::string l(line);
    std::smatch m;
    auto num = [&](const std::string& s) -> std::optional<double> {
      char* end = nullptr;
      const double v = std::strtod(s.c_str(), &end);
      if (end == s.c_str()) return std::nullopt;
      return v;
    };
    if (std::regex_search(l, m, dual)) {
      if (auto v = num(m[1].str())) out.dual = v;
    } else if (std::regex_search(l, m, primal)) {
      if (auto v = num(m[1].str())) out.primal = v;
    }
  }
  return out;
}

std::string export_model(const MipModel& model, const std::string& path) {
  std::error_code ec;
  const fs::path p(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path(), ec);
  std::ofstream out(p, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot open '" + path + "' for writing");
  out << emit_lp_text(model);
  out.close();
  if (!out) throw Error(ErrorCode::kIo, "failed writing '" + path + "'");
  return path;
}

Solution solve(const MipModel& model, const SolveOptions& options, const Backend& backend) {
  if (!(options.time_limit_seconds > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "time limit must be positive");
  }
  check_capabilities(model, backend);

  const fs::path base =
      options.work_dir.empty() ? fs::temp_directory_path() : fs::path(options.work_dir);
  std::error_code ec;
  fs::create_directories(base, ec);
  std::string tmpl = (base / "cpfit-XXXXXX").string();
  if (mkdtemp(tmpl.data()) == nullptr) {
    throw Error(ErrorCode::kIo, "cannot create scratch directory under " + base.string());
  }
  const fs::path dir(tmpl);
  const fs::path lp = dir / "model.lp";
  const fs::path sol_path = dir / "model.sol";
  const fs::path log_path = dir / "solver.log";
  export_model(model, lp.string());

  std::vector<std::string> argv{backend.executable};
  const std::uint64_t seed = options.seed % 2147483647ULL;
  if (backend.kind == BackendKind::kHighs) {
    const fs::path opts = dir / "options.txt";
    std::ofstream o(opts);
    o << "time_limit = " << opt_number(options.time_limit_seconds) << "\n"
      << "mip_rel_gap = " << opt_number(options.rel_gap_tol) << "\n"
      << "mip_abs_gap = 1e-09\n"
      << "threads = " << options.threads << "\n"
      << "random_seed = " << seed << "\n"
      << "mip_feasibility_tolerance = " << opt_number(options.feasibility_tol) << "\n"
      << "primal_feasibility_tolerance = " << opt_number(options.feasibility_tol) << "\n";
    o.close();
    argv.insert(argv.end(), {"--model_file", lp.string(), "--solution_file", sol_path.string(),
                             "--options_file", opts.string()});
  } else {
    std::ostringstream c;
    c << "set limits time " << opt_number(options.time_limit_seconds)
      << " set limits gap " << opt_number(options.rel_gap_tol)
      << " set limits absgap 1e-09"
      << " set randomization randomseedshift " << seed
      << " set parallel maxnthreads " << options.threads
      << " set numerics feastol " << opt_number(options.feasibility_tol)
      << " set write printzeros TRUE"
      << " read " << lp.string() << " optimize write solution " << sol_path.string()
      << " display statistics quit";
    argv.insert(argv.end(), {"-c", c.str()});
  }
  argv.insert(argv.end(), backend.extra_args.begin(), backend.extra_args.end());

  const double timeout = options.time_limit_seconds * 1.5 + 30.0;
  const ProcessResult pr = run_process(argv, log_path, timeout);
  const std::string log = read_file(log_path);

  Solution sol;
  if (pr.timed_out) {
    sol.status = SolveStatus::kNoSolution;
    sol.message = "solver killed after " + opt_number(pr.seconds) + " s";
  } else if (pr.exit_code != 0) {
    if (!options.keep_files) fs::remove_all(dir, ec);
    throw Error(ErrorCode::kSolverProcess, backend.name() + " exited with code " +
                                               std::to_string(pr.exit_code) + "\n" +
                                               tail(log, 2000));
  } else if (!fs::exists(sol_path)) {
    if (!options.keep_files) fs::remove_all(dir, ec);
    throw Error(ErrorCode::kSolverProcess,
                backend.name() + " wrote no solution file\n" + tail(log, 2000));
  } else {
    sol = parse_solution_file(read_file(sol_path), model, backend.kind);
  }
  const LogBounds bounds = parse_log_bounds(log, backend.kind);
  if (bounds.dual) sol.best_bound = *bounds.dual;
  if (sol.status == SolveStatus::kOptimal && !std::isfinite(sol.best_bound)) {
    sol.best_bound = sol.objective;
  }
  if (has_values(sol.status)) {
    sol.gap = relative_gap(sol.objective, sol.best_bound);
  }
  sol.wall_seconds = pr.seconds;
  sol.gap_tolerance = options.rel_gap_tol;
  sol.backend = backend.name();
  if (!options.keep_files) fs::remove_all(dir, ec);
  return sol;
}

}  // namespace cpfit
