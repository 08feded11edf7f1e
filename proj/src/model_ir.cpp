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

#include "cpfit/model_ir.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>
#include <sstream>

#include "cpfit/error.hpp"

namespace cpfit {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidBounds: return "InvalidBounds";
    case ErrorCode::kOutOfDomain: return "OutOfDomain";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kInvalidSeries: return "InvalidSeries";
    case ErrorCode::kIncompatibleSpec: return "IncompatibleSpec";
    case ErrorCode::kFractionalAssignment: return "FractionalAssignment";
    case ErrorCode::kNonContiguousAssignment: return "NonContiguousAssignment";
    case ErrorCode::kCapabilityMismatch: return "CapabilityMismatch";
    case ErrorCode::kSolverProcess: return "SolverProcessError";
    case ErrorCode::kParse: return "ParseError";
    case ErrorCode::kIo: return "IoError";
    case ErrorCode::kBackendUnavailable: return "BackendUnavailable";
  }
  return "Unknown";
}

void AffineExpr::normalize() {
  std::stable_sort(terms.begin(), terms.end(),
                   [](const Term& a, const Term& b) { return a.var < b.var; });
  std::vector<Term> merged;
  merged.reserve(terms.size());
  for (const Term& t : terms) {
    if (!merged.empty() && merged.back().var == t.var) {
      merged.back().coef += t.coef;
    } else {
      merged.push_back(t);
    }
  }
  std::erase_if(merged, [](const Term& t) { return t.coef == 0.0; });
  terms = std::move(merged);
}

VarId MipModel::add_variable(VariableDef def) {
  if (std::isnan(def.lower) || std::isnan(def.upper) || def.lower > def.upper) {
    throw Error(ErrorCode::kInvalidBounds,
                "variable '" + def.name + "' has lower " + format_number(def.lower) +
                    " > upper " + format_number(def.upper));
  }
  if (def.kind == VarKind::kBinary && (def.lower < 0.0 || def.upper > 1.0)) {
    throw Error(ErrorCode::kInvalidBounds,
                "binary variable '" + def.name + "' must have bounds within [0, 1]");
  }
  if (def.name.empty()) def.name = "v" + std::to_string(variables_.size());
  if (by_name_.contains(def.name)) {
    throw Error(ErrorCode::kInvalidArgument, "duplicate variable name '" + def.name + "'");
  }
  VarId id{static_cast<std::int32_t>(variables_.size())};
  by_name_.emplace(def.name, id);
  variables_.push_back(std::move(def));
  return id;
}

const std::string& MipModel::add_constraint(ConstraintDef row) {
  if (row.label.empty()) row.label = "R" + std::to_string(constraints_.size());
  constraints_.push_back(std::move(row));
  return constraints_.back().label;
}

std::size_t MipModel::num_binaries() const {
  return static_cast<std::size_t>(std::count_if(
      variables_.begin(), variables_.end(),
      [](const VariableDef& v) { return v.kind == VarKind::kBinary; }));
}

VarId MipModel::find_variable(const std::string& name) const {
  auto it = by_name_.find(name);
  return it == by_name_.end() ? VarId{} : it->second;
}

MipModel relax_integrality(const MipModel& model) {
  MipModel relaxed = model;
  for (std::size_t i = 0; i < relaxed.num_variables(); ++i) {
    VariableDef& v = relaxed.mutable_variable(VarId{static_cast<std::int32_t>(i)});
    if (v.kind == VarKind::kBinary) v.kind = VarKind::kContinuous;
  }
  return relaxed;
}

MipModel fix_variables(const MipModel& model,
                       std::span<const std::pair<VarId, double>> assignments) {
  MipModel fixed = model;
  for (const auto& [id, value] : assignments) {
    if (!id.valid() || id.index() >= fixed.num_variables()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "fix_variables: unknown variable id " + std::to_string(id.value));
    }
    VariableDef& v = fixed.mutable_variable(id);
    if (std::isnan(value) || value < v.lower || value > v.upper) {
      throw Error(ErrorCode::kOutOfDomain, "value " + format_number(value) +
                                               " outside bounds of '" + v.name + "'");
    }
    if (v.kind == VarKind::kBinary && value != 0.0 && value != 1.0) {
      throw Error(ErrorCode::kOutOfDomain,
                  "binary '" + v.name + "' cannot take value " + format_number(value));
    }
    v.lower = value;
    v.upper = value;
  }
  return fixed;
}

std::string format_number(double value) {
  if (std::isinf(value)) return value > 0 ? "+inf" : "-inf";
  if (value == 0.0) return "0";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

namespace {

// CPLEX readers reject overly long lines, so rows wrap after this many terms.
constexpr int kTermsPerLine = 8;

class LpWriter {
 public:
  explicit LpWriter(const MipModel& model) : model_(model) {}

  std::string run() {
    out_ << "\\ Problem name: " << model_.name() << "\n";
    for (const auto& [key, value] : model_.metadata()) {
      out_ << "\\ " << key << " = " << value << "\n";
    }
    objective();
    constraints();
    bounds();
    binaries();
    out_ << "End\n";
    return out_.str();
  }

 private:
  const std::string& name(VarId id) const { return model_.variable(id).name; }

  void term(double coef, const std::string& body, bool first, int& count) {
    if (count > 0 && count % kTermsPerLine == 0) out_ << "\n   ";
    if (coef < 0) {
      out_ << (first ? "- " : " - ") << format_number(-coef) << " " << body;
    } else {
      out_ << (first ? "" : " + ") << format_number(coef) << " " << body;
    }
    ++count;
  }

  // Emits linear terms then an optional bracketed quadratic block. Returns
  // whether anything was written.
  bool expression(const AffineExpr& linear, const std::vector<BilinearTerm>& quad,
                  double quad_scale, const char* quad_suffix) {
    AffineExpr lin = linear;
    lin.normalize();
    int count = 0;
    bool first = true;
    for (const Term& t : lin.terms) {
      term(t.coef, name(t.var), first, count);
      first = false;
    }
    if (!quad.empty()) {
      out_ << (first ? "[ " : " + [ ");
      bool qfirst = true;
      int qcount = 0;
      for (const BilinearTerm& q : quad) {
        std::string body = q.a == q.b ? name(q.a) + "^2" : name(q.a) + " * " + name(q.b);
        term(q.coef * quad_scale, body, qfirst, qcount);
        qfirst = false;
      }
      out_ << " ]" << quad_suffix;
      first = false;
    }
    return !first;
  }

  void objective() {
    out_ << "Minimize\n obj: ";
    const ObjectiveDef& obj = model_.objective();
    if (!expression(obj.linear, obj.quadratic, 2.0, " / 2")) {
      if (model_.num_variables() > 0) {
        out_ << "0 " << name(VarId{0});
      } else {
        out_ << "0";
      }
    }
    out_ << "\n";
  }

  void constraints() {
    out_ << "Subject To\n";
    for (const ConstraintDef& row : model_.constraints()) {
      out_ << " " << row.label << ": ";
      if (!expression(row.lhs, row.bilinear, 1.0, "")) {
        out_ << "0 " << name(VarId{0});
      }
      switch (row.sense) {
        case Sense::kLessEqual: out_ << " <= "; break;
        case Sense::kEqual: out_ << " = "; break;
        case Sense::kGreaterEqual: out_ << " >= "; break;
      }
      out_ << format_number(row.rhs - row.lhs.constant) << "\n";
    }
  }

  void bounds() {
    out_ << "Bounds\n";
    for (const VariableDef& v : model_.variables()) {
      out_ << " ";
      if (v.lower == v.upper) {
        out_ << v.name << " = " << format_number(v.lower);
      } else if (std::isinf(v.lower) && std::isinf(v.upper)) {
        out_ << v.name << " free";
      } else if (std::isinf(v.upper)) {
        out_ << v.name << " >= " << format_number(v.lower);
      } else {
        out_ << format_number(v.lower) << " <= " << v.name << " <= " << format_number(v.upper);
      }
      out_ << "\n";
    }
  }

  void binaries() {
    if (model_.num_binaries() == 0) return;
    out_ << "Binaries\n";
    int count = 0;
    for (const VariableDef& v : model_.variables()) {
      if (v.kind != VarKind::kBinary) continue;
      out_ << " " << v.name;
      if (++count % kTermsPerLine == 0) out_ << "\n";
    }
    if (count % kTermsPerLine != 0) out_ << "\n";
  }

  const MipModel& model_;
  std::ostringstream out_;
};

bool references_valid(const MipModel& model, VarId id) {
  return id.valid() && id.index() < model.num_variables();
}

}  // namespace

std::string emit_lp_text(const MipModel& model) { return LpWriter(model).run(); }

std::vector<Diagnostic> validate(const MipModel& model) {
  std::vector<Diagnostic> out;
  auto check_expr = [&](const std::string& where, const AffineExpr& expr) {
    std::set<std::int32_t> seen;
    for (const Term& t : expr.terms) {
      if (!references_valid(model, t.var)) {
        out.push_back({where, "dangling variable id " + std::to_string(t.var.value)});
        continue;
      }
      if (!std::isfinite(t.coef)) {
        out.push_back({where, "non-finite coefficient on '" + model.variable(t.var).name + "'"});
      }
      if (!seen.insert(t.var.value).second) {
        out.push_back({where, "duplicate term for '" + model.variable(t.var).name + "'"});
      }
    }
  };

  for (const VariableDef& v : model.variables()) {
    if (v.lower > v.upper) out.push_back({v.name, "lower bound exceeds upper bound"});
    if (v.kind == VarKind::kBinary && (v.lower < 0.0 || v.upper > 1.0)) {
      out.push_back({v.name, "binary bounds outside [0, 1]"});
    }
  }

  std::set<std::string> labels;
  for (const ConstraintDef& row : model.constraints()) {
    if (!labels.insert(row.label).second) {
      out.push_back({row.label, "duplicate constraint label"});
    }
    check_expr(row.label, row.lhs);
    if (!std::isfinite(row.rhs)) out.push_back({row.label, "non-finite right-hand side"});
    if (!row.bilinear.empty() && !model.has_bilinear()) {
      out.push_back({row.label, "bilinear terms on a model without has_bilinear"});
    }
    for (const BilinearTerm& b : row.bilinear) {
      if (!references_valid(model, b.a) || !references_valid(model, b.b)) {
        out.push_back({row.label, "dangling variable in bilinear term"});
      }
    }
  }

  check_expr("objective", model.objective().linear);
  const auto& quad = model.objective().quadratic;
  if (!quad.empty() && !model.has_quadratic_objective()) {
    out.push_back({"objective", "quadratic terms on a model without has_quadratic_objective"});
  }
  for (const BilinearTerm& q : quad) {
    if (!references_valid(model, q.a) || !references_valid(model, q.b)) {
      out.push_back({"objective", "dangling variable in quadratic term"});
    } else if (q.a != q.b || !(q.coef > 0.0)) {
      out.push_back({"objective", "quadratic term on '" + model.variable(q.a).name +
                                      "' is not a positive square"});
    }
  }
  return out;
}

double row_activity(const ConstraintDef& row, std::span<const double> values) {
  double v = row.lhs.constant;
  for (const Term& t : row.lhs.terms) v += t.coef * values[t.var.index()];
  for (const BilinearTerm& b : row.bilinear) {
    v += b.coef * values[b.a.index()] * values[b.b.index()];
  }
  return v;
}

std::vector<std::string> violated_rows(const MipModel& model, std::span<const double> values,
                                       double tol) {
  if (values.size() != model.num_variables()) {
    throw Error(ErrorCode::kInvalidArgument, "point has " + std::to_string(values.size()) +
                                                 " entries, model has " +
                                                 std::to_string(model.num_variables()));
  }
  std::vector<std::string> out;
  for (const ConstraintDef& row : model.constraints()) {
    const double a = row_activity(row, values);
    const double scale = std::max(1.0, std::abs(row.rhs));
    const double lo_gap = row.rhs - a;  // > 0 when below rhs
    const bool bad = (row.sense == Sense::kLessEqual && -lo_gap > tol * scale) ||
                     (row.sense == Sense::kGreaterEqual && lo_gap > tol * scale) ||
                     (row.sense == Sense::kEqual && std::abs(lo_gap) > tol * scale);
    if (bad) out.push_back(row.label);
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    const VariableDef& v = model.variables()[i];
    if (values[i] < v.lower - tol || values[i] > v.upper + tol) out.push_back("bound:" + v.name);
  }
  return out;
}

}  // namespace cpfit
