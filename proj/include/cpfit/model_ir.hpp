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

// Solver-agnostic representation of mixed-integer models and its CPLEX-LP
// text emission. Models are built once and then treated as immutable values.

#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace cpfit {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct VarId {
  std::int32_t value = -1;

  constexpr bool valid() const { return value >= 0; }
  constexpr std::size_t index() const { return static_cast<std::size_t>(value); }
  friend constexpr auto operator<=>(VarId, VarId) = default;
};

enum class VarKind { kContinuous, kBinary };

struct VariableDef {
  std::string name;
  VarKind kind = VarKind::kContinuous;
  double lower = 0.0;
  double upper = kInf;

  static VariableDef Binary(std::string name) {
    return {std::move(name), VarKind::kBinary, 0.0, 1.0};
  }
  static VariableDef Continuous(std::string name, double lower, double upper) {
    return {std::move(name), VarKind::kContinuous, lower, upper};
  }
  static VariableDef Free(std::string name) {
    return {std::move(name), VarKind::kContinuous, -kInf, kInf};
  }
};

struct Term {
  VarId var;
  double coef = 0.0;
};

struct AffineExpr {
  std::vector<Term> terms;
  double constant = 0.0;

  AffineExpr& add(VarId var, double coef) {
    terms.push_back({var, coef});
    return *this;
  }
  /// Merges duplicate ids, drops zero coefficients and sorts by id.
  void normalize();
};

struct BilinearTerm {
  VarId a;
  VarId b;
  double coef = 0.0;
};

enum class Sense { kLessEqual, kEqual, kGreaterEqual };

struct ConstraintDef {
  std::string label;
  AffineExpr lhs;
  Sense sense = Sense::kEqual;
  double rhs = 0.0;
  std::vector<BilinearTerm> bilinear;
};

/// Always minimized. The quadratic part is restricted to a sum of squares of
/// designated residual variables.
struct ObjectiveDef {
  AffineExpr linear;
  std::vector<BilinearTerm> quadratic;
};

struct Diagnostic {
  std::string element;
  std::string message;
};

class MipModel {
 public:
  MipModel() = default;
  explicit MipModel(std::string name) : name_(std::move(name)) {}

  /// Throws Error{kInvalidBounds} for lower > upper, NaN bounds or a binary
  /// whose bounds leave [0, 1].
  VarId add_variable(VariableDef def);

  /// Unchecked append; validate() reports dangling ids, duplicate labels and
  /// bilinear rows on a model without allow_bilinear().
  const std::string& add_constraint(ConstraintDef row);

  void allow_bilinear() { has_bilinear_ = true; }
  void allow_quadratic_objective() { has_quadratic_objective_ = true; }

  ObjectiveDef& objective() { return objective_; }
  const ObjectiveDef& objective() const { return objective_; }

  const std::vector<VariableDef>& variables() const { return variables_; }
  const std::vector<ConstraintDef>& constraints() const { return constraints_; }
  const VariableDef& variable(VarId id) const { return variables_.at(id.index()); }
  VariableDef& mutable_variable(VarId id) { return variables_.at(id.index()); }

  std::size_t num_variables() const { return variables_.size(); }
  std::size_t num_constraints() const { return constraints_.size(); }
  std::size_t num_binaries() const;

  bool has_bilinear() const { return has_bilinear_; }
  bool has_quadratic_objective() const { return has_quadratic_objective_; }

  const std::string& name() const { return name_; }
  std::map<std::string, std::string>& metadata() { return metadata_; }
  const std::map<std::string, std::string>& metadata() const { return metadata_; }

  /// Lookup by variable name; returns an invalid id when absent.
  VarId find_variable(const std::string& name) const;

 private:
  std::string name_ = "model";
  std::vector<VariableDef> variables_;
  std::vector<ConstraintDef> constraints_;
  ObjectiveDef objective_;
  bool has_bilinear_ = false;
  bool has_quadratic_objective_ = false;
  std::map<std::string, std::string> metadata_;
  std::map<std::string, VarId> by_name_;
};

/// Every binary becomes continuous on [0, 1]; everything else is unchanged.
MipModel relax_integrality(const MipModel& model);

/// Sets lower = upper = value for each listed variable. Throws
/// Error{kOutOfDomain} when a value leaves the variable's bounds or a binary
/// is fixed to a non-integral value.
MipModel fix_variables(const MipModel& model,
                       std::span<const std::pair<VarId, double>> assignments);

/// CPLEX-LP text, ordered by variable id and constraint insertion order.
std::string emit_lp_text(const MipModel& model);

std::vector<Diagnostic> validate(const MipModel& model);

/// lhs (constant and bilinear terms included) evaluated at a point.
double row_activity(const ConstraintDef& row, std::span<const double> values);

/// Labels of rows violated by more than tol, then "bound:<name>" for each
/// violated variable bound.
std::vector<std::string> violated_rows(const MipModel& model, std::span<const double> values,
                                       double tol);

/// Shortest round-trip decimal form used by the LP writer.
std::string format_number(double value);

}  // namespace cpfit
