#pragma once

#include <functional>
#include <iosfwd>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace vrebid::lp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct VarId {
  int index = -1;
  friend bool operator==(VarId, VarId) = default;
};

struct RowId {
  int index = -1;
  friend bool operator==(RowId, RowId) = default;
};

enum class Sense { LessEqual, Equal, GreaterEqual };

/// Affine expression `constant + sum(coef * var)`. Duplicate variables are
/// allowed and merged when the expression is added to a model.
class LinExpr {
 public:
  LinExpr() = default;
  LinExpr(double constant) : constant_(constant) {}  // NOLINT(google-explicit-constructor)
  LinExpr(VarId v, double coef = 1.0) { terms_.emplace_back(v.index, coef); }  // NOLINT(google-explicit-constructor)

  LinExpr& add(VarId v, double coef) {
    if (coef != 0.0) terms_.emplace_back(v.index, coef);
    return *this;
  }
  LinExpr& operator+=(const LinExpr& other);
  LinExpr& operator-=(const LinExpr& other);
  LinExpr& operator*=(double s);

  friend LinExpr operator+(LinExpr a, const LinExpr& b) { return a += b; }
  friend LinExpr operator-(LinExpr a, const LinExpr& b) { return a -= b; }
  friend LinExpr operator*(LinExpr a, double s) { return a *= s; }
  friend LinExpr operator*(double s, LinExpr a) { return a *= s; }

  double constant() const { return constant_; }
  const std::vector<std::pair<int, double>>& terms() const { return terms_; }
  bool is_constant() const { return terms_.empty(); }

  /// Evaluate against a primal vector indexed by variable.
  double evaluate(const std::vector<double>& x) const;

 private:
  double constant_ = 0.0;
  std::vector<std::pair<int, double>> terms_;
};

struct Variable {
  std::string name;
  double lower = 0.0;
  double upper = kInf;
  double cost = 0.0;
};

struct Constraint {
  std::string name;
  std::vector<std::pair<int, double>> terms;  // merged, sorted by variable
  Sense sense = Sense::Equal;
  double rhs = 0.0;
};

/// Minimization LP: min c'x + offset  s.t.  rows, lower <= x <= upper.
class LpModel {
 public:
  VarId add_variable(std::string name, double lower, double upper, double cost = 0.0);

  /// Adds `lhs sense rhs`; the constant part of `lhs` moves to the right-hand side.
  RowId add_constraint(std::string name, const LinExpr& lhs, Sense sense, double rhs = 0.0);

  /// Adds `expr` to the objective (coefficients accumulate, constant goes to the offset).
  void add_objective(const LinExpr& expr);

  void set_cost(VarId v, double cost) { vars_.at(v.index).cost = cost; }
  void set_bounds(VarId v, double lower, double upper);
  void set_rhs(RowId r, double rhs) { rows_.at(r.index).rhs = rhs; }
  /// Appends a coefficient to an existing row (merged with any existing entry).
  void add_to_row(RowId r, VarId v, double coef);

  int num_variables() const { return static_cast<int>(vars_.size()); }
  int num_constraints() const { return static_cast<int>(rows_.size()); }
  const Variable& variable(VarId v) const { return vars_.at(v.index); }
  const Constraint& constraint(RowId r) const { return rows_.at(r.index); }
  const std::vector<Variable>& variables() const { return vars_; }
  const std::vector<Constraint>& constraints() const { return rows_; }
  double objective_offset() const { return offset_; }

  /// Row activity a_r'x.
  double activity(RowId r, const std::vector<double>& x) const;
  double objective_value(const std::vector<double>& x) const;

 private:
  std::vector<Variable> vars_;
  std::vector<Constraint> rows_;
  double offset_ = 0.0;
};

enum class Status { Optimal, Infeasible, Unbounded, NumericalFailure };

const char* to_string(Status s);

struct ToleranceConfig {
  double feas_tol = 1e-6;  // absolute primal feasibility
  double gap_tol = 1e-6;   // relative primal-dual objective gap
  double comp_tol = 1e-5;  // absolute complementary slackness
};

/// Dual sign convention (minimization): y >= 0 on >= rows, y <= 0 on <= rows,
/// free on equalities; reduced cost d = c - A'y.
struct LpSolution {
  Status status = Status::NumericalFailure;
  double objective = 0.0;
  std::vector<double> primal;
  std::vector<double> dual;
  std::vector<double> reduced_cost;
  int iterations = 0;
  std::string diagnostic;

  bool optimal() const { return status == Status::Optimal; }
  double value(VarId v) const { return primal.at(v.index); }
  double dual_of(RowId r) const { return dual.at(r.index); }
};

struct Certificate {
  double primal_residual = 0.0;  // worst row or bound violation
  double dual_residual = 0.0;    // worst sign violation of y or d
  double duality_gap = 0.0;      // |primal - dual| / max(1, |primal|)
  double comp_residual = 0.0;    // worst |multiplier * slack|
  double dual_objective = 0.0;

  bool passes(const ToleranceConfig& tol) const {
    return primal_residual <= tol.feas_tol && dual_residual <= tol.feas_tol &&
           duality_gap <= tol.gap_tol && comp_residual <= tol.comp_tol;
  }
};

Certificate certify(const LpModel& model, const LpSolution& sol);

LpSolution solve(const LpModel& model, const ToleranceConfig& tol = {});

/// Observer invoked after every solve(); used by test builds to audit certificates.
using SolveObserver = std::function<void(const LpModel&, const LpSolution&)>;
void set_solve_observer(SolveObserver observer);

/// CPLEX-style LP text, for debugging.
void write_lp_text(std::ostream& os, const LpModel& model);

/// Directory where every solved model is dumped in LP-text form; empty disables.
void set_dump_directory(std::string dir);

}  // namespace vrebid::lp
