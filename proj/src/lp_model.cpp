#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <ostream>
#include <stdexcept>

#include "lp_internal.hpp"
#include "vrebid/lp.hpp"

namespace vrebid::lp {

LinExpr& LinExpr::operator+=(const LinExpr& other) {
  constant_ += other.constant_;
  terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
  return *this;
}

LinExpr& LinExpr::operator-=(const LinExpr& other) {
  constant_ -= other.constant_;
  for (const auto& [v, c] : other.terms_) terms_.emplace_back(v, -c);
  return *this;
}

LinExpr& LinExpr::operator*=(double s) {
  constant_ *= s;
  for (auto& t : terms_) t.second *= s;
  return *this;
}

double LinExpr::evaluate(const std::vector<double>& x) const {
  double v = constant_;
  for (const auto& [j, c] : terms_) v += c * x.at(j);
  return v;
}

namespace {

std::vector<std::pair<int, double>> merge_terms(std::vector<std::pair<int, double>> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<std::pair<int, double>> out;
  out.reserve(terms.size());
  for (const auto& t : terms) {
    if (!out.empty() && out.back().first == t.first) {
      out.back().second += t.second;
    } else {
      out.push_back(t);
    }
  }
  std::erase_if(out, [](const auto& t) { return t.second == 0.0; });
  return out;
}

}  // namespace

VarId LpModel::add_variable(std::string name, double lower, double upper, double cost) {
  if (std::isnan(lower) || std::isnan(upper) || !std::isfinite(cost)) {
    throw std::invalid_argument("non-finite data for variable " + name);
  }
  if (lower > upper) throw std::invalid_argument("empty bounds for variable " + name);
  vars_.push_back({std::move(name), lower, upper, cost});
  return VarId{static_cast<int>(vars_.size()) - 1};
}

RowId LpModel::add_constraint(std::string name, const LinExpr& lhs, Sense sense, double rhs) {
  Constraint row;
  row.name = std::move(name);
  row.terms = merge_terms(lhs.terms());
  for (const auto& [j, c] : row.terms) {
    if (j < 0 || j >= num_variables()) throw std::out_of_range("row " + row.name + " references unknown variable");
    if (!std::isfinite(c)) throw std::invalid_argument("non-finite coefficient in row " + row.name);
  }
  row.sense = sense;
  row.rhs = rhs - lhs.constant();
  if (!std::isfinite(row.rhs)) throw std::invalid_argument("non-finite rhs in row " + row.name);
  rows_.push_back(std::move(row));
  return RowId{static_cast<int>(rows_.size()) - 1};
}

void LpModel::add_objective(const LinExpr& expr) {
  offset_ += expr.constant();
  for (const auto& [j, c] : expr.terms()) vars_.at(j).cost += c;
}

void LpModel::set_bounds(VarId v, double lower, double upper) {
  if (lower > upper) throw std::invalid_argument("empty bounds for variable " + vars_.at(v.index).name);
  vars_.at(v.index).lower = lower;
  vars_.at(v.index).upper = upper;
}

void LpModel::add_to_row(RowId r, VarId v, double coef) {
  auto& row = rows_.at(r.index);
  row.terms.emplace_back(v.index, coef);
  row.terms = merge_terms(std::move(row.terms));
}

double LpModel::activity(RowId r, const std::vector<double>& x) const {
  double a = 0.0;
  for (const auto& [j, c] : rows_.at(r.index).terms) a += c * x.at(j);
  return a;
}

double LpModel::objective_value(const std::vector<double>& x) const {
  double v = offset_;
  for (int j = 0; j < num_variables(); ++j) v += vars_[j].cost * x.at(j);
  return v;
}

const char* to_string(Status s) {
  switch (s) {
    case Status::Optimal: return "optimal";
    case Status::Infeasible: return "infeasible";
    case Status::Unbounded: return "unbounded";
    case Status::NumericalFailure: return "numerical-failure";
  }
  return "unknown";
}

Certificate certify(const LpModel& model, const LpSolution& sol) {
  Certificate cert;
  const auto& x = sol.primal;
  const auto& y = sol.dual;
  const int n = model.num_variables();
  const int m = model.num_constraints();
  if (static_cast<int>(x.size()) != n || static_cast<int>(y.size()) != m) {
    throw std::invalid_argument("solution does not match model dimensions");
  }

  double dual_obj = model.objective_offset();
  for (int r = 0; r < m; ++r) {
    const auto& row = model.constraint(RowId{r});
    const double slack = model.activity(RowId{r}, x) - row.rhs;
    double viol = 0.0;
    double sign_viol = 0.0;
    switch (row.sense) {
      case Sense::LessEqual:
        viol = std::max(0.0, slack);
        sign_viol = std::max(0.0, y[r]);
        break;
      case Sense::GreaterEqual:
        viol = std::max(0.0, -slack);
        sign_viol = std::max(0.0, -y[r]);
        break;
      case Sense::Equal:
        viol = std::abs(slack);
        break;
    }
    cert.primal_residual = std::max(cert.primal_residual, viol);
    cert.dual_residual = std::max(cert.dual_residual, sign_viol);
    if (row.sense != Sense::Equal) cert.comp_residual = std::max(cert.comp_residual, std::abs(y[r] * slack));
    dual_obj += row.rhs * y[r];
  }

  // Reduced costs are recomputed here rather than trusted from the solver.
  std::vector<double> d(n);
  for (int j = 0; j < n; ++j) d[j] = model.variable(VarId{j}).cost;
  for (int r = 0; r < m; ++r) {
    for (const auto& [j, c] : model.constraint(RowId{r}).terms) d[j] -= c * y[r];
  }
  for (int j = 0; j < n; ++j) {
    const auto& v = model.variable(VarId{j});
    cert.primal_residual = std::max({cert.primal_residual, v.lower - x[j], x[j] - v.upper});
    if (d[j] > 0.0) {
      if (std::isfinite(v.lower)) {
        dual_obj += d[j] * v.lower;
        cert.comp_residual = std::max(cert.comp_residual, d[j] * std::abs(x[j] - v.lower));
      } else {
        cert.dual_residual = std::max(cert.dual_residual, d[j]);
      }
    } else if (d[j] < 0.0) {
      if (std::isfinite(v.upper)) {
        dual_obj += d[j] * v.upper;
        cert.comp_residual = std::max(cert.comp_residual, -d[j] * std::abs(v.upper - x[j]));
      } else {
        cert.dual_residual = std::max(cert.dual_residual, -d[j]);
      }
    }
  }
  cert.dual_objective = dual_obj;
  const double primal_obj = model.objective_value(x);
  cert.duality_gap = std::abs(primal_obj - dual_obj) / std::max(1.0, std::abs(primal_obj));
  return cert;
}

namespace {

std::mutex& hook_mutex() {
  static std::mutex mu;
  return mu;
}

SolveObserver& observer_slot() {
  static SolveObserver obs;
  return obs;
}

std::string& dump_dir_slot() {
  static std::string dir;
  return dir;
}

std::string lp_name(std::string s) {
  for (auto& ch : s) {
    if (ch == ' ' || ch == ':' || ch == '+' || ch == '-' || ch == '*' || ch == '<' || ch == '>' || ch == '=') ch = '_';
  }
  return s;
}

void write_expr(std::ostream& os, const LpModel& model, const std::vector<std::pair<int, double>>& terms) {
  if (terms.empty()) {
    os << " 0";
    return;
  }
  for (const auto& [j, c] : terms) {
    os << (c < 0 ? " - " : " + ") << std::abs(c) << ' ' << lp_name(model.variable(VarId{j}).name);
  }
}

}  // namespace

void set_solve_observer(SolveObserver observer) {
  std::lock_guard lock(hook_mutex());
  observer_slot() = std::move(observer);
}

void set_dump_directory(std::string dir) {
  std::lock_guard lock(hook_mutex());
  dump_dir_slot() = std::move(dir);
}

void notify_solved(const LpModel& model, const LpSolution& sol) {
  SolveObserver obs;
  std::string dir;
  {
    std::lock_guard lock(hook_mutex());
    obs = observer_slot();
    dir = dump_dir_slot();
  }
  if (!dir.empty()) {
    static std::atomic<int> counter{0};
    std::filesystem::create_directories(dir);
    std::ofstream out(std::filesystem::path(dir) / ("model_" + std::to_string(counter++) + ".lp"));
    write_lp_text(out, model);
  }
  if (obs) obs(model, sol);
}

void write_lp_text(std::ostream& os, const LpModel& model) {
  os << "Minimize\n obj:";
  std::vector<std::pair<int, double>> obj;
  for (int j = 0; j < model.num_variables(); ++j) {
    if (model.variable(VarId{j}).cost != 0.0) obj.emplace_back(j, model.variable(VarId{j}).cost);
  }
  write_expr(os, model, obj);
  if (model.objective_offset() != 0.0) os << " + " << model.objective_offset() << " constant";
  os << "\nSubject To\n";
  for (int r = 0; r < model.num_constraints(); ++r) {
    const auto& row = model.constraint(RowId{r});
    os << ' ' << lp_name(row.name.empty() ? "r" + std::to_string(r) : row.name) << ':';
    write_expr(os, model, row.terms);
    os << (row.sense == Sense::LessEqual ? " <= " : row.sense == Sense::Equal ? " = " : " >= ") << row.rhs << '\n';
  }
  os << "Bounds\n";
  for (int j = 0; j < model.num_variables(); ++j) {
    const auto& v = model.variable(VarId{j});
    const std::string name = lp_name(v.name);
    if (std::isinf(v.lower) && std::isinf(v.upper)) {
      os << ' ' << name << " free\n";
    } else {
      os << ' ' << (std::isinf(v.lower) ? std::string("-inf") : std::to_string(v.lower)) << " <= " << name << " <= "
         << (std::isinf(v.upper) ? std::string("+inf") : std::to_string(v.upper)) << '\n';
    }
  }
  if (model.objective_offset() != 0.0) os << " constant = 1\n";
  os << "End\n";
}

}  // namespace vrebid::lp
