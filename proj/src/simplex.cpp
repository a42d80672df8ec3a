// Dense bounded-variable primal simplex (two phases) with a sparse-LU
// refinement of the final basis for accurate primal and dual values.

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <sstream>

#include "lp_internal.hpp"
#include "vrebid/lp.hpp"

namespace vrebid::lp {

namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kOptTol = 1e-9;
constexpr double kDropTol = 1e-13;
constexpr int kDegenerateSwitch = 60;

enum class ColStatus : unsigned char { Basic, AtLower, AtUpper };

// Column of the internal problem: x_orig[orig] = shift + sign * x_col.
struct StructCol {
  int orig = -1;
  double sign = 1.0;
};

class Simplex {
 public:
  Simplex(const LpModel& model) : model_(model) { build(); }  // NOLINT(google-explicit-constructor)

  LpSolution run();

 private:
  void build();
  void init_reduced_costs(const std::vector<double>& cost);
  // Returns false if unbounded.
  bool iterate(const std::vector<double>& cost, bool phase_one, int& iters);
  void pivot(int row, int col);
  void drive_out_artificials();
  bool refine(LpSolution& sol);
  int max_iterations() const { return 50 * (m_ + ncols_) + 1000; }

  double& at(int r, int c) { return tab_[static_cast<size_t>(r) * ncols_ + c]; }
  double at(int r, int c) const { return tab_[static_cast<size_t>(r) * ncols_ + c]; }

  const LpModel& model_;
  int m_ = 0;
  int ncols_ = 0;
  int n_struct_ = 0;
  int first_art_ = 0;

  std::vector<StructCol> struct_cols_;
  std::vector<double> shift_;               // per original variable
  std::vector<int> logical_col_;            // per row, -1 for equalities
  std::vector<double> art_sign_;            // per row, sign of artificial in the unnegated row (0: none)
  std::vector<std::vector<std::pair<int, double>>> cols_;  // unnegated internal matrix by column
  std::vector<double> b_;                   // internal rhs (unnegated)
  std::vector<double> row_sign_;            // row negation applied in the tableau

  std::vector<double> tab_;
  std::vector<double> beta_;
  std::vector<double> upper_;
  std::vector<double> cost2_;
  std::vector<double> d_;
  std::vector<int> basis_;
  std::vector<ColStatus> status_;
  int iterations_ = 0;
};

void Simplex::build() {
  const int n = model_.num_variables();
  m_ = model_.num_constraints();
  shift_.assign(n, 0.0);

  std::vector<std::vector<int>> orig_to_cols(n);
  for (int j = 0; j < n; ++j) {
    const auto& v = model_.variable(VarId{j});
    if (v.lower == v.upper) {
      shift_[j] = v.lower;
    } else if (std::isfinite(v.lower)) {
      shift_[j] = v.lower;
      orig_to_cols[j].push_back(static_cast<int>(struct_cols_.size()));
      struct_cols_.push_back({j, 1.0});
      upper_.push_back(v.upper - v.lower);
      cost2_.push_back(v.cost);
    } else if (std::isfinite(v.upper)) {
      shift_[j] = v.upper;
      orig_to_cols[j].push_back(static_cast<int>(struct_cols_.size()));
      struct_cols_.push_back({j, -1.0});
      upper_.push_back(kInf);
      cost2_.push_back(-v.cost);
    } else {
      for (double s : {1.0, -1.0}) {
        orig_to_cols[j].push_back(static_cast<int>(struct_cols_.size()));
        struct_cols_.push_back({j, s});
        upper_.push_back(kInf);
        cost2_.push_back(s * v.cost);
      }
    }
  }
  n_struct_ = static_cast<int>(struct_cols_.size());
  cols_.assign(n_struct_, {});

  b_.assign(m_, 0.0);
  for (int r = 0; r < m_; ++r) {
    const auto& row = model_.constraint(RowId{r});
    double rhs = row.rhs;
    for (const auto& [j, c] : row.terms) {
      rhs -= c * shift_[j];
      for (int col : orig_to_cols[j]) cols_[col].emplace_back(r, c * struct_cols_[col].sign);
    }
    b_[r] = rhs;
  }

  // Logical columns: +s for <= rows, -s for >= rows, s >= 0.
  logical_col_.assign(m_, -1);
  for (int r = 0; r < m_; ++r) {
    const Sense sense = model_.constraint(RowId{r}).sense;
    if (sense == Sense::Equal) continue;
    logical_col_[r] = static_cast<int>(cols_.size());
    cols_.push_back({{r, sense == Sense::LessEqual ? 1.0 : -1.0}});
    upper_.push_back(kInf);
    cost2_.push_back(0.0);
  }

  // Start from the logical basis where it is feasible; artificials elsewhere.
  first_art_ = static_cast<int>(cols_.size());
  art_sign_.assign(m_, 0.0);
  row_sign_.assign(m_, 1.0);
  basis_.assign(m_, -1);
  for (int r = 0; r < m_; ++r) {
    const int lc = logical_col_[r];
    if (lc >= 0) {
      const double coef = cols_[lc][0].second;
      if (b_[r] * coef >= 0.0) {
        basis_[r] = lc;
        row_sign_[r] = coef;
        continue;
      }
    }
    row_sign_[r] = b_[r] < 0.0 ? -1.0 : 1.0;
    art_sign_[r] = row_sign_[r];
    basis_[r] = static_cast<int>(cols_.size());
    cols_.push_back({{r, art_sign_[r]}});
    upper_.push_back(kInf);
    cost2_.push_back(0.0);
  }
  ncols_ = static_cast<int>(cols_.size());

  tab_.assign(static_cast<size_t>(m_) * ncols_, 0.0);
  for (int c = 0; c < ncols_; ++c) {
    for (const auto& [r, v] : cols_[c]) at(r, c) += v * row_sign_[r];
  }
  beta_.resize(m_);
  for (int r = 0; r < m_; ++r) beta_[r] = b_[r] * row_sign_[r];

  status_.assign(ncols_, ColStatus::AtLower);
  for (int r = 0; r < m_; ++r) status_[basis_[r]] = ColStatus::Basic;
}

void Simplex::init_reduced_costs(const std::vector<double>& cost) {
  d_ = cost;
  for (int r = 0; r < m_; ++r) {
    const double cb = cost[basis_[r]];
    if (cb == 0.0) continue;
    const double* row = &tab_[static_cast<size_t>(r) * ncols_];
    for (int c = 0; c < ncols_; ++c) d_[c] -= cb * row[c];
  }
  for (int r = 0; r < m_; ++r) d_[basis_[r]] = 0.0;
}

void Simplex::pivot(int prow, int pcol) {
  double* rowp = &tab_[static_cast<size_t>(prow) * ncols_];
  const double inv = 1.0 / rowp[pcol];
  std::vector<int> nz;
  nz.reserve(64);
  for (int c = 0; c < ncols_; ++c) {
    if (rowp[c] != 0.0) {
      rowp[c] *= inv;
      if (std::abs(rowp[c]) < kDropTol) {
        rowp[c] = 0.0;
      } else {
        nz.push_back(c);
      }
    }
  }
  rowp[pcol] = 1.0;
  for (int r = 0; r < m_; ++r) {
    if (r == prow) continue;
    double* rowr = &tab_[static_cast<size_t>(r) * ncols_];
    const double f = rowr[pcol];
    if (f == 0.0) continue;
    for (int c : nz) {
      double v = rowr[c] - f * rowp[c];
      rowr[c] = std::abs(v) < kDropTol ? 0.0 : v;
    }
    rowr[pcol] = 0.0;
  }
  const double fd = d_[pcol];
  if (fd != 0.0) {
    for (int c : nz) d_[c] -= fd * rowp[c];
    d_[pcol] = 0.0;
  }
}

bool Simplex::iterate(const std::vector<double>& cost, bool phase_one, int& iters) {
  init_reduced_costs(cost);
  int degenerate_run = 0;
  int since_refresh = 0;
  const int limit = max_iterations();
  while (iters < limit) {
    if (++since_refresh > 200) {
      init_reduced_costs(cost);
      since_refresh = 0;
    }
    const bool bland = degenerate_run > kDegenerateSwitch;
    int q = -1;
    double best = 0.0;
    for (int c = 0; c < ncols_; ++c) {
      if (status_[c] == ColStatus::Basic || upper_[c] <= 0.0) continue;
      if (!phase_one && c >= first_art_) continue;
      double score = 0.0;
      if (status_[c] == ColStatus::AtLower && d_[c] < -kOptTol) score = -d_[c];
      if (status_[c] == ColStatus::AtUpper && d_[c] > kOptTol) score = d_[c];
      if (score <= 0.0) continue;
      if (bland) {
        q = c;
        break;
      }
      if (score > best) {
        best = score;
        q = c;
      }
    }
    if (q < 0) return true;

    const double dir = status_[q] == ColStatus::AtLower ? 1.0 : -1.0;
    double theta = upper_[q];
    int leave = -1;
    double leave_alpha = 0.0;
    for (int r = 0; r < m_; ++r) {
      const double alpha = at(r, q);
      if (std::abs(alpha) <= kPivotTol) continue;
      const double rate = -dir * alpha;  // change of basic r per unit step
      const int bc = basis_[r];
      double lim;
      if (rate < 0.0) {
        lim = std::max(beta_[r], 0.0) / -rate;
      } else {
        if (!std::isfinite(upper_[bc])) continue;
        lim = std::max(upper_[bc] - beta_[r], 0.0) / rate;
      }
      const bool better = lim < theta - 1e-12;
      const bool tie = !better && lim <= theta + 1e-12 && leave >= 0;
      if (better || (tie && (bland ? bc < basis_[leave] : std::abs(alpha) > std::abs(leave_alpha)))) {
        theta = lim;
        leave = r;
        leave_alpha = alpha;
      }
    }
    if (!std::isfinite(theta)) return false;
    ++iters;
    degenerate_run = theta <= 1e-12 ? degenerate_run + 1 : 0;

    for (int r = 0; r < m_; ++r) {
      const double alpha = at(r, q);
      if (alpha != 0.0) beta_[r] -= dir * alpha * theta;
    }
    if (leave < 0) {
      status_[q] = dir > 0 ? ColStatus::AtUpper : ColStatus::AtLower;
      continue;
    }
    const int out = basis_[leave];
    const double entering_value = (status_[q] == ColStatus::AtUpper ? upper_[q] : 0.0) + dir * theta;
    const double rate = -dir * leave_alpha;
    status_[out] = rate < 0.0 ? ColStatus::AtLower : ColStatus::AtUpper;
    pivot(leave, q);
    basis_[leave] = q;
    status_[q] = ColStatus::Basic;
    beta_[leave] = entering_value;
  }
  return true;
}

void Simplex::drive_out_artificials() {
  for (int r = 0; r < m_; ++r) {
    if (basis_[r] < first_art_) continue;
    int best = -1;
    double best_abs = 1e-7;
    for (int c = 0; c < first_art_; ++c) {
      if (status_[c] == ColStatus::Basic || upper_[c] <= 0.0) continue;
      if (std::abs(at(r, c)) > best_abs) {
        best_abs = std::abs(at(r, c));
        best = c;
      }
    }
    if (best < 0) continue;  // redundant row; artificial stays basic at zero
    const int out = basis_[r];
    const double value = status_[best] == ColStatus::AtUpper ? upper_[best] : 0.0;
    d_.assign(ncols_, 0.0);
    pivot(r, best);
    basis_[r] = best;
    status_[best] = ColStatus::Basic;
    status_[out] = ColStatus::AtLower;
    beta_[r] = value;
  }
}

bool Simplex::refine(LpSolution& sol) {
  using SpMat = Eigen::SparseMatrix<double>;
  std::vector<Eigen::Triplet<double>> trips;
  for (int r = 0; r < m_; ++r) {
    for (const auto& [row, v] : cols_[basis_[r]]) trips.emplace_back(row, r, v);
  }
  Eigen::VectorXd rhs(m_);
  for (int r = 0; r < m_; ++r) rhs[r] = b_[r];
  for (int c = 0; c < ncols_; ++c) {
    if (status_[c] != ColStatus::AtUpper) continue;
    for (const auto& [row, v] : cols_[c]) rhs[row] -= v * upper_[c];
  }
  std::vector<double> colval(ncols_, 0.0);
  for (int c = 0; c < ncols_; ++c) {
    if (status_[c] == ColStatus::AtUpper) colval[c] = upper_[c];
  }
  Eigen::VectorXd y = Eigen::VectorXd::Zero(m_);
  if (m_ > 0) {
    SpMat basis(m_, m_);
    basis.setFromTriplets(trips.begin(), trips.end());
    basis.makeCompressed();
    Eigen::SparseLU<SpMat> lu;
    lu.analyzePattern(basis);
    lu.factorize(basis);
    if (lu.info() != Eigen::Success) return false;
    Eigen::VectorXd xb = lu.solve(rhs);
    Eigen::VectorXd cb(m_);
    for (int r = 0; r < m_; ++r) cb[r] = cost2_[basis_[r]];
    SpMat bt = basis.transpose();
    Eigen::SparseLU<SpMat> lut;
    lut.analyzePattern(bt);
    lut.factorize(bt);
    if (lut.info() != Eigen::Success) return false;
    y = lut.solve(cb);
    for (int r = 0; r < m_; ++r) colval[basis_[r]] = xb[r];
  }

  const int n = model_.num_variables();
  sol.primal = shift_;
  for (int c = 0; c < n_struct_; ++c) {
    sol.primal[struct_cols_[c].orig] += struct_cols_[c].sign * colval[c];
  }
  for (int j = 0; j < n; ++j) {
    const auto& v = model_.variable(VarId{j});
    sol.primal[j] = std::clamp(sol.primal[j], v.lower, v.upper);
  }
  sol.dual.assign(m_, 0.0);
  for (int r = 0; r < m_; ++r) sol.dual[r] = y[r];
  sol.reduced_cost.assign(n, 0.0);
  for (int j = 0; j < n; ++j) sol.reduced_cost[j] = model_.variable(VarId{j}).cost;
  for (int r = 0; r < m_; ++r) {
    for (const auto& [j, c] : model_.constraint(RowId{r}).terms) sol.reduced_cost[j] -= c * y[r];
  }
  sol.objective = model_.objective_value(sol.primal);
  return true;
}

LpSolution Simplex::run() {
  LpSolution sol;
  int iters = 0;

  if (first_art_ < ncols_) {
    std::vector<double> cost1(ncols_, 0.0);
    for (int c = first_art_; c < ncols_; ++c) cost1[c] = 1.0;
    iterate(cost1, true, iters);
    double infeas = 0.0;
    double scale = 1.0;
    for (double v : b_) scale = std::max(scale, std::abs(v));
    std::ostringstream diag;
    for (int r = 0; r < m_; ++r) {
      if (basis_[r] >= first_art_ && beta_[r] > 1e-9 * scale) {
        infeas += beta_[r];
        const auto& name = model_.constraint(RowId{r}).name;
        diag << (diag.tellp() > 0 ? ", " : "") << (name.empty() ? "row " + std::to_string(r) : name) << " (short "
             << beta_[r] << ")";
      }
    }
    if (infeas > 1e-9 * scale) {
      sol.status = Status::Infeasible;
      sol.iterations = iters;
      sol.diagnostic = "violated rows: " + diag.str();
      return sol;
    }
    for (int c = first_art_; c < ncols_; ++c) upper_[c] = 0.0;
    for (int r = 0; r < m_; ++r) {
      if (basis_[r] >= first_art_) beta_[r] = 0.0;
    }
    drive_out_artificials();
  }

  const bool bounded = iterate(cost2_, false, iters);
  sol.iterations = iters;
  if (!bounded) {
    sol.status = Status::Unbounded;
    sol.diagnostic = "objective unbounded below";
    return sol;
  }
  if (iters >= max_iterations()) {
    sol.status = Status::NumericalFailure;
    sol.diagnostic = "iteration limit reached";
    return sol;
  }
  if (!refine(sol)) {
    sol.status = Status::NumericalFailure;
    sol.diagnostic = "singular final basis";
    return sol;
  }
  sol.status = Status::Optimal;
  return sol;
}

}  // namespace

LpSolution solve(const LpModel& model, const ToleranceConfig& tol) {
  Simplex simplex(model);
  LpSolution sol = simplex.run();
  if (sol.optimal()) {
    const Certificate cert = certify(model, sol);
    if (!cert.passes(tol)) {
      std::ostringstream os;
      os << "certificate check: primal " << cert.primal_residual << ", dual " << cert.dual_residual << ", gap "
         << cert.duality_gap << ", comp " << cert.comp_residual;
      sol.diagnostic = os.str();
    }
  }
  notify_solved(model, sol);
  return sol;
}

}  // namespace vrebid::lp
