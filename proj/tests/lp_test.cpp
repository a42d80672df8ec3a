#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>
#include <sstream>

#include "vrebid/lp.hpp"

namespace {

using vrebid::lp::kInf;
using vrebid::lp::LinExpr;
using vrebid::lp::LpModel;
using vrebid::lp::Sense;
using vrebid::lp::Status;

TEST(LpSolve, OneVariableLowerBoundRow) {
  LpModel m;
  auto x = m.add_variable("x", -kInf, kInf, 1.0);
  auto row = m.add_constraint("lb", LinExpr(x), Sense::GreaterEqual, 3.0);
  auto sol = vrebid::lp::solve(m);
  ASSERT_EQ(sol.status, Status::Optimal);
  EXPECT_NEAR(sol.value(x), 3.0, 1e-9);
  EXPECT_NEAR(sol.dual_of(row), 1.0, 1e-9);
  EXPECT_NEAR(sol.objective, 3.0, 1e-9);
}

TEST(LpSolve, UnboundedRay) {
  LpModel m;
  auto x = m.add_variable("x", -kInf, kInf, -1.0);
  m.add_constraint("nonneg", LinExpr(x), Sense::GreaterEqual, 0.0);
  EXPECT_EQ(vrebid::lp::solve(m).status, Status::Unbounded);
}

TEST(LpSolve, InfeasibleNamesViolatedRow) {
  LpModel m;
  auto x = m.add_variable("x", 0.0, kInf, 1.0);
  m.add_constraint("cap", LinExpr(x), Sense::LessEqual, 1.0);
  m.add_constraint("need", LinExpr(x), Sense::GreaterEqual, 2.0);
  auto sol = vrebid::lp::solve(m);
  EXPECT_EQ(sol.status, Status::Infeasible);
  EXPECT_NE(sol.diagnostic.find("violated rows"), std::string::npos);
}

TEST(LpSolve, SignConventionOnLessEqualRows) {
  // min -x s.t. x <= 4: the <= row carries a nonpositive dual.
  LpModel m;
  auto x = m.add_variable("x", 0.0, kInf, -1.0);
  auto row = m.add_constraint("cap", LinExpr(x), Sense::LessEqual, 4.0);
  auto sol = vrebid::lp::solve(m);
  ASSERT_TRUE(sol.optimal());
  EXPECT_NEAR(sol.dual_of(row), -1.0, 1e-9);
  EXPECT_NEAR(sol.objective, -4.0, 1e-9);
}

TEST(LpSolve, BealeCyclingExampleTerminates) {
  LpModel m;
  auto x4 = m.add_variable("x4", 0.0, kInf, -0.75);
  auto x5 = m.add_variable("x5", 0.0, kInf, 20.0);
  auto x6 = m.add_variable("x6", 0.0, kInf, -0.5);
  auto x7 = m.add_variable("x7", 0.0, kInf, 6.0);
  m.add_constraint("r1", 0.25 * LinExpr(x4) - 8.0 * LinExpr(x5) - LinExpr(x6) + 9.0 * LinExpr(x7), Sense::LessEqual, 0.0);
  m.add_constraint("r2", 0.5 * LinExpr(x4) - 12.0 * LinExpr(x5) - 0.5 * LinExpr(x6) + 3.0 * LinExpr(x7),
                   Sense::LessEqual, 0.0);
  m.add_constraint("r3", LinExpr(x6), Sense::LessEqual, 1.0);
  auto sol = vrebid::lp::solve(m);
  ASSERT_TRUE(sol.optimal());
  EXPECT_NEAR(sol.objective, -1.25, 1e-9);
}

TEST(LpSolve, ObjectiveOffsetAndFixedVariables) {
  LpModel m;
  auto x = m.add_variable("x", 2.0, 2.0, 3.0);
  auto y = m.add_variable("y", -kInf, kInf, 1.0);
  m.add_constraint("link", LinExpr(y) - LinExpr(x), Sense::Equal, 1.0);
  m.add_objective(LinExpr(10.0));
  auto sol = vrebid::lp::solve(m);
  ASSERT_TRUE(sol.optimal());
  EXPECT_NEAR(sol.value(y), 3.0, 1e-9);
  EXPECT_NEAR(sol.objective, 6.0 + 3.0 + 10.0, 1e-9);
  EXPECT_TRUE(vrebid::lp::certify(m, sol).passes({}));
}

TEST(LpText, DumpListsRowsAndBounds) {
  LpModel m;
  auto x = m.add_variable("x", 0.0, 5.0, 1.0);
  m.add_constraint("c1", LinExpr(x) * 2.0, Sense::GreaterEqual, 1.0);
  std::ostringstream os;
  vrebid::lp::write_lp_text(os, m);
  EXPECT_NE(os.str().find("c1: + 2 x >= 1"), std::string::npos);
  EXPECT_NE(os.str().find("Bounds"), std::string::npos);
}

// Brute-force oracle: enumerate every vertex of a box-bounded LP with few
// variables by picking n active constraints among rows and bounds.
double vertex_enumeration_min(const LpModel& m) {
  const int n = m.num_variables();
  struct Plane {
    std::vector<double> a;
    double b;
  };
  std::vector<Plane> planes;
  for (const auto& row : m.constraints()) {
    Plane p{std::vector<double>(n, 0.0), row.rhs};
    for (const auto& [j, c] : row.terms) p.a[j] = c;
    planes.push_back(p);
  }
  for (int j = 0; j < n; ++j) {
    Plane lo{std::vector<double>(n, 0.0), m.variables()[j].lower};
    lo.a[j] = 1.0;
    Plane hi = lo;
    hi.b = m.variables()[j].upper;
    planes.push_back(lo);
    planes.push_back(hi);
  }
  const int k = static_cast<int>(planes.size());
  double best = kInf;
  std::vector<int> pick(n);
  std::function<void(int, int)> rec = [&](int start, int depth) {
    if (depth == n) {
      Eigen::MatrixXd a(n, n);
      Eigen::VectorXd b(n);
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) a(i, j) = planes[pick[i]].a[j];
        b[i] = planes[pick[i]].b;
      }
      Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
      if (lu.rank() < n) return;
      Eigen::VectorXd xv = lu.solve(b);
      std::vector<double> x(xv.data(), xv.data() + n);
      for (int j = 0; j < n; ++j) {
        if (x[j] < m.variables()[j].lower - 1e-7 || x[j] > m.variables()[j].upper + 1e-7) return;
      }
      for (int r = 0; r < m.num_constraints(); ++r) {
        const auto& row = m.constraints()[r];
        const double act = m.activity(vrebid::lp::RowId{r}, x);
        if (row.sense == Sense::LessEqual && act > row.rhs + 1e-7) return;
        if (row.sense == Sense::GreaterEqual && act < row.rhs - 1e-7) return;
        if (row.sense == Sense::Equal && std::abs(act - row.rhs) > 1e-7) return;
      }
      best = std::min(best, m.objective_value(x));
      return;
    }
    for (int i = start; i < k; ++i) {
      pick[depth] = i;
      rec(i + 1, depth + 1);
    }
  };
  rec(0, 0);
  return best;
}

TEST(LpSolveProperty, MatchesVertexEnumerationOnRandomBoxedLps) {
  std::mt19937 rng(20240611);
  std::uniform_real_distribution<double> coef(-3.0, 3.0);
  std::uniform_int_distribution<int> sense_pick(0, 2);
  int optimal = 0;
  for (int trial = 0; trial < 300; ++trial) {
    LpModel m;
    const int n = 2 + trial % 2;
    std::vector<vrebid::lp::VarId> xs;
    for (int j = 0; j < n; ++j) {
      const double lo = std::round(coef(rng));
      xs.push_back(m.add_variable("x" + std::to_string(j), lo, lo + 1.0 + std::abs(std::round(coef(rng))), coef(rng)));
    }
    const int rows = 1 + trial % 3;
    for (int r = 0; r < rows; ++r) {
      LinExpr e;
      for (auto x : xs) e.add(x, std::round(coef(rng) * 2.0) / 2.0);
      const int s = sense_pick(rng);
      m.add_constraint("r" + std::to_string(r), e,
                       s == 0 ? Sense::LessEqual : s == 1 ? Sense::GreaterEqual : Sense::Equal, coef(rng));
    }
    const double oracle = vertex_enumeration_min(m);
    auto sol = vrebid::lp::solve(m);
    if (!std::isfinite(oracle)) {
      EXPECT_EQ(sol.status, Status::Infeasible) << "trial " << trial;
      continue;
    }
    ASSERT_EQ(sol.status, Status::Optimal) << "trial " << trial;
    ++optimal;
    EXPECT_NEAR(sol.objective, oracle, 1e-7) << "trial " << trial;
    auto cert = vrebid::lp::certify(m, sol);
    EXPECT_TRUE(cert.passes({})) << "trial " << trial << " gap " << cert.duality_gap << " comp " << cert.comp_residual;
    EXPECT_NEAR(vrebid::lp::solve(m).objective, sol.objective, 1e-9);
  }
  EXPECT_GT(optimal, 100);
}

}  // namespace
