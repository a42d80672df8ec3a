#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "vrebid/bilevel.hpp"
#include "vrebid/errors.hpp"

using namespace vrebid;
using fixtures::make_t1;

namespace {

std::size_t count_prefix(const lp::LpModel& m, const std::string& prefix) {
  std::size_t n = 0;
  for (const auto& v : m.variables()) n += v.name.rfind(prefix, 0) == 0;
  return n;
}

double row_violation(const lp::LpModel& m, const lp::Constraint& row, const std::vector<double>& x) {
  double a = 0.0;
  for (const auto& [j, c] : row.terms) a += c * x[j];
  switch (row.sense) {
    case lp::Sense::LessEqual: return std::max(0.0, a - row.rhs);
    case lp::Sense::GreaterEqual: return std::max(0.0, row.rhs - a);
    case lp::Sense::Equal: return std::abs(a - row.rhs);
  }
  (void)m;
  return 0.0;
}

}  // namespace

TEST(Relaxation, OneAuxiliaryPerBidQuantity) {
  const auto inst = make_t1();
  const auto p = BidPricesConfig::uniform(inst, {0});
  const auto R = build_relaxed_bid(inst, p, McCormickBounds::defaults(inst, p));
  EXPECT_EQ(count_prefix(R.model, "z["), 1u);
  const auto p6 = BidPricesConfig::uniform(fixtures::bundled("bus5"), {0, 2, 22, 30, 32, 350});
  const auto R6 = build_relaxed_bid(fixtures::bundled("bus5"), p6, McCormickBounds::defaults(fixtures::bundled("bus5"), p6));
  EXPECT_EQ(count_prefix(R6.model, "z["), 2u * 3u * 6u);
}

TEST(Relaxation, LowerBoundsTheRestrictedOptimum) {
  const auto inst = make_t1();
  const auto sol = solve_bid(inst, BidPricesConfig::uniform(inst, {0}));
  EXPECT_LE(sol.relaxed_objective, 1100 + 1e-6);
  EXPECT_GE(sol.mccormick_gap, -1e-6);
}

// The W-row dual is the LMP minus the bid price, so a zero bound is only
// consistent when the bid sits at the 20 $/MWh clearing price.
TEST(Relaxation, ZeroDualBoundCollapsesEnvelope) {
  const auto inst = make_t1();
  const auto p = BidPricesConfig::uniform(inst, {20});
  auto b = McCormickBounds::defaults(inst, p);
  b.dual_upper = 0.0;
  const auto R = build_relaxed_bid(inst, p, b);
  const auto sol = lp::solve(R.model);
  ASSERT_TRUE(sol.optimal());
  EXPECT_NEAR(sol.value(R.aux[0][0][0]), 0.0, 1e-9);
  EXPECT_NEAR(sol.value(R.mu[0][0][0]), 0.0, 1e-9);

  const auto p0 = BidPricesConfig::uniform(inst, {0});
  auto b0 = McCormickBounds::defaults(inst, p0);
  b0.dual_upper = 0.0;
  EXPECT_FALSE(lp::solve(build_relaxed_bid(inst, p0, b0).model).optimal());

  b.dual_upper = -1.0;
  EXPECT_THROW(build_relaxed_bid(inst, p, b), std::invalid_argument);
}

TEST(Relaxation, RejectsBadPrices) {
  const auto inst = make_t1();
  EXPECT_THROW(solve_bid(inst, BidPricesConfig::uniform(inst, {5, 0})), std::invalid_argument);
  EXPECT_THROW(solve_bid(inst, BidPricesConfig::uniform(inst, {-1})), std::invalid_argument);
}

// Plug the sequential clearing (primal, duals, reduced costs) of arbitrary bids
// into the relaxation: dual feasibility, the envelope and strong duality with
// exact products must all hold.
TEST(Relaxation, DualizationAcceptsTrueLowerLevelOptimum) {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (const auto& name : fixtures::fleet()) {
    const auto inst = fixtures::bundled(name);
    const auto p = BidPricesConfig::uniform(inst, {0, 5, 30});
    const auto R = build_relaxed_bid(inst, p, McCormickBounds::defaults(inst, p));
    for (int trial = 0; trial < 5; ++trial) {
      Grid3<double> q(inst.vres.size(), Grid2<double>(inst.hours()));
      for (std::size_t k = 0; k < q.size(); ++k) {
        for (auto& t : q[k]) {
          for (int s = 0; s < 3; ++s) t.push_back(inst.vres[k].capacity / 3.0 * unit(rng));
        }
      }
      const auto bids = p.with_quantities(inst, q);
      const auto dm = build_dam(inst, bids);
      const auto sol = lp::solve(dm.model);
      ASSERT_TRUE(sol.optimal()) << name;
      ASSERT_EQ(dm.model.num_variables(), R.lower_level.num_variables());
      std::vector<double> x(R.model.num_variables(), 0.0);
      for (int j = 0; j < dm.model.num_variables(); ++j) {
        x[j] = sol.primal[j];
        const double d = sol.reduced_cost[j];
        if (R.fixed_dual[j].index >= 0) x[R.fixed_dual[j].index] = d;
        if (R.lower_dual[j].index >= 0) x[R.lower_dual[j].index] = std::max(d, 0.0);
        if (R.upper_dual[j].index >= 0) x[R.upper_dual[j].index] = std::max(-d, 0.0);
      }
      for (int r = 0; r < dm.model.num_constraints(); ++r) x[R.row_dual[r].index] = sol.dual[r];
      for (std::size_t k = 0; k < q.size(); ++k) {
        for (std::size_t t = 0; t < q[k].size(); ++t) {
          for (std::size_t s = 0; s < 3; ++s) {
            x[R.quantity[k][t][s].index] = q[k][t][s];
            x[R.aux[k][t][s].index] = -sol.dual[R.dam.wcap[k][t][s].index] * q[k][t][s];
          }
        }
      }
      double worst = 0.0;
      for (const auto& row : R.model.constraints()) {
        const bool ours = row.name.rfind("dual_", 0) == 0 || row.name.rfind("mc", 0) == 0 ||
                          row.name == "strong_duality" || row.name.rfind("wcap", 0) == 0;
        if (ours) worst = std::max(worst, row_violation(R.model, row, x) / std::max(1.0, std::abs(row.rhs)));
      }
      EXPECT_LT(worst, 1e-6) << name << " trial " << trial;
    }
  }
}

TEST(Relaxation, StrongDualityResidualEqualsComplementarity) {
  for (const auto& name : fixtures::fleet()) {
    const auto inst = fixtures::bundled(name);
    for (const auto& prices : std::vector<std::vector<double>>{{0}, {0, 5}, {0, 2, 22, 30, 32, 350}}) {
      const auto sol = solve_bid(inst, BidPricesConfig::uniform(inst, prices));
      const double scale = std::max(1.0, std::abs(sol.strong_duality_residual));
      EXPECT_NEAR(sol.strong_duality_residual, sol.complementarity_residual, 1e-5 * scale) << name;
      EXPECT_GE(sol.complementarity_residual, -1e-6);
      EXPECT_LE(sol.strong_duality_residual, sol.mccormick_residual_bound) << name;
    }
  }
}

TEST(SolveBid, T1MatchesOracle) {
  const auto inst = make_t1();
  const auto sol = solve_bid(inst, BidPricesConfig::uniform(inst, {0}));
  EXPECT_NEAR(sol.s_bid, 1100, 1e-6);
  EXPECT_NEAR(evaluate_bids(inst, sol.bids).total, sol.s_bid, 1e-9);
  EXPECT_EQ(sol.evaluation.policy, PolicyKind::BiD);
}

TEST(SolveBid, OutOfMeritPrice) {
  const auto inst = make_t1();
  const auto sol = solve_bid(inst, BidPricesConfig::uniform(inst, {350}));
  EXPECT_NEAR(sol.evaluation.da.vre_total(0, 0), 0, 1e-9);
  // no wind in the DAM: 1600 day-ahead, then 50 and 10 MW of down-balancing
  EXPECT_NEAR(sol.s_bid, 1600 + 0.5 * (-750) + 0.5 * (-150), 1e-6);
  for (double w : {0.0, 20.0, 50.0}) {
    EXPECT_NEAR(evaluate_bids(inst, make_uniform_bids(inst, {350}, {w})).total, sol.s_bid, 1e-6);
  }
}

TEST(SolveBid, DeterministicEqualsStochastic) {
  for (const auto& name : fixtures::fleet()) {
    const auto inst = fixtures::deterministic(fixtures::bundled(name));
    const auto sol = solve_bid_q(inst);
    EXPECT_LE(fixtures::rel_diff(sol.s_bid, stochastic(inst).total), 1e-6) << name;
  }
}

TEST(SolveBidQ, T1) {
  const auto sol = solve_bid_q(make_t1());
  EXPECT_NEAR(sol.s_bid, 1100, 1e-6);
  EXPECT_EQ(sol.evaluation.policy, PolicyKind::BiDq);
  EXPECT_EQ(sol.bids.at(0, 0).segments.size(), 1u);
}

TEST(SolveBidQ, NoVreCapacity) {
  auto inst = make_t1(0.0, 0.0);
  inst.vres[0].capacity = 0.0;
  const auto sol = solve_bid_q(inst);
  EXPECT_EQ(sol.bids.at(0, 0).segments[0].quantity, 0.0);
  EXPECT_NEAR(sol.s_bid, 1600, 1e-6);
}

TEST(Theorem, T1TwoSegments) {
  const auto inst = make_t1();
  const auto rep = verify_theorem1(inst, BidPricesConfig::uniform(inst, {0, 5}));
  EXPECT_TRUE(rep.applicable);
  EXPECT_TRUE(rep.passed);
  EXPECT_NEAR(rep.s_bid, 1100, 1e-6);
  EXPECT_NEAR(rep.s_bid_q, 1100, 1e-6);
}

TEST(Theorem, NoZeroSegmentIsInformational) {
  const auto inst = make_t1();
  const auto rep = verify_theorem1(inst, BidPricesConfig::uniform(inst, {10, 20}));
  EXPECT_FALSE(rep.applicable);
  EXPECT_FALSE(rep.passed);
}

TEST(Collapse, SumsDispatchedSegments) {
  const auto inst = make_t1();
  BilevelSolution multi;
  multi.bids = make_uniform_bids(inst, {0, 5, 30}, {10, 5, 20});
  DaSchedule da;
  da.pw = {{{10, 5, 0}}};
  auto c = collapse_to_single_segment(multi, da);
  ASSERT_EQ(c.at(0, 0).segments.size(), 1u);
  EXPECT_DOUBLE_EQ(c.at(0, 0).segments[0].quantity, 15);
  EXPECT_DOUBLE_EQ(c.at(0, 0).segments[0].price, 0);
  da.pw = {{{0, 0, 0}}};
  EXPECT_DOUBLE_EQ(collapse_to_single_segment(multi, da).at(0, 0).segments[0].quantity, 0);
}

TEST(Collapse, T1TwoSegmentSolution) {
  const auto inst = make_t1();
  const auto multi = solve_bid(inst, BidPricesConfig::uniform(inst, {0, 5}));
  const auto single = collapse_to_single_segment(multi, multi.evaluation.da);
  EXPECT_NEAR(evaluate_bids(inst, single).total, 1100, 1e-6);
}

TEST(Collapse, FleetWithinTheoremTolerance) {
  for (const auto& name : fixtures::fleet()) {
    const auto inst = fixtures::bundled(name);
    const auto multi = solve_bid(inst, BidPricesConfig::uniform(inst, {0, 2, 22, 30, 32, 350}));
    const auto single = collapse_to_single_segment(multi, multi.evaluation.da);
    EXPECT_LE(fixtures::rel_diff(evaluate_bids(inst, single).total, multi.s_bid), kTheoremTol) << name;
  }
}

TEST(OracleGrid, T1) {
  const auto inst = make_t1();
  const auto r = oracle_grid_search(inst, BidPricesConfig::uniform(inst, {0}), 1.0);
  EXPECT_NEAR(r.best_s, 1100, 1e-6);
  EXPECT_NEAR(r.best_bids.at(0, 0).segments[0].quantity, 10, 1e-12);
  EXPECT_EQ(r.evaluated, 51u);
}

TEST(OracleGrid, CoarseStepUsesEndpoints) {
  const auto inst = make_t1();
  const auto r = oracle_grid_search(inst, BidPricesConfig::uniform(inst, {0}), 70.0);
  EXPECT_EQ(r.evaluated, 2u);
  EXPECT_NEAR(r.best_s, 1150, 1e-6);
}

TEST(OracleGrid, DimensionGuard) {
  const auto inst = fixtures::bundled("bus5");
  EXPECT_THROW(oracle_grid_search(inst, BidPricesConfig::uniform(inst, {0}), 10.0), std::invalid_argument);
}

TEST(OracleGrid, DeterministicMinimiserIsTheRealisation) {
  const auto inst = make_t1(30.0, 30.0);
  const auto r = oracle_grid_search(inst, BidPricesConfig::uniform(inst, {0}), 1.0);
  EXPECT_NEAR(r.best_bids.at(0, 0).segments[0].quantity, 30, 1e-12);
  EXPECT_NEAR(r.best_s, 1000, 1e-6);
}

TEST(OracleGrid, SolveBidNoWorseOnTinyInstances) {
  const auto bus3 = fixtures::bundled("bus3");
  for (const auto& prices : std::vector<std::vector<double>>{{0}, {15}}) {
    const auto p = BidPricesConfig::uniform(bus3, prices);
    const auto oracle = oracle_grid_search(bus3, p, 5.0);
    EXPECT_LE(solve_bid(bus3, p).s_bid, oracle.best_s + 1e-6 * oracle.best_s);
  }
}

TEST(Profit, T1Myopic) {
  const auto inst = make_t1();
  const auto r = myopic(inst);
  EXPECT_NEAR(r.rt[0].lmp[0][0], 15, 1e-7);
  EXPECT_NEAR(r.rt[1].lmp[0][0], 40, 1e-7);
  // 20*30 day-ahead, +20 MW at 15 in w1, -20 MW at 40 in w2
  const auto p = vre_profit(inst, r);
  EXPECT_NEAR(p.per_unit[0], 600 + 0.5 * 15 * 20 - 0.5 * 40 * 20, 1e-6);
  EXPECT_NEAR(p.aggregate, p.per_unit[0], 1e-12);
}

TEST(Profit, ZeroDeviationAndNothingDispatched) {
  const auto perfect = make_t1(30.0, 30.0);
  EXPECT_NEAR(vre_profit(perfect, myopic(perfect)).aggregate, 20 * 30, 1e-6);
  auto none = make_t1(0.0, 0.0);
  EXPECT_NEAR(vre_profit(none, myopic(none)).aggregate, 0, 1e-9);
}

TEST(Profit, NeedsSequentialDuals) {
  const auto inst = make_t1();
  EXPECT_THROW(vre_profit(inst, stochastic(inst)), std::invalid_argument);
}

TEST(Sweep, T1HighPriceCoincides) {
  const auto inst = make_t1();
  const auto rows = price_sweep(inst, {0, 1000});
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_NEAR(rows[0].s_bid, solve_bid_q(inst).s_bid, 1e-9);
  EXPECT_NEAR(rows[0].s_myd, 1250, 1e-6);
  EXPECT_NEAR(rows[1].dam_wind_bid, 0.0, 1e-9);
  EXPECT_NEAR(rows[1].dam_wind_myd, 0.0, 1e-9);
  EXPECT_NEAR(rows[1].s_bid, rows[1].s_myd, 1e-6);
  EXPECT_NEAR(rows[0].lmp_da_bid, 20, 1e-7);
}
