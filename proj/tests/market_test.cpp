#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "vrebid/dam.hpp"
#include "vrebid/errors.hpp"
#include "vrebid/rtm.hpp"

using namespace vrebid;
using fixtures::make_t1;
using fixtures::make_two_bus;

namespace {

DaSchedule t1_schedule(double pc, double pw, double u = 1.0) {
  DaSchedule s;
  s.pc = {{pc}};
  s.u = {{u}};
  s.c = {{0.0}};
  s.pw = {{{pw}}};
  s.theta = {{0.0}};
  s.f_da_true = s.f_da_bid = 20.0 * pc;
  return s;
}

}  // namespace

TEST(Dam, T1MyopicBid) {
  const auto inst = make_t1();
  const auto cl = clear_dam(inst, make_uniform_bids(inst, {0}, {30}));
  EXPECT_NEAR(cl.schedule.pw[0][0][0], 30, 1e-7);
  EXPECT_NEAR(cl.schedule.pc[0][0], 50, 1e-7);
  EXPECT_NEAR(cl.schedule.f_da_true, 1000, 1e-6);
  EXPECT_NEAR(cl.schedule.f_da_bid, 1000, 1e-6);
  EXPECT_NEAR(cl.duals.lmp[0][0], 20, 1e-7);
}

TEST(Dam, T1NoVreOffered) {
  const auto inst = make_t1();
  const auto cl = clear_dam(inst, make_uniform_bids(inst, {0}, {0}));
  EXPECT_NEAR(cl.schedule.pc[0][0], 80, 1e-7);
  EXPECT_NEAR(cl.schedule.f_da_true, 1600, 1e-6);
}

TEST(Dam, BidAboveMarginalCostIsNotDispatched) {
  const auto inst = make_t1();
  const auto cl = clear_dam(inst, make_uniform_bids(inst, {25}, {30}));
  EXPECT_NEAR(cl.schedule.pw[0][0][0], 0, 1e-7);
  EXPECT_NEAR(cl.schedule.f_da_true, 1600, 1e-6);
  EXPECT_NEAR(cl.duals.lmp[0][0], 20, 1e-7);
}

TEST(Dam, BidCostEntersClearingObjectiveOnly) {
  const auto inst = make_t1();
  const auto cl = clear_dam(inst, make_uniform_bids(inst, {5}, {30}));
  EXPECT_NEAR(cl.schedule.f_da_true, 1000, 1e-6);
  EXPECT_NEAR(cl.schedule.f_da_bid, 1150, 1e-6);
}

TEST(Dam, SegmentsClearInMeritOrder) {
  const auto inst = make_t1();
  const auto cl = clear_dam(inst, make_uniform_bids(inst, {0, 5, 30}, {10, 15, 25}));
  EXPECT_NEAR(cl.schedule.pw[0][0][0], 10, 1e-7);
  EXPECT_NEAR(cl.schedule.pw[0][0][1], 15, 1e-7);
  EXPECT_NEAR(cl.schedule.pw[0][0][2], 0, 1e-7);
  EXPECT_NEAR(cl.schedule.vre_total(0, 0), 25, 1e-7);
}

TEST(Dam, ZeroLoad) {
  auto inst = make_t1(0.0, 0.0);
  inst.scenarios.da_load = {{0}};
  for (auto& s : inst.scenarios.scenarios) s.load = {{0}};
  const auto cl = clear_dam(inst, make_uniform_bids(inst, {0}, {0}));
  EXPECT_NEAR(cl.schedule.f_da_true, 0, 1e-9);
  EXPECT_NEAR(cl.schedule.pc[0][0], 0, 1e-9);
}

TEST(Dam, CongestionSeparatesPrices) {
  const auto inst = make_two_bus(40.0);
  const auto cl = clear_dam(inst, make_uniform_bids(inst, {0}, {0}));
  EXPECT_NEAR(cl.schedule.pc[0][0], 30, 1e-7);
  EXPECT_NEAR(cl.schedule.pc[1][0], 10, 1e-7);
  EXPECT_NEAR(cl.duals.lmp[0][0], 10, 1e-7);
  EXPECT_NEAR(cl.duals.lmp[1][0], 35, 1e-7);
  // the binding limit carries the price difference
  EXPECT_NEAR(std::abs(cl.duals.line_hi[0][0]) + std::abs(cl.duals.line_lo[0][0]), 25, 1e-6);
}

TEST(Dam, OverloadIsInfeasibleWithoutSlack) {
  const auto inst = make_two_bus(60.0);
  EXPECT_THROW(clear_dam(inst, make_uniform_bids(inst, {0}, {0})), InfeasibleError);
  DamOptions opts;
  opts.da_slack = true;
  const auto cl = clear_dam(inst, make_uniform_bids(inst, {0}, {0}), opts);
  EXPECT_NEAR(cl.schedule.shed[1][0], 10, 1e-7);
  EXPECT_NEAR(cl.duals.lmp[1][0], 1000, 1e-6);
  EXPECT_NEAR(cl.schedule.f_da_true, 300 + 700 + 10000, 1e-5);
}

TEST(Dam, MissingCurveIsRejected) {
  const auto inst = make_t1();
  BidSet b;
  EXPECT_THROW(clear_dam(inst, b), std::invalid_argument);
}

TEST(Rtm, ShortfallIsCoveredUpward) {
  const auto inst = make_t1();
  const auto d = clear_rtm(inst, t1_schedule(50, 30), 1);
  EXPECT_NEAR(d.r_up[0][0], 20, 1e-7);
  EXPECT_NEAR(d.f_rt, 800, 1e-6);
  EXPECT_NEAR(d.lmp[0][0], 40, 1e-7);
}

TEST(Rtm, SurplusEarnsTheDownCredit) {
  const auto inst = make_t1();
  const auto d = clear_rtm(inst, t1_schedule(50, 30), 0);
  EXPECT_NEAR(d.r_dn[0][0], 20, 1e-7);
  EXPECT_NEAR(d.curtail[0][0], 0, 1e-7);
  EXPECT_NEAR(d.f_rt, -300, 1e-6);
  const auto d2 = clear_rtm(inst, t1_schedule(80, 0), 0);
  EXPECT_NEAR(d2.f_rt, -750, 1e-6);
}

TEST(Rtm, ExpectedCostAndScenarioOrder) {
  auto inst = make_t1();
  const auto da = t1_schedule(50, 30);
  EXPECT_NEAR(expected_rt_cost(inst, da), 250, 1e-6);
  std::swap(inst.scenarios.scenarios[0], inst.scenarios.scenarios[1]);
  EXPECT_NEAR(expected_rt_cost(inst, da), 250, 1e-6);
}

TEST(Rtm, PerfectForecastCostsNothing) {
  const auto inst = make_t1(30.0, 30.0);
  const auto d = clear_all_rtm(inst, t1_schedule(50, 30));
  for (const auto& x : d) EXPECT_NEAR(x.f_rt, 0, 1e-7);
}

TEST(Rtm, ShedsAtValueOfLostLoad) {
  auto inst = make_t1();
  inst.scenarios.scenarios[1].load = {{200}};
  const auto d = clear_rtm(inst, t1_schedule(50, 30), 1);
  EXPECT_NEAR(d.shed[0][0], 90, 1e-7);
  EXPECT_NEAR(d.f_rt, 50 * 40 + 90 * 1000, 1e-5);
  EXPECT_NEAR(d.lmp[0][0], 1000, 1e-6);
}

TEST(Rtm, SlowUnitKeepsItsCommitment) {
  auto inst = make_t1();
  inst.units[0].no_load_cost = 1.0;
  const auto da = t1_schedule(50, 30, 0.5);
  const auto fast = clear_rtm(inst, da, 1);
  EXPECT_NEAR(fast.u[0][0], 0.7, 1e-7);
  EXPECT_NEAR(fast.f_rt, 800 + 0.2, 1e-6);
  inst.units[0].start_class = StartClass::Slow;
  const auto slow = clear_rtm(inst, da, 1);
  EXPECT_NEAR(slow.u[0][0], 0.5, 1e-9);
  EXPECT_NEAR(slow.shed[0][0], 20, 1e-7);
  EXPECT_NEAR(slow.f_rt, 20 * 1000, 1e-5);
}

TEST(Rtm, ThreadCountDoesNotChangeResults) {
  const auto inst = fixtures::bundled("bus5");
  const auto da = clear_dam(inst, make_uniform_bids(inst, {0}, {20})).schedule;
  const auto a = clear_all_rtm(inst, da, 1);
  const auto b = clear_all_rtm(inst, da, 4);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t w = 0; w < a.size(); ++w) {
    EXPECT_EQ(a[w].scenario, w);
    EXPECT_EQ(a[w].f_rt, b[w].f_rt);
  }
}

TEST(Rtm, UnknownScenario) {
  const auto inst = make_t1();
  EXPECT_THROW(clear_rtm(inst, t1_schedule(50, 30), 7), std::out_of_range);
}

TEST(Dam, RampLimitBindsOnBus5) {
  const auto inst = fixtures::bundled("bus5");
  const auto cl = clear_dam(inst, make_uniform_bids(inst, {0}, {0}));
  const auto& g = inst.units[0];
  double prev = g.p_init;
  bool binding = false;
  for (std::size_t t = 0; t < inst.hours(); ++t) {
    const double p = cl.schedule.pc[0][t];
    EXPECT_LE(p - prev, g.ramp_up + 1e-7);
    binding = binding || std::abs(p - prev - g.ramp_up) < 1e-6;
    prev = p;
  }
  EXPECT_TRUE(binding);
}
