#pragma once

#include <vector>

#include "vrebid/dam.hpp"

namespace vrebid {

struct RtmLayout {
  Grid2<lp::VarId> r_up, r_dn, u, c;  // [i][t]
  Grid2<lp::VarId> curtail;           // [k][t]
  Grid2<lp::VarId> shed, theta;       // [n][t]
  Grid2<lp::RowId> balance;           // [n][t]
  lp::LinExpr cost;                   // scenario re-dispatch cost f_RT
};

struct RtDispatch {
  std::size_t scenario = 0;
  Grid2<double> r_up, r_dn, u, c;  // [i][t]
  Grid2<double> curtail;           // [k][t]
  Grid2<double> shed, theta;       // [n][t]
  Grid2<double> lmp;               // real-time balance duals, [n][t]
  double f_rt = 0.0;               // may be negative: downward re-dispatch is credited
};

struct RtmModel {
  lp::LpModel model;
  RtmLayout layout;
};

RtmModel build_rtm(const Instance& inst, const DaSchedule& da, std::size_t scenario);

RtDispatch clear_rtm(const Instance& inst, const DaSchedule& da, std::size_t scenario,
                     const lp::ToleranceConfig& tol = {});

/// All scenarios, solved on up to `threads` workers; results are in scenario order.
std::vector<RtDispatch> clear_all_rtm(const Instance& inst, const DaSchedule& da, unsigned threads = 1,
                                      const lp::ToleranceConfig& tol = {});

double expected_rt_cost(const Instance& inst, const std::vector<RtDispatch>& dispatches);
double expected_rt_cost(const Instance& inst, const DaSchedule& da, unsigned threads = 1);

}  // namespace vrebid
