#pragma once

// Builders that append day-ahead and real-time blocks to a shared LpModel.
// The standalone markets, stochastic dispatch and the relaxed bilevel LP are
// all assembled from these.

#include "vrebid/dam.hpp"
#include "vrebid/rtm.hpp"

namespace vrebid::detail {

struct DamBlockSpec {
  Grid3<double> prices;          // [k][t][s]
  Grid3<lp::LinExpr> quantity;   // [k][t][s], constant or upper-level variable
  bool bid_costs_in_objective = true;
  bool da_slack = false;
  double weight = 1.0;
};

DamLayout add_dam_block(lp::LpModel& m, const Instance& inst, const DamBlockSpec& spec);

/// Day-ahead quantities the real-time block is built against.
struct DaLink {
  Grid2<lp::LinExpr> pc, u, c;  // [i][t]
};

DaLink link_constants(const DaSchedule& da);
DaLink link_variables(const DamLayout& layout);

RtmLayout add_rtm_block(lp::LpModel& m, const Instance& inst, std::size_t scenario, const DaLink& da,
                        double weight);

/// f0 of the day-ahead block: conventional energy, no-load and start-up cost
/// (plus slack shedding when present); VRE bid costs excluded.
lp::LinExpr dam_true_cost(const Instance& inst, const DamLayout& layout);

DaSchedule extract_schedule(const Instance& inst, const DamLayout& layout, const lp::LpSolution& sol,
                            const Grid3<double>& prices);
RtDispatch extract_dispatch(const Instance& inst, const RtmLayout& layout, const lp::LpSolution& sol,
                            std::size_t scenario, double f_rt);

/// Throws InfeasibleError / SolverError for non-optimal statuses.
void require_optimal(const lp::LpSolution& sol, const std::string& what);

std::string tag(const std::string& base, std::initializer_list<std::string> idx);

}  // namespace vrebid::detail
