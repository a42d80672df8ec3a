#pragma once

#include <vector>

#include "vrebid/lp.hpp"
#include "vrebid/model.hpp"

namespace vrebid {

template <class T>
using Grid2 = std::vector<std::vector<T>>;
template <class T>
using Grid3 = std::vector<std::vector<std::vector<T>>>;

struct DamOptions {
  /// Adds a VoLL-priced shedding variable per bus and hour. The day-ahead
  /// market has none by default, so overload is reported as infeasible.
  bool da_slack = false;
  lp::ToleranceConfig tol{};
};

/// Variable and row handles of one day-ahead block inside an LpModel.
struct DamLayout {
  Grid2<lp::VarId> pc, u, c;  // [i][t]
  Grid3<lp::VarId> pw;        // [k][t][s]
  Grid2<lp::VarId> theta;     // [n][t]
  Grid2<lp::VarId> shed;      // [n][t], empty without da_slack

  Grid2<lp::RowId> balance;            // [n][t]
  Grid2<lp::RowId> line_lo, line_hi;   // [l][t]
  Grid3<lp::RowId> wcap;               // [k][t][s]: p^W <= W
  Grid2<lp::RowId> gen_lo, gen_hi;     // [i][t]
  Grid2<lp::RowId> startup;            // [i][t]
  Grid2<lp::RowId> ramp_dn, ramp_up;   // [i][t]
};

struct DamModel {
  lp::LpModel model;
  DamLayout layout;
};

struct DaSchedule {
  Grid2<double> pc, u, c;  // [i][t]
  Grid3<double> pw;        // [k][t][s]
  Grid2<double> theta;     // [n][t]
  Grid2<double> shed;      // [n][t], empty without da_slack
  double f_da_bid = 0.0;   // objective including VRE bid costs
  double f_da_true = 0.0;  // same schedule priced without bid costs

  double vre_total(std::size_t k, std::size_t t) const;
};

/// One multiplier per day-ahead constraint; bound multipliers come from reduced costs.
struct DaDuals {
  Grid2<double> lmp;                 // balance, [n][t]
  Grid2<double> line_lo, line_hi;    // [l][t]
  Grid3<double> w_lo, w_hi;          // [k][t][s]
  Grid2<double> gen_lo, gen_hi;      // [i][t]
  Grid2<double> u_lo, u_hi;          // [i][t]
  Grid2<double> startup, c_lo;       // [i][t]
  Grid2<double> ramp_dn, ramp_up;    // [i][t]
};

struct DamClearing {
  DaSchedule schedule;
  DaDuals duals;
};

DamModel build_dam(const Instance& inst, const BidSet& bids, const DamOptions& opts = {});

/// Throws InfeasibleError when no schedule meets the day-ahead load.
DamClearing clear_dam(const Instance& inst, const BidSet& bids, const DamOptions& opts = {});

}  // namespace vrebid
