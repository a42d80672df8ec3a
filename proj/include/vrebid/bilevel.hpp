#pragma once

#include <string>
#include <vector>

#include "vrebid/policies.hpp"

namespace vrebid {

/// Fixed segment prices per (k, t, s); quantities are what the bilevel model decides.
struct BidPricesConfig {
  Grid3<double> prices;  // [k][t][s]

  static BidPricesConfig uniform(const Instance& inst, const std::vector<double>& segment_prices);
  std::size_t segments() const;
  bool has_zero_segment() const;
  BidSet with_quantities(const Instance& inst, const Grid3<double>& quantities) const;
};

/// Boxes for the envelope of each product (dual of the bid-quantity row) x (bid quantity).
struct McCormickBounds {
  Grid3<double> w_upper;     // [k][t][s], default installed capacity
  double dual_upper = 0.0;   // default value of lost load

  static McCormickBounds defaults(const Instance& inst, const BidPricesConfig& prices);
};

/// Handles into the single-level relaxation.
struct RelaxedBidModel {
  lp::LpModel model;
  DamLayout dam;                       // lower-level primal copy
  Grid3<lp::VarId> quantity;           // upper-level W[k][t][s]
  Grid3<lp::VarId> aux;                // envelope variable standing for mu * W
  Grid3<lp::VarId> mu;                 // multiplier of p^W <= W (stored with y = -mu sign)
  std::vector<lp::VarId> row_dual;     // one per lower-level row
  std::vector<lp::VarId> lower_dual;   // per lower-level variable, -1 if absent
  std::vector<lp::VarId> upper_dual;   // per lower-level variable, -1 if absent
  std::vector<lp::VarId> fixed_dual;   // per lower-level variable, -1 if absent
  lp::RowId strong_duality;
  std::vector<RtmLayout> rt;
  lp::LpModel lower_level;             // stand-alone day-ahead model, W rows with rhs 0
  std::vector<int> w_row_of;           // lower-level row -> flat (k,t,s) slot, -1 otherwise
  std::vector<lp::VarId> quantity_flat;  // W by flat slot
};

struct BidOptions {
  EvalOptions eval{};
  /// Also score the expected-forecast quantity in the cheapest segment when
  /// choosing among extracted bid candidates.
  bool forecast_candidate = true;
};

struct BilevelSolution {
  BidSet bids;                     // W*
  double relaxed_objective = 0.0;  // optimum of the relaxed LP
  double s_bid = 0.0;              // sequential re-evaluation of W*
  PolicyResult evaluation;
  std::string extraction;          // which candidate produced W*
  double complementarity_residual = 0.0;   // sum of multiplier * slack, lower level
  double strong_duality_residual = 0.0;    // primal minus dual objective with true products
  double mccormick_residual_bound = 0.0;   // sum of w_upper * dual_upper / 4
  double mccormick_gap = 0.0;              // s_bid - relaxed_objective
};

RelaxedBidModel build_relaxed_bid(const Instance& inst, const BidPricesConfig& prices, const McCormickBounds& bounds,
                                  const EvalOptions& opts = {});

BilevelSolution solve_bid(const Instance& inst, const BidPricesConfig& prices, const McCormickBounds& bounds,
                          const BidOptions& opts = {});
BilevelSolution solve_bid(const Instance& inst, const BidPricesConfig& prices, const BidOptions& opts = {});

/// Single zero-price segment, quantity only.
BilevelSolution solve_bid_q(const Instance& inst, const BidOptions& opts = {});

inline constexpr double kTheoremTol = 0.005;

struct TheoremReport {
  double s_bid = 0.0;
  double s_bid_q = 0.0;
  double relative_gap = 0.0;  // |s_bid - s_bid_q| / s_bid_q
  bool applicable = false;    // prices contain a zero segment
  bool passed = false;        // applicable and relative_gap <= tol
  double tol = kTheoremTol;
};

TheoremReport verify_theorem1(const Instance& inst, const BidPricesConfig& prices, const BidOptions& opts = {});

/// Zero-price single-segment curves carrying the dispatched day-ahead quantity
/// of every multi-segment curve.
BidSet collapse_to_single_segment(const BilevelSolution& multi, const DaSchedule& da);

struct OracleResult {
  BidSet best_bids;
  double best_s = 0.0;
  std::size_t evaluated = 0;
};

inline constexpr std::size_t kOracleMaxDims = 4;

/// Exhaustive search of evaluate_bids over a quantity grid on [0, capacity]
/// for every (k, t, s). Throws std::invalid_argument past kOracleMaxDims.
OracleResult oracle_grid_search(const Instance& inst, const BidPricesConfig& prices, double step,
                                const EvalOptions& opts = {}, std::size_t max_dims = kOracleMaxDims);

struct VreProfit {
  std::vector<double> per_unit;  // $
  double aggregate = 0.0;
};

/// Two-settlement revenue of each VRE unit: day-ahead schedule at day-ahead
/// LMPs plus real-time deviation at real-time LMPs, zero production cost.
VreProfit vre_profit(const Instance& inst, const PolicyResult& result);

struct SweepRow {
  double price = 0.0;
  double s_bid = 0.0;
  double s_myd = 0.0;
  double dam_wind_bid = 0.0;  // MW summed over units and hours
  double dam_wind_myd = 0.0;
  double lmp_da_bid = 0.0;    // load-weighted, $/MWh
  double lmp_rt_bid = 0.0;
  double lmp_da_myd = 0.0;
  double lmp_rt_myd = 0.0;
  double profit_bid = 0.0;    // aggregate, $
  double profit_myd = 0.0;
};

std::vector<SweepRow> price_sweep(const Instance& inst, const std::vector<double>& prices,
                                  const BidOptions& opts = {});

/// Load-weighted day-ahead and expected real-time LMP of a sequential result.
std::pair<double, double> load_weighted_lmps(const Instance& inst, const PolicyResult& result);

}  // namespace vrebid
