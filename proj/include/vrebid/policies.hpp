#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vrebid/dam.hpp"
#include "vrebid/rtm.hpp"

namespace vrebid {

struct EvalOptions {
  DamOptions dam{};
  unsigned threads = 1;
};

enum class PolicyKind { MyD, StD, BiD, BiDq, Custom };

const char* to_string(PolicyKind p);

struct PolicyResult {
  PolicyKind policy = PolicyKind::Custom;
  std::optional<BidSet> bids;      // absent for StD
  DaSchedule da;                   // day-ahead part (joint for StD)
  std::optional<DaDuals> da_duals; // only for sequential clearing
  std::vector<RtDispatch> rt;      // scenario order
  double f_da_true = 0.0;
  double expected_rt = 0.0;
  double total = 0.0;  // S = f_da_true + expected_rt

  bool sequential() const { return da_duals.has_value(); }
};

/// Sequential scoring: clear the day-ahead market with `bids`, then every
/// real-time scenario against that schedule.
PolicyResult evaluate_bids(const Instance& inst, const BidSet& bids, const EvalOptions& opts = {});

/// Zero-price single segment offering each unit's expected output.
BidSet myopic_bids(const Instance& inst, double price = 0.0);
PolicyResult myopic(const Instance& inst, const EvalOptions& opts = {});

/// Joint day-ahead plus real-time co-optimisation over all scenarios.
PolicyResult stochastic(const Instance& inst, const EvalOptions& opts = {});

struct ComparisonRow {
  std::string policy;
  double f_da_true = 0.0;
  double expected_rt = 0.0;
  double total = 0.0;
};

struct ComparisonTable {
  std::vector<ComparisonRow> rows;  // MyD, BiD, StD
  double chain_tol = 1e-6;
  bool chain_holds = true;
  std::vector<std::string> violations;
};

inline constexpr double kChainTol = 1e-6;

/// Runs MyD, BiD (at the given uniform segment prices) and StD and checks
/// S_MyD >= S_BiD >= S_StD up to kChainTol relative.
ComparisonTable compare(const Instance& inst, const std::vector<double>& bid_prices, const EvalOptions& opts = {});

bool chain_ok(double higher, double lower, double tol = kChainTol);

}  // namespace vrebid
