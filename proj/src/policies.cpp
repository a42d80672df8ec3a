#include "vrebid/policies.hpp"

#include <cmath>
#include <sstream>

#include "market_blocks.hpp"

namespace vrebid {

const char* to_string(PolicyKind p) {
  switch (p) {
    case PolicyKind::MyD: return "MyD";
    case PolicyKind::StD: return "StD";
    case PolicyKind::BiD: return "BiD";
    case PolicyKind::BiDq: return "BiD-q";
    case PolicyKind::Custom: return "custom";
  }
  return "?";
}

PolicyResult evaluate_bids(const Instance& inst, const BidSet& bids, const EvalOptions& opts) {
  PolicyResult r;
  r.bids = bids;
  auto clearing = clear_dam(inst, bids, opts.dam);
  r.da = std::move(clearing.schedule);
  r.da_duals = std::move(clearing.duals);
  r.rt = clear_all_rtm(inst, r.da, opts.threads, opts.dam.tol);
  r.f_da_true = r.da.f_da_true;
  r.expected_rt = expected_rt_cost(inst, r.rt);
  r.total = r.f_da_true + r.expected_rt;
  return r;
}

BidSet myopic_bids(const Instance& inst, double price) {
  BidSet b;
  b.curves.resize(inst.vres.size());
  for (std::size_t k = 0; k < inst.vres.size(); ++k) {
    for (std::size_t t = 0; t < inst.hours(); ++t) {
      const double q = std::min(expected_vre(inst.scenarios, k, t), inst.vres[k].capacity);
      b.curves[k].push_back(BidCurve{inst.vres[k].id, t, {BidSegment{price, std::max(q, 0.0)}}});
    }
  }
  return b;
}

PolicyResult myopic(const Instance& inst, const EvalOptions& opts) {
  auto r = evaluate_bids(inst, myopic_bids(inst), opts);
  r.policy = PolicyKind::MyD;
  return r;
}

PolicyResult stochastic(const Instance& inst, const EvalOptions& opts) {
  const std::size_t K = inst.vres.size();
  const std::size_t T = inst.hours();
  detail::DamBlockSpec spec;
  spec.bid_costs_in_objective = false;
  spec.da_slack = opts.dam.da_slack;
  spec.prices.assign(K, Grid2<double>(T, std::vector<double>{0.0}));
  spec.quantity.assign(K, Grid2<lp::LinExpr>(T));
  for (std::size_t k = 0; k < K; ++k) {
    for (std::size_t t = 0; t < T; ++t) spec.quantity[k][t].emplace_back(inst.vres[k].capacity);
  }

  lp::LpModel m;
  const auto dam = detail::add_dam_block(m, inst, spec);
  const auto link = detail::link_variables(dam);
  std::vector<RtmLayout> rts;
  const auto& scen = inst.scenarios.scenarios;
  for (std::size_t w = 0; w < scen.size(); ++w) {
    rts.push_back(detail::add_rtm_block(m, inst, w, link, scen[w].probability));
  }
  const auto sol = lp::solve(m, opts.dam.tol);
  detail::require_optimal(sol, "stochastic dispatch");

  PolicyResult r;
  r.policy = PolicyKind::StD;
  r.da = detail::extract_schedule(inst, dam, sol, spec.prices);
  for (std::size_t w = 0; w < scen.size(); ++w) {
    auto d = detail::extract_dispatch(inst, rts[w], sol, w, rts[w].cost.evaluate(sol.primal));
    // joint balance duals carry the scenario weight
    if (scen[w].probability > 0.0) {
      for (auto& row : d.lmp) {
        for (auto& v : row) v /= scen[w].probability;
      }
    }
    r.rt.push_back(std::move(d));
  }
  r.f_da_true = r.da.f_da_true;
  r.expected_rt = expected_rt_cost(inst, r.rt);
  r.total = r.f_da_true + r.expected_rt;
  return r;
}

bool chain_ok(double higher, double lower, double tol) {
  const double scale = std::max({1.0, std::abs(higher), std::abs(lower)});
  return higher >= lower - tol * scale;
}

}  // namespace vrebid
