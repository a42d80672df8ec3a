#include "market_blocks.hpp"
#include "vrebid/parallel.hpp"
#include "vrebid/rtm.hpp"

namespace vrebid {

RtmModel build_rtm(const Instance& inst, const DaSchedule& da, std::size_t scenario) {
  if (scenario >= inst.scenarios.scenarios.size()) throw std::out_of_range("unknown scenario index");
  RtmModel rm;
  rm.layout = detail::add_rtm_block(rm.model, inst, scenario, detail::link_constants(da), 1.0);
  return rm;
}

RtDispatch clear_rtm(const Instance& inst, const DaSchedule& da, std::size_t scenario,
                     const lp::ToleranceConfig& tol) {
  const auto rm = build_rtm(inst, da, scenario);
  const auto sol = lp::solve(rm.model, tol);
  detail::require_optimal(sol, "real-time market (scenario " + inst.scenarios.scenarios[scenario].id + ")");
  return detail::extract_dispatch(inst, rm.layout, sol, scenario, sol.objective);
}

std::vector<RtDispatch> clear_all_rtm(const Instance& inst, const DaSchedule& da, unsigned threads,
                                      const lp::ToleranceConfig& tol) {
  return parallel_map(inst.scenarios.scenarios.size(), threads,
                      [&](std::size_t w) { return clear_rtm(inst, da, w, tol); });
}

double expected_rt_cost(const Instance& inst, const std::vector<RtDispatch>& dispatches) {
  double total = 0.0;
  for (const auto& d : dispatches) total += inst.scenarios.scenarios.at(d.scenario).probability * d.f_rt;
  return total;
}

double expected_rt_cost(const Instance& inst, const DaSchedule& da, unsigned threads) {
  return expected_rt_cost(inst, clear_all_rtm(inst, da, threads));
}

}  // namespace vrebid
