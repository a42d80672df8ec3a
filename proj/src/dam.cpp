#include <stdexcept>

#include "market_blocks.hpp"
#include "vrebid/dam.hpp"

namespace vrebid {

double DaSchedule::vre_total(std::size_t k, std::size_t t) const {
  double s = 0.0;
  for (double v : pw.at(k).at(t)) s += v;
  return s;
}

namespace {

detail::DamBlockSpec spec_from_bids(const Instance& inst, const BidSet& bids, const DamOptions& opts) {
  if (bids.curves.size() != inst.vres.size()) throw std::invalid_argument("missing bid curve: one row per VRE unit required");
  const std::size_t segs = bids.segment_count();
  detail::DamBlockSpec spec;
  spec.da_slack = opts.da_slack;
  spec.prices.assign(inst.vres.size(), Grid2<double>(inst.hours()));
  spec.quantity.assign(inst.vres.size(), Grid2<lp::LinExpr>(inst.hours()));
  for (std::size_t k = 0; k < inst.vres.size(); ++k) {
    if (bids.curves[k].size() != inst.hours()) {
      throw std::invalid_argument("missing bid curve for VRE " + inst.vres[k].id);
    }
    for (std::size_t t = 0; t < inst.hours(); ++t) {
      const auto& curve = bids.curves[k][t];
      if (curve.segments.size() != segs) throw std::invalid_argument("bid segment count mismatch");
      for (const auto& seg : curve.segments) {
        spec.prices[k][t].push_back(seg.price);
        spec.quantity[k][t].emplace_back(seg.quantity);
      }
    }
  }
  return spec;
}

Grid2<double> row_duals(const Grid2<lp::RowId>& rows, const lp::LpSolution& sol) {
  Grid2<double> out(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (auto r : rows[i]) out[i].push_back(sol.dual_of(r));
  }
  return out;
}

}  // namespace

DamModel build_dam(const Instance& inst, const BidSet& bids, const DamOptions& opts) {
  DamModel dm;
  dm.layout = detail::add_dam_block(dm.model, inst, spec_from_bids(inst, bids, opts));
  return dm;
}

DamClearing clear_dam(const Instance& inst, const BidSet& bids, const DamOptions& opts) {
  const auto spec = spec_from_bids(inst, bids, opts);
  DamModel dm;
  dm.layout = detail::add_dam_block(dm.model, inst, spec);
  const auto sol = lp::solve(dm.model, opts.tol);
  detail::require_optimal(sol, "day-ahead market");

  DamClearing out;
  out.schedule = detail::extract_schedule(inst, dm.layout, sol, spec.prices);
  const auto& L = dm.layout;
  auto& D = out.duals;
  D.lmp = row_duals(L.balance, sol);
  D.line_lo = row_duals(L.line_lo, sol);
  D.line_hi = row_duals(L.line_hi, sol);
  D.gen_lo = row_duals(L.gen_lo, sol);
  D.gen_hi = row_duals(L.gen_hi, sol);
  D.startup = row_duals(L.startup, sol);
  D.ramp_dn = row_duals(L.ramp_dn, sol);
  D.ramp_up = row_duals(L.ramp_up, sol);
  D.w_hi.resize(L.wcap.size());
  D.w_lo.resize(L.pw.size());
  for (std::size_t k = 0; k < L.wcap.size(); ++k) {
    D.w_hi[k] = row_duals(L.wcap[k], sol);
    D.w_lo[k].resize(L.pw[k].size());
    for (std::size_t t = 0; t < L.pw[k].size(); ++t) {
      for (auto v : L.pw[k][t]) D.w_lo[k][t].push_back(sol.reduced_cost[v.index]);
    }
  }
  D.u_lo.resize(L.u.size());
  D.u_hi.resize(L.u.size());
  D.c_lo.resize(L.c.size());
  for (std::size_t i = 0; i < L.u.size(); ++i) {
    for (std::size_t t = 0; t < L.u[i].size(); ++t) {
      const double du = sol.reduced_cost[L.u[i][t].index];
      D.u_lo[i].push_back(std::max(du, 0.0));
      D.u_hi[i].push_back(std::min(du, 0.0));
      D.c_lo[i].push_back(sol.reduced_cost[L.c[i][t].index]);
    }
  }
  return out;
}

}  // namespace vrebid
