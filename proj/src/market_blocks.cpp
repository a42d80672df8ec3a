#include "market_blocks.hpp"

#include <string>

#include "vrebid/errors.hpp"

namespace vrebid::detail {

using lp::LinExpr;
using lp::Sense;
using lp::VarId;

std::string tag(const std::string& base, std::initializer_list<std::string> idx) {
  std::string s = base + "[";
  bool first = true;
  for (const auto& i : idx) {
    s += (first ? "" : ",") + i;
    first = false;
  }
  return s + "]";
}

namespace {

std::string hr(std::size_t t) { return std::to_string(t + 1); }

template <class T>
Grid2<T> grid2(std::size_t a, std::size_t b) {
  return Grid2<T>(a, std::vector<T>(b));
}

// Net flow leaving bus n at hour t, expressed in the angle variables.
LinExpr outflow(const Instance& inst, const Grid2<VarId>& theta, std::size_t n, std::size_t t) {
  LinExpr e;
  const auto& net = inst.network;
  for (const auto& l : net.lines) {
    const auto a = net.bus_index(l.from);
    const auto b = net.bus_index(l.to);
    if (a != n && b != n) continue;
    const double sgn = a == n ? 1.0 : -1.0;
    e.add(theta[a][t], sgn / l.reactance);
    e.add(theta[b][t], -sgn / l.reactance);
  }
  return e;
}

Grid2<VarId> add_angles(lp::LpModel& m, const Instance& inst, const std::string& prefix) {
  const auto& net = inst.network;
  auto theta = grid2<VarId>(net.buses.size(), inst.hours());
  const auto slack = net.bus_index(net.slack_bus);
  for (std::size_t n = 0; n < net.buses.size(); ++n) {
    for (std::size_t t = 0; t < inst.hours(); ++t) {
      const double lim = n == slack ? 0.0 : lp::kInf;
      theta[n][t] = m.add_variable(tag(prefix, {net.buses[n], hr(t)}), -lim, lim);
    }
  }
  return theta;
}

void add_line_rows(lp::LpModel& m, const Instance& inst, const Grid2<VarId>& theta, const std::string& prefix,
                   Grid2<lp::RowId>* lo, Grid2<lp::RowId>* hi) {
  const auto& net = inst.network;
  if (lo) *lo = grid2<lp::RowId>(net.lines.size(), inst.hours());
  if (hi) *hi = grid2<lp::RowId>(net.lines.size(), inst.hours());
  for (std::size_t l = 0; l < net.lines.size(); ++l) {
    const auto& line = net.lines[l];
    const auto a = net.bus_index(line.from);
    const auto b = net.bus_index(line.to);
    for (std::size_t t = 0; t < inst.hours(); ++t) {
      LinExpr flow = LinExpr(theta[a][t], 1.0 / line.reactance) - LinExpr(theta[b][t], 1.0 / line.reactance);
      const std::string name = tag(prefix, {line.from + "-" + line.to, hr(t)});
      auto rlo = m.add_constraint(name + "lo", flow, Sense::GreaterEqual, -line.capacity);
      auto rhi = m.add_constraint(name + "hi", flow, Sense::LessEqual, line.capacity);
      if (lo) (*lo)[l][t] = rlo;
      if (hi) (*hi)[l][t] = rhi;
    }
  }
}

}  // namespace

DamLayout add_dam_block(lp::LpModel& m, const Instance& inst, const DamBlockSpec& spec) {
  const std::size_t I = inst.units.size();
  const std::size_t K = inst.vres.size();
  const std::size_t N = inst.network.buses.size();
  const std::size_t T = inst.hours();
  const double w = spec.weight;
  DamLayout L;
  L.pc = grid2<VarId>(I, T);
  L.u = grid2<VarId>(I, T);
  L.c = grid2<VarId>(I, T);
  for (std::size_t i = 0; i < I; ++i) {
    const auto& g = inst.units[i];
    for (std::size_t t = 0; t < T; ++t) {
      L.pc[i][t] = m.add_variable(tag("pC", {g.id, hr(t)}), 0.0, lp::kInf, w * g.cost);
      L.u[i][t] = m.add_variable(tag("uDA", {g.id, hr(t)}), 0.0, 1.0, w * g.no_load_cost);
      L.c[i][t] = m.add_variable(tag("cDA", {g.id, hr(t)}), 0.0, lp::kInf, w);
    }
  }
  L.pw.assign(K, Grid2<VarId>(T));
  for (std::size_t k = 0; k < K; ++k) {
    for (std::size_t t = 0; t < T; ++t) {
      for (std::size_t s = 0; s < spec.prices.at(k).at(t).size(); ++s) {
        const double price = spec.bid_costs_in_objective ? spec.prices[k][t][s] : 0.0;
        L.pw[k][t].push_back(
            m.add_variable(tag("pW", {inst.vres[k].id, hr(t), std::to_string(s + 1)}), 0.0, lp::kInf, w * price));
      }
    }
  }
  L.theta = add_angles(m, inst, "thDA");
  if (spec.da_slack) {
    L.shed = grid2<VarId>(N, T);
    for (std::size_t n = 0; n < N; ++n) {
      for (std::size_t t = 0; t < T; ++t) {
        L.shed[n][t] = m.add_variable(tag("shDA", {inst.network.buses[n], hr(t)}), 0.0,
                                      inst.scenarios.da_load[n][t], w * inst.params.voll);
      }
    }
  }

  L.balance = grid2<lp::RowId>(N, T);
  for (std::size_t n = 0; n < N; ++n) {
    for (std::size_t t = 0; t < T; ++t) {
      LinExpr e = LinExpr(0.0) - outflow(inst, L.theta, n, t);
      for (std::size_t i = 0; i < I; ++i) {
        if (inst.unit_bus(i) == n) e.add(L.pc[i][t], 1.0);
      }
      for (std::size_t k = 0; k < K; ++k) {
        if (inst.vre_bus(k) != n) continue;
        for (auto v : L.pw[k][t]) e.add(v, 1.0);
      }
      if (spec.da_slack) e.add(L.shed[n][t], 1.0);
      L.balance[n][t] =
          m.add_constraint(tag("balDA", {inst.network.buses[n], hr(t)}), e, Sense::Equal, inst.scenarios.da_load[n][t]);
    }
  }
  add_line_rows(m, inst, L.theta, "lineDA", &L.line_lo, &L.line_hi);

  L.wcap.assign(K, Grid2<lp::RowId>(T));
  for (std::size_t k = 0; k < K; ++k) {
    for (std::size_t t = 0; t < T; ++t) {
      for (std::size_t s = 0; s < L.pw[k][t].size(); ++s) {
        L.wcap[k][t].push_back(m.add_constraint(tag("wcap", {inst.vres[k].id, hr(t), std::to_string(s + 1)}),
                                                LinExpr(L.pw[k][t][s]) - spec.quantity.at(k).at(t).at(s),
                                                Sense::LessEqual, 0.0));
      }
    }
  }

  L.gen_lo = grid2<lp::RowId>(I, T);
  L.gen_hi = grid2<lp::RowId>(I, T);
  L.startup = grid2<lp::RowId>(I, T);
  L.ramp_dn = grid2<lp::RowId>(I, T);
  L.ramp_up = grid2<lp::RowId>(I, T);
  for (std::size_t i = 0; i < I; ++i) {
    const auto& g = inst.units[i];
    for (std::size_t t = 0; t < T; ++t) {
      const LinExpr p = L.pc[i][t];
      const LinExpr u = L.u[i][t];
      const LinExpr p_prev = t == 0 ? LinExpr(g.p_init) : LinExpr(L.pc[i][t - 1]);
      const LinExpr u_prev = t == 0 ? LinExpr(g.u_init) : LinExpr(L.u[i][t - 1]);
      L.gen_lo[i][t] = m.add_constraint(tag("genloDA", {g.id, hr(t)}), p - g.p_min * u, Sense::GreaterEqual);
      L.gen_hi[i][t] = m.add_constraint(tag("genhiDA", {g.id, hr(t)}), p - g.p_max * u, Sense::LessEqual);
      L.startup[i][t] = m.add_constraint(tag("suDA", {g.id, hr(t)}),
                                         LinExpr(L.c[i][t]) - g.startup_cost * (u - u_prev), Sense::GreaterEqual);
      L.ramp_dn[i][t] =
          m.add_constraint(tag("rdDA", {g.id, hr(t)}), p - p_prev + g.ramp_down * u_prev, Sense::GreaterEqual);
      L.ramp_up[i][t] = m.add_constraint(tag("ruDA", {g.id, hr(t)}), p - p_prev - g.ramp_up * u, Sense::LessEqual);
    }
  }
  return L;
}

lp::LinExpr dam_true_cost(const Instance& inst, const DamLayout& L) {
  LinExpr e;
  for (std::size_t i = 0; i < inst.units.size(); ++i) {
    for (std::size_t t = 0; t < inst.hours(); ++t) {
      e.add(L.pc[i][t], inst.units[i].cost);
      e.add(L.u[i][t], inst.units[i].no_load_cost);
      e.add(L.c[i][t], 1.0);
    }
  }
  for (const auto& row : L.shed) {
    for (auto v : row) e.add(v, inst.params.voll);
  }
  return e;
}

DaLink link_constants(const DaSchedule& da) {
  DaLink link;
  auto conv = [](const Grid2<double>& g) {
    Grid2<LinExpr> out(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
      for (double v : g[i]) out[i].emplace_back(v);
    }
    return out;
  };
  link.pc = conv(da.pc);
  link.u = conv(da.u);
  link.c = conv(da.c);
  return link;
}

DaLink link_variables(const DamLayout& layout) {
  DaLink link;
  auto conv = [](const Grid2<VarId>& g) {
    Grid2<LinExpr> out(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
      for (auto v : g[i]) out[i].emplace_back(v);
    }
    return out;
  };
  link.pc = conv(layout.pc);
  link.u = conv(layout.u);
  link.c = conv(layout.c);
  return link;
}

RtmLayout add_rtm_block(lp::LpModel& m, const Instance& inst, std::size_t scenario, const DaLink& da,
                        double weight) {
  const std::size_t I = inst.units.size();
  const std::size_t K = inst.vres.size();
  const std::size_t N = inst.network.buses.size();
  const std::size_t T = inst.hours();
  const auto& sc = inst.scenarios.scenarios.at(scenario);
  const std::string w_id = sc.id;
  RtmLayout L;
  L.r_up = grid2<VarId>(I, T);
  L.r_dn = grid2<VarId>(I, T);
  L.u = grid2<VarId>(I, T);
  L.c = grid2<VarId>(I, T);
  LinExpr obj;
  for (std::size_t i = 0; i < I; ++i) {
    const auto& g = inst.units[i];
    for (std::size_t t = 0; t < T; ++t) {
      L.r_up[i][t] = m.add_variable(tag("rU", {g.id, hr(t), w_id}), 0.0, lp::kInf);
      L.r_dn[i][t] = m.add_variable(tag("rD", {g.id, hr(t), w_id}), 0.0, lp::kInf);
      L.u[i][t] = m.add_variable(tag("uRT", {g.id, hr(t), w_id}), 0.0, 1.0);
      L.c[i][t] = m.add_variable(tag("cRT", {g.id, hr(t), w_id}), 0.0, lp::kInf);
      obj.add(L.r_up[i][t], g.up_cost);
      obj.add(L.r_dn[i][t], -g.down_cost);
      obj += g.no_load_cost * (LinExpr(L.u[i][t]) - da.u[i][t]);
      obj.add(L.c[i][t], 1.0);
    }
  }
  L.curtail = grid2<VarId>(K, T);
  for (std::size_t k = 0; k < K; ++k) {
    for (std::size_t t = 0; t < T; ++t) {
      L.curtail[k][t] = m.add_variable(tag("cr", {inst.vres[k].id, hr(t), w_id}), 0.0, sc.vre[k][t]);
    }
  }
  L.shed = grid2<VarId>(N, T);
  for (std::size_t n = 0; n < N; ++n) {
    for (std::size_t t = 0; t < T; ++t) {
      L.shed[n][t] = m.add_variable(tag("sh", {inst.network.buses[n], hr(t), w_id}), 0.0, sc.load[n][t]);
      obj.add(L.shed[n][t], inst.params.voll);
    }
  }
  L.theta = add_angles(m, inst, "thRT" + w_id);
  m.add_objective(weight * obj);
  L.cost = obj;

  L.balance = grid2<lp::RowId>(N, T);
  for (std::size_t n = 0; n < N; ++n) {
    for (std::size_t t = 0; t < T; ++t) {
      LinExpr e = LinExpr(0.0) - outflow(inst, L.theta, n, t);
      for (std::size_t i = 0; i < I; ++i) {
        if (inst.unit_bus(i) != n) continue;
        e += da.pc[i][t];
        e.add(L.r_up[i][t], 1.0).add(L.r_dn[i][t], -1.0);
      }
      for (std::size_t k = 0; k < K; ++k) {
        if (inst.vre_bus(k) != n) continue;
        e += LinExpr(sc.vre[k][t]);
        e.add(L.curtail[k][t], -1.0);
      }
      e.add(L.shed[n][t], 1.0);
      L.balance[n][t] =
          m.add_constraint(tag("balRT", {inst.network.buses[n], hr(t), w_id}), e, Sense::Equal, sc.load[n][t]);
    }
  }
  add_line_rows(m, inst, L.theta, "lineRT" + w_id, nullptr, nullptr);

  for (std::size_t i = 0; i < I; ++i) {
    const auto& g = inst.units[i];
    for (std::size_t t = 0; t < T; ++t) {
      const LinExpr u = L.u[i][t];
      const LinExpr out = da.pc[i][t] + LinExpr(L.r_up[i][t]) - LinExpr(L.r_dn[i][t]);
      const LinExpr out_prev =
          t == 0 ? LinExpr(g.p_init) : da.pc[i][t - 1] + LinExpr(L.r_up[i][t - 1]) - LinExpr(L.r_dn[i][t - 1]);
      const LinExpr u_prev = t == 0 ? LinExpr(g.u_init) : LinExpr(L.u[i][t - 1]);
      const auto sense = g.start_class == StartClass::Fast ? Sense::GreaterEqual : Sense::Equal;
      m.add_constraint(tag("commitRT", {g.id, hr(t), w_id}), u - da.u[i][t], sense);
      m.add_constraint(tag("genloRT", {g.id, hr(t), w_id}), out - g.p_min * u, Sense::GreaterEqual);
      m.add_constraint(tag("genhiRT", {g.id, hr(t), w_id}), out - g.p_max * u, Sense::LessEqual);
      m.add_constraint(tag("suRT", {g.id, hr(t), w_id}),
                       LinExpr(L.c[i][t]) + da.c[i][t] - g.startup_cost * (u - u_prev), Sense::GreaterEqual);
      m.add_constraint(tag("rdRT", {g.id, hr(t), w_id}), out - out_prev + g.ramp_down * u_prev, Sense::GreaterEqual);
      m.add_constraint(tag("ruRT", {g.id, hr(t), w_id}), out - out_prev - g.ramp_up * u, Sense::LessEqual);
    }
  }
  return L;
}

namespace {

Grid2<double> values(const Grid2<VarId>& g, const lp::LpSolution& sol) {
  Grid2<double> out(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (auto v : g[i]) out[i].push_back(sol.value(v));
  }
  return out;
}

}  // namespace

DaSchedule extract_schedule(const Instance& inst, const DamLayout& L, const lp::LpSolution& sol,
                            const Grid3<double>& prices) {
  DaSchedule s;
  s.pc = values(L.pc, sol);
  s.u = values(L.u, sol);
  s.c = values(L.c, sol);
  s.theta = values(L.theta, sol);
  s.shed = values(L.shed, sol);
  s.pw.resize(L.pw.size());
  for (std::size_t k = 0; k < L.pw.size(); ++k) s.pw[k] = values(L.pw[k], sol);
  s.f_da_true = dam_true_cost(inst, L).evaluate(sol.primal);
  s.f_da_bid = s.f_da_true;
  for (std::size_t k = 0; k < s.pw.size(); ++k) {
    for (std::size_t t = 0; t < s.pw[k].size(); ++t) {
      for (std::size_t q = 0; q < s.pw[k][t].size(); ++q) s.f_da_bid += prices[k][t][q] * s.pw[k][t][q];
    }
  }
  return s;
}

RtDispatch extract_dispatch(const Instance& inst, const RtmLayout& L, const lp::LpSolution& sol,
                            std::size_t scenario, double f_rt) {
  RtDispatch d;
  d.scenario = scenario;
  d.r_up = values(L.r_up, sol);
  d.r_dn = values(L.r_dn, sol);
  d.u = values(L.u, sol);
  d.c = values(L.c, sol);
  d.curtail = values(L.curtail, sol);
  d.shed = values(L.shed, sol);
  d.theta = values(L.theta, sol);
  d.lmp.assign(inst.network.buses.size(), std::vector<double>(inst.hours(), 0.0));
  for (std::size_t n = 0; n < d.lmp.size(); ++n) {
    for (std::size_t t = 0; t < inst.hours(); ++t) d.lmp[n][t] = sol.dual_of(L.balance[n][t]);
  }
  d.f_rt = f_rt;
  return d;
}

void require_optimal(const lp::LpSolution& sol, const std::string& what) {
  switch (sol.status) {
    case lp::Status::Optimal: return;
    case lp::Status::Infeasible: throw InfeasibleError(what + " is infeasible; " + sol.diagnostic);
    case lp::Status::Unbounded: throw SolverError(what + " is unbounded");
    case lp::Status::NumericalFailure: throw SolverError(what + ": solver failure (" + sol.diagnostic + ")");
  }
}

}  // namespace vrebid::detail
