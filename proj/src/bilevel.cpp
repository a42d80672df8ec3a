#include "vrebid/bilevel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "market_blocks.hpp"
#include "vrebid/errors.hpp"
#include "vrebid/parallel.hpp"

namespace vrebid {

using lp::LinExpr;
using lp::Sense;
using lp::VarId;

// ---------------------------------------------------------------- prices/bounds

BidPricesConfig BidPricesConfig::uniform(const Instance& inst, const std::vector<double>& segment_prices) {
  if (segment_prices.empty()) throw std::invalid_argument("at least one bid segment price is required");
  BidPricesConfig c;
  c.prices.assign(inst.vres.size(), Grid2<double>(inst.hours(), segment_prices));
  return c;
}

std::size_t BidPricesConfig::segments() const {
  if (prices.empty() || prices.front().empty()) return 0;
  return prices.front().front().size();
}

bool BidPricesConfig::has_zero_segment() const {
  for (const auto& k : prices) {
    for (const auto& t : k) {
      if (std::none_of(t.begin(), t.end(), [](double p) { return p == 0.0; })) return false;
    }
  }
  return !prices.empty();
}

BidSet BidPricesConfig::with_quantities(const Instance& inst, const Grid3<double>& q) const {
  BidSet b;
  b.curves.resize(inst.vres.size());
  for (std::size_t k = 0; k < inst.vres.size(); ++k) {
    for (std::size_t t = 0; t < inst.hours(); ++t) {
      BidCurve c{inst.vres[k].id, t, {}};
      for (std::size_t s = 0; s < prices[k][t].size(); ++s) c.segments.push_back({prices[k][t][s], q[k][t][s]});
      b.curves[k].push_back(std::move(c));
    }
  }
  return b;
}

McCormickBounds McCormickBounds::defaults(const Instance& inst, const BidPricesConfig& prices) {
  McCormickBounds b;
  b.dual_upper = inst.params.voll;
  b.w_upper.resize(prices.prices.size());
  for (std::size_t k = 0; k < prices.prices.size(); ++k) {
    for (const auto& t : prices.prices[k]) b.w_upper[k].emplace_back(t.size(), inst.vres.at(k).capacity);
  }
  return b;
}

namespace {

void check_prices(const Instance& inst, const BidPricesConfig& p) {
  if (p.prices.size() != inst.vres.size()) throw std::invalid_argument("bid prices: one entry per VRE unit required");
  const std::size_t S = p.segments();
  for (std::size_t k = 0; k < p.prices.size(); ++k) {
    if (p.prices[k].size() != inst.hours()) throw std::invalid_argument("bid prices: one entry per hour required");
    for (const auto& seg : p.prices[k]) {
      if (seg.size() != S || S == 0) throw std::invalid_argument("bid prices: segment count mismatch");
      for (std::size_t s = 0; s < S; ++s) {
        if (seg[s] < 0.0 || seg[s] > inst.params.price_cap) {
          throw std::invalid_argument("bid price outside [0, price cap]");
        }
        if (s > 0 && seg[s] < seg[s - 1]) throw std::invalid_argument("bid prices not nondecreasing");
      }
    }
  }
}

void check_bounds(const BidPricesConfig& p, const McCormickBounds& b) {
  if (!(b.dual_upper >= 0.0) || !std::isfinite(b.dual_upper)) {
    throw std::invalid_argument("McCormick bounds: dual upper bound must be finite and nonnegative");
  }
  if (b.w_upper.size() != p.prices.size()) throw std::invalid_argument("McCormick bounds: shape mismatch");
  for (std::size_t k = 0; k < p.prices.size(); ++k) {
    if (b.w_upper[k].size() != p.prices[k].size()) throw std::invalid_argument("McCormick bounds: shape mismatch");
    for (std::size_t t = 0; t < p.prices[k].size(); ++t) {
      if (b.w_upper[k][t].size() != p.prices[k][t].size()) {
        throw std::invalid_argument("McCormick bounds: shape mismatch");
      }
      for (double w : b.w_upper[k][t]) {
        if (!(w >= 0.0) || !std::isfinite(w)) throw std::invalid_argument("McCormick bounds: lower > upper");
      }
    }
  }
}

detail::DamBlockSpec lower_spec(const BidPricesConfig& prices, const EvalOptions& opts,
                                bool bid_costs) {
  detail::DamBlockSpec spec;
  spec.prices = prices.prices;
  spec.bid_costs_in_objective = bid_costs;
  spec.da_slack = opts.dam.da_slack;
  spec.quantity.resize(prices.prices.size());
  for (std::size_t k = 0; k < prices.prices.size(); ++k) {
    for (const auto& t : prices.prices[k]) spec.quantity[k].emplace_back(t.size(), LinExpr(0.0));
  }
  return spec;
}

std::string slot(const Instance& inst, std::size_t k, std::size_t t, std::size_t s) {
  return detail::tag("", {inst.vres[k].id, std::to_string(t + 1), std::to_string(s + 1)});
}

}  // namespace

// ---------------------------------------------------------------- relaxation

RelaxedBidModel build_relaxed_bid(const Instance& inst, const BidPricesConfig& prices, const McCormickBounds& bounds,
                                  const EvalOptions& opts) {
  check_prices(inst, prices);
  check_bounds(prices, bounds);
  const double lam = bounds.dual_upper;
  const std::size_t K = inst.vres.size();
  const std::size_t T = inst.hours();

  RelaxedBidModel R;
  // Stand-alone lower level (bid costs in the objective, W rows with rhs 0) is
  // the template that gets dualized; the primal copy added first to R shares
  // its variable and row indices.
  R.dam = detail::add_dam_block(R.lower_level, inst, lower_spec(prices, opts, true));
  auto& m = R.model;
  detail::add_dam_block(m, inst, lower_spec(prices, opts, false));
  const auto& LL = R.lower_level;
  const int nv = LL.num_variables();
  const int nr = LL.num_constraints();

  R.w_row_of.assign(nr, -1);
  R.quantity.resize(K);
  R.aux.resize(K);
  R.mu.resize(K);
  std::vector<VarId> w_flat;
  for (std::size_t k = 0; k < K; ++k) {
    R.quantity[k].resize(T);
    for (std::size_t t = 0; t < T; ++t) {
      LinExpr total;
      for (std::size_t s = 0; s < R.dam.wcap[k][t].size(); ++s) {
        const double wu = bounds.w_upper[k][t][s];
        const auto w = m.add_variable("W" + slot(inst, k, t, s), 0.0, wu);
        m.add_to_row(R.dam.wcap[k][t][s], w, -1.0);
        R.quantity[k][t].push_back(w);
        R.w_row_of[R.dam.wcap[k][t][s].index] = static_cast<int>(w_flat.size());
        w_flat.push_back(w);
        R.quantity_flat.push_back(w);
        total.add(w, 1.0);
      }
      m.add_constraint(detail::tag("Wsum", {inst.vres[k].id, std::to_string(t + 1)}), total, Sense::LessEqual,
                       inst.vres[k].capacity);
    }
  }

  // Lower-level duals.
  R.row_dual.resize(nr);
  for (int r = 0; r < nr; ++r) {
    const auto& row = LL.constraints()[r];
    double lo = -lp::kInf, hi = lp::kInf;
    if (R.w_row_of[r] >= 0) {
      lo = -lam;
      hi = 0.0;
    } else if (row.sense == Sense::GreaterEqual) {
      lo = 0.0;
    } else if (row.sense == Sense::LessEqual) {
      hi = 0.0;
    }
    R.row_dual[r] = m.add_variable("y_" + row.name, lo, hi);
  }
  R.lower_dual.assign(nv, VarId{});
  R.upper_dual.assign(nv, VarId{});
  R.fixed_dual.assign(nv, VarId{});
  for (int j = 0; j < nv; ++j) {
    const auto& v = LL.variables()[j];
    if (v.lower == v.upper) {
      R.fixed_dual[j] = m.add_variable("tau_" + v.name, -lp::kInf, lp::kInf);
      continue;
    }
    if (std::isfinite(v.lower)) R.lower_dual[j] = m.add_variable("sl_" + v.name, 0.0, lp::kInf);
    if (std::isfinite(v.upper)) R.upper_dual[j] = m.add_variable("su_" + v.name, 0.0, lp::kInf);
  }

  // Dual feasibility: A'y + sl - su + tau = c.
  std::vector<LinExpr> col(nv);
  for (int r = 0; r < nr; ++r) {
    for (const auto& [j, a] : LL.constraints()[r].terms) col[j].add(R.row_dual[r], a);
  }
  for (int j = 0; j < nv; ++j) {
    auto& e = col[j];
    if (R.fixed_dual[j].index >= 0) e.add(R.fixed_dual[j], 1.0);
    if (R.lower_dual[j].index >= 0) e.add(R.lower_dual[j], 1.0);
    if (R.upper_dual[j].index >= 0) e.add(R.upper_dual[j], -1.0);
    m.add_constraint("dual_" + LL.variables()[j].name, e, Sense::Equal, LL.variables()[j].cost);
  }

  // Envelope of z = mu * W with mu = -y in [0, lam], W in [0, wu].
  std::vector<VarId> z_flat(w_flat.size());
  for (std::size_t k = 0; k < K; ++k) {
    R.aux[k].resize(T);
    R.mu[k].resize(T);
    for (std::size_t t = 0; t < T; ++t) {
      for (std::size_t s = 0; s < R.dam.wcap[k][t].size(); ++s) {
        const auto row = R.dam.wcap[k][t][s].index;
        const auto y = R.row_dual[row];
        const auto w = R.quantity[k][t][s];
        const double wu = bounds.w_upper[k][t][s];
        const auto z = m.add_variable("z" + slot(inst, k, t, s), 0.0, lp::kInf);
        const std::string n = slot(inst, k, t, s);
        m.add_constraint("mcA" + n, LinExpr(z) + wu * LinExpr(y) - lam * LinExpr(w), Sense::GreaterEqual, -wu * lam);
        m.add_constraint("mcB" + n, LinExpr(z) + wu * LinExpr(y), Sense::LessEqual, 0.0);
        m.add_constraint("mcC" + n, LinExpr(z) - lam * LinExpr(w), Sense::LessEqual, 0.0);
        R.aux[k][t].push_back(z);
        R.mu[k][t].push_back(y);
        z_flat[R.w_row_of[row]] = z;
      }
    }
  }

  // Strong duality: c'x - (b'y + l'sl - u'su + l'tau) - sum(y_W * W) = 0,
  // with -y_W * W replaced by z.
  LinExpr sd;
  for (int j = 0; j < nv; ++j) {
    const auto& v = LL.variables()[j];
    sd.add(VarId{j}, v.cost);
    if (R.fixed_dual[j].index >= 0) sd.add(R.fixed_dual[j], -v.lower);
    if (R.lower_dual[j].index >= 0) sd.add(R.lower_dual[j], -v.lower);
    if (R.upper_dual[j].index >= 0) sd.add(R.upper_dual[j], v.upper);
  }
  for (int r = 0; r < nr; ++r) {
    if (R.w_row_of[r] >= 0) continue;
    sd.add(R.row_dual[r], -LL.constraints()[r].rhs);
  }
  for (auto z : z_flat) sd.add(z, 1.0);
  R.strong_duality = m.add_constraint("strong_duality", sd, Sense::Equal, -LL.objective_offset());

  const auto link = detail::link_variables(R.dam);
  const auto& scen = inst.scenarios.scenarios;
  for (std::size_t w = 0; w < scen.size(); ++w) {
    R.rt.push_back(detail::add_rtm_block(m, inst, w, link, scen[w].probability));
  }
  return R;
}

// ---------------------------------------------------------------- solve

namespace {

struct Residuals {
  double strong_duality = 0.0;
  double complementarity = 0.0;
};

Residuals lower_level_residuals(const RelaxedBidModel& R, const std::vector<double>& x) {
  const auto& LL = R.lower_level;
  Residuals out;
  double primal = LL.objective_offset();
  double dual = LL.objective_offset();
  for (int j = 0; j < LL.num_variables(); ++j) {
    const auto& v = LL.variables()[j];
    primal += v.cost * x[j];
    if (R.fixed_dual[j].index >= 0) {
      const double tau = x[R.fixed_dual[j].index];
      dual += v.lower * tau;
      out.complementarity += tau * (x[j] - v.lower);
    }
    if (R.lower_dual[j].index >= 0) {
      const double sl = x[R.lower_dual[j].index];
      dual += v.lower * sl;
      out.complementarity += sl * (x[j] - v.lower);
    }
    if (R.upper_dual[j].index >= 0) {
      const double su = x[R.upper_dual[j].index];
      dual -= v.upper * su;
      out.complementarity += su * (v.upper - x[j]);
    }
  }
  for (int r = 0; r < LL.num_constraints(); ++r) {
    const lp::RowId row{r};
    double b = LL.constraint(row).rhs;
    if (R.w_row_of[r] >= 0) b += x[R.quantity_flat[R.w_row_of[r]].index];  // p^W <= W
    const double y = x[R.row_dual[r].index];
    dual += b * y;
    out.complementarity += y * (LL.activity(row, x) - b);
  }
  out.strong_duality = primal - dual;
  return out;
}

double squash(double v) { return std::abs(v) < 1e-9 ? 0.0 : v; }

Grid3<double> clamp_quantities(const Instance& inst, Grid3<double> q, const McCormickBounds& b) {
  for (std::size_t k = 0; k < q.size(); ++k) {
    for (std::size_t t = 0; t < q[k].size(); ++t) {
      double sum = 0.0;
      for (std::size_t s = 0; s < q[k][t].size(); ++s) {
        q[k][t][s] = std::clamp(squash(q[k][t][s]), 0.0, b.w_upper[k][t][s]);
        sum += q[k][t][s];
      }
      const double cap = inst.vres[k].capacity;
      if (sum > cap && sum > 0.0) {
        for (auto& v : q[k][t]) v *= cap / sum;
      }
    }
  }
  return q;
}

std::size_t cheapest_segment(const std::vector<double>& p) {
  return static_cast<std::size_t>(std::min_element(p.begin(), p.end()) - p.begin());
}

}  // namespace

BilevelSolution solve_bid(const Instance& inst, const BidPricesConfig& prices, const McCormickBounds& bounds,
                          const BidOptions& opts) {
  auto R = build_relaxed_bid(inst, prices, bounds, opts.eval);
  const auto sol = lp::solve(R.model, opts.eval.dam.tol);
  if (sol.status == lp::Status::Infeasible) {
    throw InfeasibleError("relaxed bilevel LP is infeasible; bound box too tight? " + sol.diagnostic);
  }
  detail::require_optimal(sol, "relaxed bilevel LP");

  const std::size_t K = inst.vres.size();
  const std::size_t T = inst.hours();
  Grid3<double> w_relaxed(K, Grid2<double>(T)), dispatched(K, Grid2<double>(T)), pooled(K, Grid2<double>(T)),
      forecast(K, Grid2<double>(T));
  for (std::size_t k = 0; k < K; ++k) {
    for (std::size_t t = 0; t < T; ++t) {
      const std::size_t S = R.quantity[k][t].size();
      const std::size_t low = cheapest_segment(prices.prices[k][t]);
      pooled[k][t].assign(S, 0.0);
      forecast[k][t].assign(S, 0.0);
      for (std::size_t s = 0; s < S; ++s) {
        w_relaxed[k][t].push_back(sol.value(R.quantity[k][t][s]));
        dispatched[k][t].push_back(sol.value(R.dam.pw[k][t][s]));
        pooled[k][t][low] += sol.value(R.dam.pw[k][t][s]);
      }
      forecast[k][t][low] = expected_vre(inst.scenarios, k, t);
    }
  }

  std::vector<std::pair<std::string, Grid3<double>>> candidates{
      {"relaxed-quantity", w_relaxed}, {"dispatched", dispatched}, {"dispatched-pooled", pooled}};
  if (opts.forecast_candidate) candidates.emplace_back("forecast", forecast);

  EvalOptions inner = opts.eval;
  BilevelSolution best;
  bool have = false;
  for (auto& [name, q] : candidates) {
    const auto bids = prices.with_quantities(inst, clamp_quantities(inst, q, bounds));
    PolicyResult r;
    try {
      r = evaluate_bids(inst, bids, inner);
    } catch (const InfeasibleError&) {
      continue;
    }
    const double tol = 1e-9 * std::max(1.0, std::abs(r.total));
    if (!have || r.total < best.s_bid - tol) {
      best.bids = bids;
      best.s_bid = r.total;
      best.evaluation = std::move(r);
      best.extraction = name;
      have = true;
    }
  }
  if (!have) throw InfeasibleError("no extracted bid candidate clears the day-ahead market");
  best.evaluation.policy = PolicyKind::BiD;

  best.relaxed_objective = sol.objective;
  best.mccormick_gap = best.s_bid - sol.objective;
  const auto res = lower_level_residuals(R, sol.primal);
  best.strong_duality_residual = res.strong_duality;
  best.complementarity_residual = res.complementarity;
  double bound = 0.0;
  for (const auto& k : bounds.w_upper) {
    for (const auto& t : k) {
      for (double w : t) bound += w * bounds.dual_upper / 4.0;
    }
  }
  best.mccormick_residual_bound = bound;
  return best;
}

BilevelSolution solve_bid(const Instance& inst, const BidPricesConfig& prices, const BidOptions& opts) {
  check_prices(inst, prices);
  return solve_bid(inst, prices, McCormickBounds::defaults(inst, prices), opts);
}

BilevelSolution solve_bid_q(const Instance& inst, const BidOptions& opts) {
  auto s = solve_bid(inst, BidPricesConfig::uniform(inst, {0.0}), opts);
  s.evaluation.policy = PolicyKind::BiDq;
  return s;
}

TheoremReport verify_theorem1(const Instance& inst, const BidPricesConfig& prices, const BidOptions& opts) {
  TheoremReport rep;
  rep.applicable = prices.has_zero_segment();
  rep.s_bid = solve_bid(inst, prices, opts).s_bid;
  rep.s_bid_q = solve_bid_q(inst, opts).s_bid;
  rep.relative_gap = std::abs(rep.s_bid - rep.s_bid_q) / std::max(1.0, std::abs(rep.s_bid_q));
  rep.passed = rep.applicable && rep.relative_gap <= rep.tol;
  return rep;
}

BidSet collapse_to_single_segment(const BilevelSolution& multi, const DaSchedule& da) {
  BidSet out;
  out.curves.resize(multi.bids.curves.size());
  for (std::size_t k = 0; k < multi.bids.curves.size(); ++k) {
    for (std::size_t t = 0; t < multi.bids.curves[k].size(); ++t) {
      const auto& src = multi.bids.curves[k][t];
      out.curves[k].push_back(BidCurve{src.owner, src.hour, {BidSegment{0.0, da.vre_total(k, t)}}});
    }
  }
  return out;
}

// ---------------------------------------------------------------- oracle

OracleResult oracle_grid_search(const Instance& inst, const BidPricesConfig& prices, double step,
                                const EvalOptions& opts, std::size_t max_dims) {
  check_prices(inst, prices);
  if (!(step > 0.0)) throw std::invalid_argument("oracle grid step must be positive");
  struct Dim {
    std::size_t k, t, s;
    std::vector<double> grid;
  };
  std::vector<Dim> dims;
  for (std::size_t k = 0; k < inst.vres.size(); ++k) {
    const double cap = inst.vres[k].capacity;
    std::vector<double> g;
    for (int i = 0; i * step < cap - 1e-9; ++i) g.push_back(i * step);
    g.push_back(cap);
    for (std::size_t t = 0; t < inst.hours(); ++t) {
      for (std::size_t s = 0; s < prices.prices[k][t].size(); ++s) dims.push_back({k, t, s, g});
    }
  }
  if (dims.size() > max_dims) {
    throw std::invalid_argument("oracle dimension guard exceeded: " + std::to_string(dims.size()) + " > " +
                                std::to_string(max_dims));
  }
  std::size_t combos = 1;
  for (const auto& d : dims) combos *= d.grid.size();

  Grid3<double> shape(inst.vres.size(), Grid2<double>(inst.hours()));
  for (std::size_t k = 0; k < inst.vres.size(); ++k) {
    for (std::size_t t = 0; t < inst.hours(); ++t) shape[k][t].assign(prices.prices[k][t].size(), 0.0);
  }
  auto decode = [&](std::size_t idx) {
    auto q = shape;
    for (const auto& d : dims) {
      q[d.k][d.t][d.s] = d.grid[idx % d.grid.size()];
      idx /= d.grid.size();
    }
    return q;
  };
  EvalOptions inner = opts;
  inner.threads = 1;
  const double inf = std::numeric_limits<double>::infinity();
  const auto scores = parallel_map(combos, opts.threads, [&](std::size_t idx) {
    const auto q = decode(idx);
    for (std::size_t k = 0; k < q.size(); ++k) {
      for (const auto& t : q[k]) {
        double sum = 0.0;
        for (double v : t) sum += v;
        if (sum > inst.vres[k].capacity + 1e-9) return inf;
      }
    }
    try {
      return evaluate_bids(inst, prices.with_quantities(inst, q), inner).total;
    } catch (const InfeasibleError&) {
      return inf;
    }
  });

  OracleResult out;
  std::size_t best = combos;
  for (std::size_t i = 0; i < combos; ++i) {
    if (scores[i] == inf) continue;
    ++out.evaluated;
    if (best == combos || scores[i] < scores[best]) best = i;
  }
  if (best == combos) throw InfeasibleError("no grid point clears the day-ahead market");
  out.best_s = scores[best];
  out.best_bids = prices.with_quantities(inst, decode(best));
  return out;
}

// ---------------------------------------------------------------- reporting

VreProfit vre_profit(const Instance& inst, const PolicyResult& result) {
  if (!result.da_duals) throw std::invalid_argument("vre_profit: missing day-ahead duals");
  if (result.rt.size() != inst.scenarios.scenarios.size()) {
    throw std::invalid_argument("vre_profit: missing real-time duals");
  }
  const auto& lmp = result.da_duals->lmp;
  VreProfit p;
  p.per_unit.assign(inst.vres.size(), 0.0);
  for (std::size_t k = 0; k < inst.vres.size(); ++k) {
    const auto n = inst.vre_bus(k);
    for (std::size_t t = 0; t < inst.hours(); ++t) {
      const double da = result.da.vre_total(k, t);
      p.per_unit[k] += lmp[n][t] * da;
      for (std::size_t w = 0; w < result.rt.size(); ++w) {
        const auto& sc = inst.scenarios.scenarios[w];
        const auto& d = result.rt[w];
        if (d.lmp.empty()) throw std::invalid_argument("vre_profit: missing real-time duals");
        p.per_unit[k] += sc.probability * d.lmp[n][t] * ((sc.vre[k][t] - d.curtail[k][t]) - da);
      }
    }
    p.aggregate += p.per_unit[k];
  }
  return p;
}

std::pair<double, double> load_weighted_lmps(const Instance& inst, const PolicyResult& result) {
  if (!result.da_duals) throw std::invalid_argument("load-weighted LMP: missing day-ahead duals");
  const auto& dl = inst.scenarios.da_load;
  double num = 0.0, den = 0.0;
  for (std::size_t n = 0; n < dl.size(); ++n) {
    for (std::size_t t = 0; t < inst.hours(); ++t) {
      num += result.da_duals->lmp[n][t] * dl[n][t];
      den += dl[n][t];
    }
  }
  const double da = den > 0.0 ? num / den : 0.0;
  num = den = 0.0;
  for (std::size_t w = 0; w < result.rt.size(); ++w) {
    const auto& sc = inst.scenarios.scenarios[w];
    for (std::size_t n = 0; n < sc.load.size(); ++n) {
      for (std::size_t t = 0; t < inst.hours(); ++t) {
        num += sc.probability * result.rt[w].lmp[n][t] * sc.load[n][t];
        den += sc.probability * sc.load[n][t];
      }
    }
  }
  return {da, den > 0.0 ? num / den : 0.0};
}

static double dam_wind(const DaSchedule& da) {
  double s = 0.0;
  for (const auto& k : da.pw) {
    for (const auto& t : k) {
      for (double v : t) s += v;
    }
  }
  return s;
}

std::vector<SweepRow> price_sweep(const Instance& inst, const std::vector<double>& prices, const BidOptions& opts) {
  BidOptions inner = opts;
  inner.eval.threads = 1;
  return parallel_map(prices.size(), opts.eval.threads, [&](std::size_t i) {
    SweepRow row;
    row.price = prices[i];
    const auto bid = solve_bid(inst, BidPricesConfig::uniform(inst, {prices[i]}), inner);
    const auto myd = evaluate_bids(inst, myopic_bids(inst, prices[i]), inner.eval);
    row.s_bid = bid.s_bid;
    row.s_myd = myd.total;
    row.dam_wind_bid = dam_wind(bid.evaluation.da);
    row.dam_wind_myd = dam_wind(myd.da);
    std::tie(row.lmp_da_bid, row.lmp_rt_bid) = load_weighted_lmps(inst, bid.evaluation);
    std::tie(row.lmp_da_myd, row.lmp_rt_myd) = load_weighted_lmps(inst, myd);
    row.profit_bid = vre_profit(inst, bid.evaluation).aggregate;
    row.profit_myd = vre_profit(inst, myd).aggregate;
    return row;
  });
}

ComparisonTable compare(const Instance& inst, const std::vector<double>& bid_prices, const EvalOptions& opts) {
  ComparisonTable tab;
  tab.chain_tol = kChainTol;
  const auto myd = myopic(inst, opts);
  BidOptions bo;
  bo.eval = opts;
  const auto bid = solve_bid(inst, BidPricesConfig::uniform(inst, bid_prices), bo);
  const auto std_ = stochastic(inst, opts);
  tab.rows.push_back({"MyD", myd.f_da_true, myd.expected_rt, myd.total});
  tab.rows.push_back({"BiD", bid.evaluation.f_da_true, bid.evaluation.expected_rt, bid.s_bid});
  tab.rows.push_back({"StD", std_.f_da_true, std_.expected_rt, std_.total});
  if (!chain_ok(myd.total, bid.s_bid)) {
    tab.violations.push_back("S_MyD " + std::to_string(myd.total) + " < S_BiD " + std::to_string(bid.s_bid));
  }
  if (!chain_ok(bid.s_bid, std_.total)) {
    tab.violations.push_back("S_BiD " + std::to_string(bid.s_bid) + " < S_StD " + std::to_string(std_.total));
  }
  tab.chain_holds = tab.violations.empty();
  return tab;
}

}  // namespace vrebid
