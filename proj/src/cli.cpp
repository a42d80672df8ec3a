#include "vrebid/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "vrebid/bilevel.hpp"
#include "vrebid/errors.hpp"
#include "vrebid/io.hpp"
#include "vrebid/parallel.hpp"

namespace vrebid {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

json bids_json(const BidSet& b) {
  json arr = json::array();
  for (const auto& k : b.curves) {
    for (const auto& c : k) {
      json segs = json::array();
      for (const auto& s : c.segments) segs.push_back({{"price_usd_per_mwh", s.price}, {"quantity_mw", s.quantity}});
      arr.push_back({{"vre", c.owner}, {"hour", c.hour + 1}, {"segments", segs}});
    }
  }
  return arr;
}

json result_json(const Instance& inst, const PolicyResult& r) {
  json j{{"policy", to_string(r.policy)},
         {"f_da_true_usd", r.f_da_true},
         {"expected_rt_usd", r.expected_rt},
         {"total_usd", r.total}};
  if (r.bids) j["bids"] = bids_json(*r.bids);
  if (r.da_duals) {
    json lmp;
    for (std::size_t n = 0; n < inst.network.buses.size(); ++n) lmp[inst.network.buses[n]] = r.da_duals->lmp[n];
    j["da_lmp_usd_per_mwh"] = lmp;
  }
  json rt = json::array();
  for (const auto& d : r.rt) {
    rt.push_back({{"scenario", inst.scenarios.scenarios[d.scenario].id}, {"f_rt_usd", d.f_rt}});
  }
  j["rt"] = rt;
  return j;
}

struct Ctx {
  std::string instance = "t1";
  bool as_json = false;
  bool da_slack = false;
  unsigned threads = 0;
  std::string dump_lp;
  std::string out_dir;
};

void write_out(const Ctx& c, const std::string& name, const std::function<void(std::ostream&)>& fn) {
  if (c.out_dir.empty()) return;
  fs::create_directories(c.out_dir);
  std::ofstream f(fs::path(c.out_dir) / name);
  fn(f);
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string f;
  while (std::getline(ss, f, ',')) {
    try {
      out.push_back(std::stod(f));
    } catch (const std::exception&) {
      throw std::invalid_argument("bad price list entry '" + f + "'");
    }
  }
  if (out.empty()) throw std::invalid_argument("empty price list");
  return out;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Day-ahead VRE bidding and two-settlement market simulator", "vrebid"};
  app.require_subcommand(1);
  app.fallthrough();
  Ctx c;
  app.add_option("--instance", c.instance, "bundled instance name (t1, bus3, bus5) or instance JSON path");
  app.add_flag("--json", c.as_json, "machine-readable stdout");
  app.add_flag("--da-slack", c.da_slack, "allow VoLL-priced shedding in the day-ahead market");
  app.add_option("--threads", c.threads, "worker threads (default MARKET_COORD_THREADS or 1)");
  app.add_option("--dump-lp", c.dump_lp, "directory receiving every solved LP in text form");
  app.add_option("--out", c.out_dir, "directory for CSV/JSON result files");

  std::string bids_file, scenario, prices_s = "0", theorem_prices = "0,2,22,30,32,350";
  double from = 0, to = 50, step = 5, oracle_step = 1;
  auto* clear_da = app.add_subcommand("clear-da", "clear the day-ahead market");
  clear_da->add_option("--bids", bids_file, "bid CSV (default: myopic bids)");
  auto* clear_rt = app.add_subcommand("clear-rt", "clear one real-time scenario after the day-ahead market");
  clear_rt->add_option("--scenario", scenario, "scenario id")->required();
  clear_rt->add_option("--bids", bids_file, "bid CSV (default: myopic bids)");
  auto* evaluate = app.add_subcommand("evaluate", "sequentially score a bid file");
  evaluate->add_option("--bids", bids_file, "bid CSV")->required();
  auto* myd = app.add_subcommand("myd", "myopic dispatch");
  auto* stdp = app.add_subcommand("std", "stochastic dispatch");
  auto* opt = app.add_subcommand("optimize-bid", "bilevel bid optimisation at fixed prices");
  opt->add_option("--prices", prices_s, "comma-separated segment prices, $/MWh");
  auto* sweep = app.add_subcommand("sweep-price", "single-segment price sweep");
  sweep->add_option("--from", from, "$/MWh");
  sweep->add_option("--to", to, "$/MWh");
  sweep->add_option("--step", step, "$/MWh")->check(CLI::PositiveNumber);
  auto* thm = app.add_subcommand("verify-theorem1", "compare multi-segment and quantity-only optima");
  thm->add_option("--prices", theorem_prices, "segment prices containing a zero");
  auto* oracle = app.add_subcommand("oracle", "grid search over bid quantities");
  oracle->add_option("--step", oracle_step, "grid step, MW")->check(CLI::PositiveNumber);
  oracle->add_option("--prices", prices_s, "segment prices, $/MWh");
  auto* cmp = app.add_subcommand("compare", "MyD, BiD and StD side by side");
  cmp->add_option("--prices", prices_s, "BiD segment prices, $/MWh");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (!c.dump_lp.empty()) {
      fs::create_directories(c.dump_lp);
      lp::set_dump_directory(c.dump_lp);
    }
    const Instance inst = io::resolve_instance(c.instance);
    EvalOptions eo;
    eo.dam.da_slack = c.da_slack;
    eo.threads = c.threads ? c.threads : default_threads();
    BidOptions bo;
    bo.eval = eo;
    auto sel_bids = [&]() { return bids_file.empty() ? myopic_bids(inst) : io::load_bids(inst, bids_file); };
    out << std::setprecision(10);
    json report;
    int code = kExitOk;

    auto report_policy = [&](const PolicyResult& r, const std::string& label) {
      report = result_json(inst, r);
      if (!c.as_json) {
        out << label << ": S = " << r.total << " $ (day-ahead " << r.f_da_true << " $, expected real-time "
            << r.expected_rt << " $)\n";
      }
      if (r.bids) write_out(c, "bids.csv", [&](std::ostream& o) { io::write_bids_csv(o, *r.bids); });
      write_out(c, "schedule.csv", [&](std::ostream& o) { io::write_schedule_csv(o, inst, r.da); });
    };

    if (*clear_da) {
      const auto cl = clear_dam(inst, sel_bids(), eo.dam);
      report = {{"f_da_true_usd", cl.schedule.f_da_true}, {"f_da_bid_usd", cl.schedule.f_da_bid}};
      json lmp;
      for (std::size_t n = 0; n < inst.network.buses.size(); ++n) lmp[inst.network.buses[n]] = cl.duals.lmp[n];
      report["lmp_usd_per_mwh"] = lmp;
      if (!c.as_json) {
        out << "day-ahead cost " << cl.schedule.f_da_true << " $ (with bid costs " << cl.schedule.f_da_bid << " $)\n";
        for (std::size_t n = 0; n < inst.network.buses.size(); ++n) {
          out << "  LMP " << inst.network.buses[n] << ":";
          for (double v : cl.duals.lmp[n]) out << ' ' << v;
          out << " $/MWh\n";
        }
      }
      write_out(c, "schedule.csv", [&](std::ostream& o) { io::write_schedule_csv(o, inst, cl.schedule); });
    } else if (*clear_rt) {
      std::size_t w = inst.scenarios.scenarios.size();
      for (std::size_t i = 0; i < inst.scenarios.scenarios.size(); ++i) {
        if (inst.scenarios.scenarios[i].id == scenario) w = i;
      }
      if (w == inst.scenarios.scenarios.size()) throw std::invalid_argument("unknown scenario '" + scenario + "'");
      const auto cl = clear_dam(inst, sel_bids(), eo.dam);
      const auto d = clear_rtm(inst, cl.schedule, w, eo.dam.tol);
      report = {{"scenario", scenario}, {"f_rt_usd", d.f_rt}};
      if (!c.as_json) out << "real-time cost of " << scenario << ": " << d.f_rt << " $\n";
      write_out(c, "dispatch.csv", [&](std::ostream& o) { io::write_dispatch_csv(o, inst, d); });
    } else if (*evaluate) {
      report_policy(evaluate_bids(inst, sel_bids(), eo), "evaluate");
    } else if (*myd) {
      report_policy(myopic(inst, eo), "MyD");
    } else if (*stdp) {
      report_policy(stochastic(inst, eo), "StD");
    } else if (*opt) {
      const auto sol = solve_bid(inst, BidPricesConfig::uniform(inst, parse_list(prices_s)), bo);
      report_policy(sol.evaluation, "BiD");
      report["relaxed_objective_usd"] = sol.relaxed_objective;
      report["mccormick_gap_usd"] = sol.mccormick_gap;
      report["complementarity_residual"] = sol.complementarity_residual;
      report["extraction"] = sol.extraction;
      if (!c.as_json) {
        out << "relaxed LP " << sol.relaxed_objective << " $, McCormick gap " << sol.mccormick_gap << " $\n";
        io::write_bids_csv(out, sol.bids);
      }
    } else if (*sweep) {
      if (to < from) throw std::invalid_argument("--to must not be below --from");
      std::vector<double> prices;
      for (int i = 0; from + i * step <= to + 1e-9; ++i) prices.push_back(from + i * step);
      const auto rows = price_sweep(inst, prices, bo);
      report = json::array();
      for (const auto& r : rows) {
        report.push_back({{"price_usd_per_mwh", r.price}, {"s_bid_usd", r.s_bid}, {"s_myd_usd", r.s_myd},
                          {"dam_wind_bid_mw", r.dam_wind_bid}, {"dam_wind_myd_mw", r.dam_wind_myd},
                          {"profit_bid_usd", r.profit_bid}, {"profit_myd_usd", r.profit_myd}});
      }
      if (!c.as_json) io::write_sweep_csv(out, rows);
      write_out(c, "sweep.csv", [&](std::ostream& o) { io::write_sweep_csv(o, rows); });
    } else if (*thm) {
      const auto rep = verify_theorem1(inst, BidPricesConfig::uniform(inst, parse_list(theorem_prices)), bo);
      report = {{"s_bid_usd", rep.s_bid}, {"s_bid_q_usd", rep.s_bid_q}, {"relative_gap", rep.relative_gap},
                {"applicable", rep.applicable}, {"passed", rep.passed}, {"tol", rep.tol}};
      if (!c.as_json) {
        out << "S_BiD " << rep.s_bid << " $, S_BiD-q " << rep.s_bid_q << " $, gap " << rep.relative_gap
            << (rep.applicable ? (rep.passed ? " PASS" : " FAIL") : " (no zero segment, informational)") << "\n";
      }
      if (rep.applicable && !rep.passed) code = kExitAssertion;
    } else if (*oracle) {
      const auto r = oracle_grid_search(inst, BidPricesConfig::uniform(inst, parse_list(prices_s)), oracle_step, eo);
      report = {{"best_s_usd", r.best_s}, {"evaluated", r.evaluated}, {"bids", bids_json(r.best_bids)}};
      if (!c.as_json) {
        out << "oracle best S = " << r.best_s << " $ over " << r.evaluated << " grid points\n";
        io::write_bids_csv(out, r.best_bids);
      }
      write_out(c, "bids.csv", [&](std::ostream& o) { io::write_bids_csv(o, r.best_bids); });
    } else if (*cmp) {
      const auto tab = compare(inst, parse_list(prices_s), eo);
      report = {{"chain_holds", tab.chain_holds}, {"violations", tab.violations}, {"rows", json::array()}};
      for (const auto& r : tab.rows) {
        report["rows"].push_back({{"policy", r.policy}, {"f_da_true_usd", r.f_da_true},
                                  {"expected_rt_usd", r.expected_rt}, {"total_usd", r.total}});
      }
      if (!c.as_json) {
        io::write_comparison_csv(out, tab);
        for (const auto& v : tab.violations) err << "chain violation: " << v << "\n";
      }
      write_out(c, "comparison.csv", [&](std::ostream& o) { io::write_comparison_csv(o, tab); });
      if (!tab.chain_holds) code = kExitAssertion;
    }
    if (c.as_json) out << report.dump(2) << "\n";
    write_out(c, "result.json", [&](std::ostream& o) { o << report.dump(2) << "\n"; });
    lp::set_dump_directory("");
    return code;
  } catch (const InfeasibleError& e) {
    err << "infeasible: " << e.what() << "\n";
    lp::set_dump_directory("");
    return kExitInfeasible;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    lp::set_dump_directory("");
    return kExitInput;
  }
}

}  // namespace vrebid
