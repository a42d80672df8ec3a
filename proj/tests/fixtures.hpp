#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "vrebid/io.hpp"
#include "vrebid/model.hpp"

namespace fixtures {

using namespace vrebid;

// One bus, one fast unit at 20 $/MWh, one 50 MW VRE, 80 MW load, two equiprobable
// real-time outcomes (50 MW and 10 MW).
inline Instance make_t1(double w_high = 50.0, double w_low = 10.0) {
  Instance inst;
  inst.name = "t1";
  inst.network.buses = {"B1"};
  inst.network.slack_bus = "B1";
  ConventionalUnit g;
  g.id = "G1";
  g.bus = "B1";
  g.cost = 20;
  g.up_cost = 40;
  g.down_cost = 15;
  g.p_max = 100;
  g.ramp_up = g.ramp_down = 100;
  inst.units.push_back(g);
  inst.vres.push_back({"W1", "B1", 50});
  inst.scenarios.hours = 1;
  inst.scenarios.da_load = {{80}};
  inst.scenarios.scenarios.push_back({"w1", 0.5, {{w_high}}, {{80}}});
  inst.scenarios.scenarios.push_back({"w2", 0.5, {{w_low}}, {{80}}});
  inst.params.voll = 1000;
  inst.params.price_cap = 1000;
  return inst;
}

// Two buses joined by a 30 MW line; cheap unit at A, dear unit at B, load at B.
inline Instance make_two_bus(double load_b = 60.0, double line_cap = 30.0) {
  Instance inst;
  inst.name = "two_bus";
  inst.network.buses = {"A", "B"};
  inst.network.slack_bus = "A";
  inst.network.lines.push_back({"A", "B", 0.1, line_cap});
  ConventionalUnit ga;
  ga.id = "GA";
  ga.bus = "A";
  ga.cost = 10;
  ga.up_cost = 30;
  ga.down_cost = 5;
  ga.p_max = 100;
  ga.ramp_up = ga.ramp_down = 100;
  ConventionalUnit gb = ga;
  gb.id = "GB";
  gb.bus = "B";
  gb.cost = 35;
  gb.up_cost = 50;
  gb.down_cost = 25;
  gb.p_max = 20;
  inst.units = {ga, gb};
  inst.vres.push_back({"WA", "A", 20});
  inst.scenarios.hours = 1;
  inst.scenarios.da_load = {{0}, {load_b}};
  inst.scenarios.scenarios.push_back({"s", 1.0, {{0}}, {{0}, {load_b}}});
  return inst;
}

inline Instance bundled(const std::string& name) { return io::resolve_instance(name); }

inline std::vector<std::string> fleet() { return io::bundled_instances(); }

// Single scenario whose realisation equals the forecast.
inline Instance deterministic(const Instance& src) {
  Instance inst = src;
  Scenario s;
  s.id = "only";
  s.probability = 1.0;
  s.vre.assign(src.vres.size(), std::vector<double>(src.hours()));
  for (std::size_t k = 0; k < src.vres.size(); ++k) {
    for (std::size_t t = 0; t < src.hours(); ++t) s.vre[k][t] = expected_vre(src.scenarios, k, t);
  }
  s.load = src.scenarios.da_load;
  inst.scenarios.scenarios = {s};
  return inst;
}

inline double rel_diff(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace fixtures
