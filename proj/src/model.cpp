#include <algorithm>
#include <cmath>
#include <queue>
#include <set>
#include <sstream>

#include "vrebid/model.hpp"

namespace vrebid {

std::size_t Network::bus_index(const std::string& id) const {
  auto it = std::find(buses.begin(), buses.end(), id);
  if (it == buses.end()) throw std::out_of_range("unknown bus '" + id + "'");
  return static_cast<std::size_t>(it - buses.begin());
}

bool Network::has_bus(const std::string& id) const {
  return std::find(buses.begin(), buses.end(), id) != buses.end();
}

std::size_t Instance::vre_index(const std::string& id) const {
  for (std::size_t k = 0; k < vres.size(); ++k) {
    if (vres[k].id == id) return k;
  }
  throw std::out_of_range("unknown VRE unit '" + id + "'");
}

std::size_t BidSet::segment_count() const {
  for (const auto& row : curves) {
    for (const auto& c : row) return c.segments.size();
  }
  return 0;
}

BidSet make_uniform_bids(const Instance& inst, const std::vector<double>& prices,
                         const std::vector<double>& quantities) {
  if (!quantities.empty() && quantities.size() != prices.size()) {
    throw std::invalid_argument("price and quantity vectors differ in length");
  }
  BidSet bids;
  bids.curves.resize(inst.vres.size());
  for (std::size_t k = 0; k < inst.vres.size(); ++k) {
    for (std::size_t t = 0; t < inst.hours(); ++t) {
      BidCurve c{inst.vres[k].id, t, {}};
      for (std::size_t s = 0; s < prices.size(); ++s) {
        c.segments.push_back({prices[s], quantities.empty() ? 0.0 : quantities[s]});
      }
      bids.curves[k].push_back(std::move(c));
    }
  }
  return bids;
}

std::string ValidationReport::summary() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < violations.size(); ++i) os << (i ? "; " : "") << violations[i];
  return os.str();
}

ValidationError::ValidationError(const ValidationReport& report)
    : std::runtime_error("invalid instance: " + report.summary()), report_(report) {}

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

void check_network(const Network& net, ValidationReport& rep) {
  std::set<std::string> seen;
  for (const auto& b : net.buses) {
    if (!seen.insert(b).second) rep.violations.push_back("duplicate bus '" + b + "'");
  }
  if (net.buses.empty()) rep.violations.push_back("network has no buses");
  if (!net.has_bus(net.slack_bus)) rep.violations.push_back("slack bus '" + net.slack_bus + "' is not declared");
  bool endpoints_ok = true;
  for (const auto& l : net.lines) {
    const std::string tag = "line " + l.from + "-" + l.to;
    if (!net.has_bus(l.from) || !net.has_bus(l.to)) {
      rep.violations.push_back(tag + " references an undeclared bus");
      endpoints_ok = false;
    }
    if (l.from == l.to) rep.violations.push_back(tag + " is a self-loop");
    if (!(l.reactance > 0.0)) rep.violations.push_back(tag + " reactance must be > 0");
    if (!(l.capacity >= 0.0)) rep.violations.push_back(tag + " capacity must be >= 0");
  }
  if (!endpoints_ok || net.buses.empty()) return;
  std::vector<std::vector<std::size_t>> adj(net.buses.size());
  for (const auto& l : net.lines) {
    adj[net.bus_index(l.from)].push_back(net.bus_index(l.to));
    adj[net.bus_index(l.to)].push_back(net.bus_index(l.from));
  }
  std::vector<bool> reached(net.buses.size(), false);
  std::queue<std::size_t> todo;
  todo.push(0);
  reached[0] = true;
  while (!todo.empty()) {
    auto n = todo.front();
    todo.pop();
    for (auto m : adj[n]) {
      if (!reached[m]) {
        reached[m] = true;
        todo.push(m);
      }
    }
  }
  if (std::find(reached.begin(), reached.end(), false) != reached.end()) {
    rep.violations.push_back("network is not connected");
  }
}

void check_units(const Instance& inst, ValidationReport& rep) {
  std::set<std::string> ids;
  for (const auto& u : inst.units) {
    const std::string tag = "unit " + u.id;
    if (!ids.insert(u.id).second) rep.violations.push_back("duplicate unit id '" + u.id + "'");
    if (!inst.network.has_bus(u.bus)) rep.violations.push_back(tag + " sits on unknown bus '" + u.bus + "'");
    if (!(u.p_min >= 0.0 && u.p_min <= u.p_max)) rep.violations.push_back(tag + " needs 0 <= p_min <= p_max");
    if (!(u.ramp_up >= 0.0 && u.ramp_down >= 0.0)) rep.violations.push_back(tag + " ramp rates must be >= 0");
    if (u.cost < 0.0 || u.no_load_cost < 0.0 || u.startup_cost < 0.0 || u.up_cost < 0.0 || u.down_cost < 0.0) {
      rep.violations.push_back(tag + " costs must be >= 0");
    }
    if (!(u.up_cost >= u.cost && u.cost >= u.down_cost)) {
      rep.warnings.push_back(tag + " re-dispatch costs are not ordered up >= cost >= down");
    }
    if (!(u.u_init >= 0.0 && u.u_init <= 1.0)) rep.violations.push_back(tag + " u_init must lie in [0,1]");
    if (u.p_init < u.u_init * u.p_min - 1e-9 || u.p_init > u.u_init * u.p_max + 1e-9) {
      rep.violations.push_back(tag + " p_init outside [u_init*p_min, u_init*p_max]");
    }
  }
  for (const auto& w : inst.vres) {
    if (!ids.insert(w.id).second) rep.violations.push_back("duplicate unit id '" + w.id + "'");
    if (!inst.network.has_bus(w.bus)) rep.violations.push_back("VRE " + w.id + " sits on unknown bus '" + w.bus + "'");
    if (!(w.capacity >= 0.0)) rep.violations.push_back("VRE " + w.id + " capacity must be >= 0");
  }
}

bool has_shape(const std::vector<std::vector<double>>& a, std::size_t rows, std::size_t cols) {
  return a.size() == rows && std::all_of(a.begin(), a.end(), [&](const auto& r) { return r.size() == cols; });
}

void check_scenarios(const Instance& inst, ValidationReport& rep) {
  const auto& sc = inst.scenarios;
  const std::size_t nb = inst.network.buses.size();
  const std::size_t T = sc.hours;
  if (T == 0) rep.violations.push_back("horizon has no hours");
  if (!has_shape(sc.da_load, nb, T)) {
    rep.violations.push_back("day-ahead load must be given for every bus and hour");
  } else {
    for (const auto& row : sc.da_load) {
      for (double v : row) {
        if (!(v >= 0.0)) rep.violations.push_back("day-ahead load must be >= 0");
      }
    }
  }
  if (sc.scenarios.empty()) {
    rep.violations.push_back("no scenarios");
    return;
  }
  std::set<std::string> ids;
  double total = 0.0;
  for (const auto& s : sc.scenarios) {
    const std::string tag = "scenario " + s.id;
    if (!ids.insert(s.id).second) rep.violations.push_back("duplicate scenario id '" + s.id + "'");
    if (!(s.probability > 0.0)) rep.violations.push_back(tag + " probability must be > 0");
    total += s.probability;
    if (!has_shape(s.vre, inst.vres.size(), T)) {
      rep.violations.push_back(tag + " must give VRE output for every unit and hour");
    } else {
      for (std::size_t k = 0; k < inst.vres.size(); ++k) {
        for (double v : s.vre[k]) {
          if (v < 0.0 || v > inst.vres[k].capacity + 1e-9) {
            rep.violations.push_back(tag + " VRE " + inst.vres[k].id + " output " + fmt(v) + " outside [0, capacity]");
          }
        }
      }
    }
    if (!has_shape(s.load, nb, T)) {
      rep.violations.push_back(tag + " must give load for every bus and hour");
    } else {
      for (const auto& row : s.load) {
        for (double v : row) {
          if (!(v >= 0.0)) rep.violations.push_back(tag + " load must be >= 0");
        }
      }
    }
  }
  if (std::abs(total - 1.0) > 1e-9) {
    rep.violations.push_back("probabilities sum to " + fmt(total) + " ≠ 1");
  }
}

}  // namespace

ValidationReport validate(const Instance& inst) {
  ValidationReport rep;
  check_network(inst.network, rep);
  check_units(inst, rep);
  check_scenarios(inst, rep);
  if (!(inst.params.voll > 0.0)) rep.violations.push_back("value of lost load must be > 0");
  if (!(inst.params.price_cap >= 0.0)) rep.violations.push_back("bid price cap must be >= 0");
  return rep;
}

ValidationReport validate(const Instance& inst, const BidSet& bids) {
  ValidationReport rep;
  if (bids.curves.size() != inst.vres.size()) {
    rep.violations.push_back("bid set must hold one row of curves per VRE unit");
    return rep;
  }
  const std::size_t segs = bids.segment_count();
  for (std::size_t k = 0; k < inst.vres.size(); ++k) {
    if (bids.curves[k].size() != inst.hours()) {
      rep.violations.push_back("missing bid curve for VRE " + inst.vres[k].id);
      continue;
    }
    for (std::size_t t = 0; t < inst.hours(); ++t) {
      const auto& c = bids.curves[k][t];
      const std::string tag = "bid " + inst.vres[k].id + " hour " + std::to_string(t + 1);
      if (c.owner != inst.vres[k].id || c.hour != t) rep.violations.push_back(tag + " has mismatched owner/hour");
      if (c.segments.size() != segs) rep.violations.push_back(tag + " segment count differs from other curves");
      double prev = 0.0;
      double total = 0.0;
      for (std::size_t s = 0; s < c.segments.size(); ++s) {
        const auto& seg = c.segments[s];
        if (seg.price < prev) rep.violations.push_back(tag + " prices not nondecreasing");
        if (seg.price > inst.params.price_cap) rep.violations.push_back(tag + " price exceeds cap");
        if (s == 0 && seg.price < 0.0) rep.violations.push_back(tag + " prices must be >= 0");
        if (!(seg.quantity >= 0.0)) rep.violations.push_back(tag + " quantities must be >= 0");
        prev = seg.price;
        total += seg.quantity;
      }
      if (total > inst.vres[k].capacity + 1e-9) rep.violations.push_back(tag + " total quantity exceeds capacity");
    }
  }
  return rep;
}

double expected_vre(const ScenarioSet& scenarios, std::size_t k, std::size_t t) {
  if (t >= scenarios.hours) throw std::out_of_range("unknown hour " + std::to_string(t + 1));
  double e = 0.0;
  for (const auto& s : scenarios.scenarios) {
    if (k >= s.vre.size()) throw std::out_of_range("unknown VRE index " + std::to_string(k));
    e += s.probability * s.vre[k].at(t);
  }
  return e;
}

}  // namespace vrebid
