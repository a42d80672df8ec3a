#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace vrebid {

/// Hours are 1-based in files and 0-based in every in-memory array.
using HourIndex = std::size_t;

struct Line {
  std::string from;
  std::string to;
  double reactance = 0.0;  // p.u., > 0
  double capacity = 0.0;   // MW
};

struct Network {
  std::vector<std::string> buses;
  std::vector<Line> lines;
  std::string slack_bus;

  std::size_t bus_index(const std::string& id) const;
  bool has_bus(const std::string& id) const;
};

enum class StartClass { Fast, Slow };

struct ConventionalUnit {
  std::string id;
  std::string bus;
  double cost = 0.0;          // $/MWh
  double no_load_cost = 0.0;  // $/h
  double startup_cost = 0.0;  // $
  double up_cost = 0.0;       // real-time upward re-dispatch, $/MWh
  double down_cost = 0.0;     // real-time downward re-dispatch credit, $/MWh
  double p_max = 0.0;
  double p_min = 0.0;
  double ramp_up = 0.0;    // MW/h
  double ramp_down = 0.0;  // MW/h
  StartClass start_class = StartClass::Fast;
  double u_init = 0.0;
  double p_init = 0.0;
};

struct VreUnit {
  std::string id;
  std::string bus;
  double capacity = 0.0;  // MW
};

struct Scenario {
  std::string id;
  double probability = 0.0;
  std::vector<std::vector<double>> vre;   // [k][t] realised output, MW
  std::vector<std::vector<double>> load;  // [n][t] real-time demand, MW
};

struct ScenarioSet {
  std::size_t hours = 0;
  std::vector<std::vector<double>> da_load;  // [n][t], MW
  std::vector<Scenario> scenarios;
};

struct SystemParams {
  double voll = 1000.0;            // load-shedding cost C^sh, $/MWh
  double price_cap = 1000.0;       // bid price cap; defaults to voll
};

struct Instance {
  std::string name;
  Network network;
  std::vector<ConventionalUnit> units;
  std::vector<VreUnit> vres;
  ScenarioSet scenarios;
  SystemParams params;

  std::size_t hours() const { return scenarios.hours; }
  std::size_t unit_bus(std::size_t i) const { return network.bus_index(units.at(i).bus); }
  std::size_t vre_bus(std::size_t k) const { return network.bus_index(vres.at(k).bus); }
  std::size_t vre_index(const std::string& id) const;
};

struct BidSegment {
  double price = 0.0;     // $/MWh
  double quantity = 0.0;  // MW
};

struct BidCurve {
  std::string owner;
  HourIndex hour = 0;
  std::vector<BidSegment> segments;
};

/// One curve per (VRE unit, hour), indexed [k][t].
struct BidSet {
  std::vector<std::vector<BidCurve>> curves;

  std::size_t segment_count() const;
  const BidCurve& at(std::size_t k, std::size_t t) const { return curves.at(k).at(t); }
  BidCurve& at(std::size_t k, std::size_t t) { return curves.at(k).at(t); }
};

/// Uniform bid set over every (k, t) with the given per-segment prices and
/// quantities (quantities may be empty for all-zero).
BidSet make_uniform_bids(const Instance& inst, const std::vector<double>& prices,
                         const std::vector<double>& quantities = {});

struct ValidationReport {
  std::vector<std::string> violations;
  std::vector<std::string> warnings;

  bool ok() const { return violations.empty(); }
  std::string summary() const;
};

class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const ValidationReport& report);
  const ValidationReport& report() const { return report_; }

 private:
  ValidationReport report_;
};

ValidationReport validate(const Instance& inst);
ValidationReport validate(const Instance& inst, const BidSet& bids);

/// Probability-weighted mean realisation of VRE unit k at hour t.
double expected_vre(const ScenarioSet& scenarios, std::size_t k, std::size_t t);

}  // namespace vrebid
