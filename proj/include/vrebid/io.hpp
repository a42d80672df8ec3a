#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "vrebid/bilevel.hpp"
#include "vrebid/model.hpp"

namespace vrebid::io {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Single JSON file holding network, units, VRE and day-ahead load, plus the
/// scenario CSV.
Instance load_instance(const std::string& instance_json, const std::string& scenarios_csv);
/// Network and units split over two JSON files; their top-level keys are merged.
Instance load_instance(const std::string& network_json, const std::string& units_json,
                       const std::string& scenarios_csv);

/// Parses without touching the filesystem. `validate_result` off is for tests
/// that need to inspect a broken instance.
Instance parse_instance(const std::string& json_text, const std::string& csv_text, bool validate_result = true);

void save_instance(const Instance& inst, const std::string& instance_json, const std::string& scenarios_csv);
std::string instance_to_json(const Instance& inst);
std::string scenarios_to_csv(const Instance& inst);

/// A bundled instance name (t1, bus3, bus5) or a path to an instance JSON;
/// the scenario file is `<stem>_scenarios.csv` next to it.
Instance resolve_instance(const std::string& name_or_path);
std::vector<std::string> bundled_instances();
std::string data_dir();

/// CSV columns: k, t, s, price, quantity (t and s 1-based, k a VRE id).
BidSet parse_bids(const Instance& inst, const std::string& csv_text);
BidSet load_bids(const Instance& inst, const std::string& path);
void write_bids_csv(std::ostream& os, const BidSet& bids);

void write_comparison_csv(std::ostream& os, const ComparisonTable& table);
void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows);
void write_schedule_csv(std::ostream& os, const Instance& inst, const DaSchedule& da);
void write_dispatch_csv(std::ostream& os, const Instance& inst, const RtDispatch& rt);

}  // namespace vrebid::io
